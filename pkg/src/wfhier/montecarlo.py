"""Discrete Wright-Fisher simulator, the stochastic oracle for the diffusion.

One generation is a multinomial resampling of N parents; diffusion time t
corresponds to round(N*t) generations.  Paths are simulated in blocks, each
block drawing from an independent stream derived from (seed, block index),
so reports are bit-reproducible for a fixed configuration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .moments import multi_indices
from .poly import SimplexPolynomial, poly_bound


@dataclass
class WfConfig:
    n: int
    pop_size: int
    horizon_t: float
    paths: int
    seed: int
    initial: tuple | None = None            # ambient frequencies (x^0..x^n)
    initial_density: SimplexPolynomial | None = None
    max_moment_order: int = 2
    block: int = 1024

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError("population size must be >= 2")
        if self.horizon_t < 0:
            raise ValueError("horizon must be nonnegative")
        if self.paths < 1:
            raise ValueError("need at least one path")
        if self.initial is None and self.initial_density is None:
            raise ValueError("provide fixed initial frequencies or a density")
        if self.initial is not None:
            if len(self.initial) != self.n + 1:
                raise ValueError(
                    f"initial frequency vector needs {self.n + 1} entries")
            if abs(sum(self.initial) - 1) > 1e-12 or min(self.initial) < 0:
                raise ValueError("initial frequencies must lie on the simplex")


@dataclass
class WfReport:
    config: WfConfig
    generations: int
    moments: dict            # alpha -> mean of x^alpha at horizon
    moment_se: dict          # alpha -> standard error
    occupancy: dict          # k -> fraction of paths with exactly k+1 alleles
    occupancy_se: dict

    def to_json(self) -> dict:
        key = lambda a: ";".join(str(v) for v in a)
        return {
            "n": self.config.n,
            "pop_size": self.config.pop_size,
            "horizon_t": self.config.horizon_t,
            "paths": self.config.paths,
            "seed": self.config.seed,
            "generations": self.generations,
            "moments": {key(a): v for a, v in self.moments.items()},
            "moment_se": {key(a): v for a, v in self.moment_se.items()},
            "occupancy": {str(k): v for k, v in self.occupancy.items()},
            "occupancy_se": {str(k): v for k, v in self.occupancy_se.items()},
        }


def step(counts: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    """One multinomial resampling generation; zero entries stay absorbed."""
    counts = np.asarray(counts)
    total = counts.sum(axis=-1)
    if counts.ndim == 1:
        return rng.multinomial(int(total), counts / total)
    return rng.multinomial(int(total[0]), counts / total[..., None])


def _sample_initial(rng: np.random.Generator, cfg: WfConfig, m: int) -> np.ndarray:
    """m ambient frequency vectors, fixed or rejection-sampled from a density."""
    if cfg.initial is not None:
        return np.tile(np.asarray(cfg.initial, dtype=float), (m, 1))
    f = cfg.initial_density
    bound = float(poly_bound(f))
    if bound == 0:
        raise ValueError("initial density is identically zero")
    out = np.empty((m, cfg.n + 1))
    filled = 0
    while filled < m:
        cand = rng.dirichlet(np.ones(cfg.n + 1), size=2 * (m - filled))
        vals = np.array([float(f.evaluate(tuple(row[1:]))) for row in cand])
        if (vals < -1e-12 * bound).any():
            raise ValueError("initial density is negative on the simplex")
        accept = rng.random(len(cand)) * bound <= np.maximum(vals, 0.0)
        took = cand[accept][: m - filled]
        out[filled:filled + len(took)] = took
        filled += len(took)
    return out


def run(config: WfConfig) -> WfReport:
    """Simulate all paths and report empirical moments and stratum occupancy."""
    N = config.pop_size
    gens = round(N * config.horizon_t)
    alphas = [a for a in multi_indices(config.n, config.max_moment_order)]
    moment_vals: dict = {a: [] for a in alphas}
    survive_counts: list = []

    n_blocks = math.ceil(config.paths / config.block)
    for b in range(n_blocks):
        m = min(config.block, config.paths - b * config.block)
        rng = np.random.default_rng(np.random.SeedSequence((config.seed, b)))
        freqs = _sample_initial(rng, config, m)
        counts = rng.multinomial(N, freqs)
        for _ in range(gens):
            counts = rng.multinomial(N, counts / N)
        x = counts[:, 1:] / N
        for a in alphas:
            vals = np.prod(x ** np.asarray(a), axis=1)
            moment_vals[a].append(vals)
        survive_counts.append((counts > 0).sum(axis=1))

    moments, moment_se = {}, {}
    for a in alphas:
        vals = np.concatenate(moment_vals[a])
        mean = math.fsum(vals) / len(vals)
        var = math.fsum((v - mean) ** 2 for v in vals) / max(len(vals) - 1, 1)
        moments[a] = mean
        moment_se[a] = math.sqrt(var / len(vals))
    surviving = np.concatenate(survive_counts)
    occupancy, occupancy_se = {}, {}
    for k in range(config.n + 1):
        p = float(np.mean(surviving == k + 1))
        occupancy[k] = p
        occupancy_se[k] = math.sqrt(p * (1 - p) / len(surviving))
    return WfReport(config=config, generations=gens, moments=moments,
                    moment_se=moment_se, occupancy=occupancy,
                    occupancy_se=occupancy_se)
