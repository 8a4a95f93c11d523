"""Generalized Gegenbauer eigenmodes of the drift diffusion on a simplex.

Each mode is monic in its leading monomial x^alpha; lower-order coefficients
follow from a two-term recursion descending in total degree, and the decay
rate of a degree-l mode on a k-dimensional chart is (k+l)(k+l+1)/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import SimplexPolynomial


@dataclass(frozen=True)
class GegenbauerMode:
    dim: int
    alpha: tuple[int, ...]
    degree: int
    rate: int
    poly: SimplexPolynomial


_MODE_CACHE: dict[tuple[int, tuple[int, ...]], GegenbauerMode] = {}


def eigenvalue(k: int, l: int) -> int:
    return (k + l) * (k + l + 1) // 2


def build_mode(k: int, alpha) -> GegenbauerMode:
    """Monic eigenmode with leading monomial x^alpha on a k-dim chart.

    Construction is idempotent and cached; cached entries are immutable and
    safe for concurrent readers.
    """
    alpha = tuple(alpha)
    key = (k, alpha)
    cached = _MODE_CACHE.get(key)
    if cached is not None:
        return cached
    if len(alpha) != k:
        raise ValueError(f"alpha {alpha} does not match chart dimension {k}")
    l = sum(alpha)
    coeffs: dict[tuple[int, ...], Fraction] = {alpha: Fraction(1)}
    current = {alpha: Fraction(1)}
    for m in range(l - 1, -1, -1):
        denom = (l - m) * (l + m + 2 * k + 1)
        level: dict[tuple[int, ...], Fraction] = {}
        for gamma, c in current.items():
            for i in range(k):
                gi = gamma[i]
                if gi == 0:
                    continue
                beta = gamma[:i] + (gi - 1,) + gamma[i + 1:]
                w = Fraction((gi + 1) * gi, denom)
                level[beta] = level.get(beta, Fraction(0)) - w * c
        current = {b: c for b, c in level.items() if c != 0}
        coeffs.update(current)
    mode = GegenbauerMode(dim=k, alpha=alpha, degree=l,
                          rate=eigenvalue(k, l),
                          poly=SimplexPolynomial(k, coeffs))
    _MODE_CACHE[key] = mode
    return mode


def omega(k: int) -> SimplexPolynomial:
    """The boundary-vanishing weight prod(x^i) * (1 - sum(x^i))."""
    w = SimplexPolynomial.one(k)
    for i in range(k):
        w = w * SimplexPolynomial.variable(k, i)
    closure = SimplexPolynomial.one(k)
    for i in range(k):
        closure = closure - SimplexPolynomial.variable(k, i)
    return w * closure


def omega_shift(mode: GegenbauerMode) -> SimplexPolynomial:
    """Weight-shifted companion eigenfunction of the backward operator."""
    return omega(mode.dim) * mode.poly


def project(p: SimplexPolynomial) -> list[tuple[GegenbauerMode, object]]:
    """Expand a polynomial in the monic eigenmode basis.

    Unitriangular back-substitution from the highest total degree downward;
    exact for rational input, and the reconstruction sum reproduces the
    input identically.
    """
    k = p.nvars
    out: dict[tuple[int, ...], object] = {}
    rem = p
    while not rem.is_zero():
        d = rem.degree()
        top = [(e, c) for e, c in rem.terms.items() if sum(e) == d]
        for e, c in top:
            out[e] = out.get(e, 0) + c
            rem = rem - build_mode(k, e).poly.scale(c)
    return [(build_mode(k, e), c) for e, c in sorted(out.items())]


def reconstruct(expansion) -> SimplexPolynomial:
    if not expansion:
        raise ValueError("empty expansion has no chart dimension")
    total = SimplexPolynomial.zero(expansion[0][0].dim)
    for mode, c in expansion:
        total = total + mode.poly.scale(c)
    return total


def evolve(expansion, t: float) -> SimplexPolynomial:
    """Interior solution at time t from a modal expansion of the initial data."""
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if not expansion:
        raise ValueError("empty expansion has no chart dimension")
    total = SimplexPolynomial.zero(expansion[0][0].dim)
    for mode, c in expansion:
        total = total + mode.poly.scale(c * math.exp(-mode.rate * t) if t > 0 else c)
    return total
