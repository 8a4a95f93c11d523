"""Executable invariant suites tying the solver to its oracles.

Each suite returns a list of CheckResult rows; a suite passes when every
row's residual is within its tolerance.  Rational-mode suites demand exact
zeros.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .flux import (adjointness_residual, apply_backward, apply_forward,
                   divergence, flux_of, half_trace_flux, normal_flux_on_facet,
                   restrict_ambient_to_face, restrict_to_child)
from .hierarchy import (HierarchicalSolution, extend, mass_profile,
                        moment_profile, stratum_mass_profile,
                        weak_residual_profile)
from .moments import compare, initial_moments_from_poly, multi_indices, solve_moment_ode
from .poly import SimplexPolynomial
from .simplex import build_lattice
from .spectral import build_mode, omega_shift
from .timeprofile import TimeProfile


@dataclass
class CheckResult:
    suite: str
    name: str
    residual: float
    tol: float

    @property
    def ok(self) -> bool:
        return abs(self.residual) <= self.tol


def _max_coeff(p: SimplexPolynomial) -> float:
    return max((abs(float(c)) for c in p.terms.values()), default=0.0)


def random_poly(nvars: int, degree: int, rng: random.Random) -> SimplexPolynomial:
    p = SimplexPolynomial.zero(nvars)
    for alpha in multi_indices(nvars, degree):
        if rng.random() < 0.6:
            c = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
            if c != 0:
                p = p + SimplexPolynomial.monomial(nvars, alpha, c)
    if p.is_zero():
        p = SimplexPolynomial.one(nvars)
    return p


# -- spectral identities ------------------------------------------------------

def eigen_identity_suite(dims=(1, 2, 3), lmax=6) -> list[CheckResult]:
    out = []
    for k in dims:
        worst = 0.0
        for alpha in multi_indices(k, lmax):
            m = build_mode(k, alpha)
            resid = apply_forward(m.poly) + m.poly.scale(m.rate)
            worst = max(worst, _max_coeff(resid))
        out.append(CheckResult("eigen_identity", f"n={k} l<={lmax}", worst, 0.0))
    return out


def omega_shift_suite(dims=(1, 2, 3), lmax=4) -> list[CheckResult]:
    out = []
    for k in dims:
        worst = 0.0
        for alpha in multi_indices(k, lmax):
            m = build_mode(k, alpha)
            shifted = omega_shift(m)
            resid = apply_backward(shifted) + shifted.scale(m.rate)
            worst = max(worst, _max_coeff(resid))
        out.append(CheckResult("omega_shift", f"n={k} l<={lmax}", worst, 0.0))
    return out


def restriction_suite(dims=(1, 2, 3), degree=4, trials=5, seed=7) -> list[CheckResult]:
    """Backward operator commutes with restriction to every face chart."""
    rng = random.Random(seed)
    out = []
    for n in dims:
        lattice = build_lattice(n)
        worst = 0.0
        for _ in range(trials):
            phi = random_poly(n, degree, rng)
            lphi = apply_backward(phi)
            for face in lattice.faces:
                a = restrict_ambient_to_face(lphi, face, n)
                b = apply_backward(restrict_ambient_to_face(phi, face, n))
                worst = max(worst, _max_coeff(a - b))
        out.append(CheckResult("restriction", f"n={n}", worst, 0.0))
    return out


# -- flux identities ----------------------------------------------------------

def flux_suite(dims=(1, 2, 3), degree=4, trials=10, seed=11) -> list[CheckResult]:
    rng = random.Random(seed)
    out = []
    for n in dims:
        lattice = build_lattice(n)
        top = lattice.top
        worst_adj = 0.0
        worst_half = 0.0
        worst_div = 0.0
        for _ in range(trials):
            u = random_poly(n, degree, rng)
            phi = random_poly(n, degree, rng)
            worst_adj = max(worst_adj,
                            abs(float(adjointness_residual(u, phi, lattice))))
            comps = flux_of(u)
            worst_div = max(worst_div,
                            _max_coeff(divergence(comps) + apply_forward(u)))
            for facet in lattice.children[top]:
                d = normal_flux_on_facet(u, top, facet) - half_trace_flux(u, top, facet)
                worst_half = max(worst_half, _max_coeff(d))
        out.append(CheckResult("adjointness", f"n={n}", worst_adj, 0.0))
        out.append(CheckResult("facet_half_trace", f"n={n}", worst_half, 0.0))
        out.append(CheckResult("flux_divergence", f"n={n}", worst_div, 0.0))
    return out


# -- hierarchy vs oracles -----------------------------------------------------

def conservation_suite(U: HierarchicalSolution,
                       t_grid=(0.1, 1.0, 5.0)) -> list[CheckResult]:
    n = U.n
    tol = 0.0 if U.mode == "rational" else 1e-12
    out = []
    mp = mass_profile(U)
    target = U.initial.simplex_integral()
    resid = max(abs(mp.at(t) - float(target)) for t in t_grid)
    if U.mode == "rational":
        resid = 0.0 if mp - TimeProfile({(0, 0): target}) == TimeProfile.zero() \
            else max(resid, 1.0)
    out.append(CheckResult("mass_conservation", f"n={n}", resid, tol))
    for i in range(n):
        e_i = tuple(1 if j == i else 0 for j in range(n))
        prof = moment_profile(U, e_i)
        target = (U.initial * SimplexPolynomial.monomial(n, e_i)).simplex_integral()
        resid = max(abs(prof.at(t) - float(target)) for t in t_grid)
        if U.mode == "rational":
            resid = 0.0 if prof - TimeProfile({(0, 0): target}) == TimeProfile.zero() \
                else max(resid, 1.0)
        out.append(CheckResult("first_moment_conservation", f"n={n} i={i + 1}",
                               resid, tol))
    return out


def moment_oracle_suite(U: HierarchicalSolution, max_order=4,
                        t_grid=(0.1, 1.0, 5.0)) -> list[CheckResult]:
    n = U.n
    init = initial_moments_from_poly(U.initial, n, max_order)
    traj = solve_moment_ode(init, n, max_order)
    tol = 0.0 if U.mode == "rational" else 1e-9
    out = []
    for alpha in multi_indices(n, max_order):
        diff = moment_profile(U, alpha) - traj.entries[alpha]
        if U.mode == "rational":
            resid = 0.0 if diff == TimeProfile.zero() else \
                max(abs(diff.at(t)) for t in t_grid) + 1e-6
        else:
            resid = max(abs(diff.at(t)) for t in t_grid)
        out.append(CheckResult("moment_oracle", f"n={n} alpha={alpha}", resid, tol))
    return out


def weak_residual_suite(U: HierarchicalSolution, degree=4, trials=10,
                        seed=23, t_grid=(0.1, 1.0)) -> list[CheckResult]:
    rng = random.Random(seed)
    tol = 0.0 if U.mode == "rational" else 1e-10
    out = []
    for i in range(trials):
        phi = random_poly(U.n, degree, rng)
        prof = weak_residual_profile(U, phi)
        if U.mode == "rational":
            resid = 0.0 if prof == TimeProfile.zero() else \
                max(abs(prof.at(t)) for t in t_grid) + 1e-6
        else:
            resid = max(abs(prof.at(t)) for t in t_grid)
        out.append(CheckResult("weak_residual", f"n={U.n} phi#{i}", resid, tol))
    return out


def resonance_suite(U: HierarchicalSolution) -> list[CheckResult]:
    return [CheckResult("no_resonance", f"n={U.n}",
                        float(U.resonance_events), 0.0)]


def run_standard_suites(f: SimplexPolynomial, n: int, mode: str = "rational",
                        max_order: int = 4) -> list[CheckResult]:
    """The full desk-scale validation battery for one initial condition."""
    dims = tuple(range(1, min(n, 3) + 1))
    results = []
    results += eigen_identity_suite(dims=dims, lmax=4)
    results += omega_shift_suite(dims=dims, lmax=3)
    results += restriction_suite(dims=dims)
    results += flux_suite(dims=dims)
    U = extend(f, n, mode=mode)
    results += conservation_suite(U)
    results += moment_oracle_suite(U, max_order=max_order)
    results += weak_residual_suite(U)
    results += resonance_suite(U)
    return results
