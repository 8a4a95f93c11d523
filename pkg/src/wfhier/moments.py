"""Independent oracle: exact solution of the moment evolution ODE system.

The system is lower-triangular in total order |alpha| with constant
coefficients, so variation of constants closes over t^p * exp(-m(m-1)t/2)
atoms and the trajectory is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .poly import SimplexPolynomial
from .timeprofile import TimeProfile, convolve


class MomentInputError(ValueError):
    """A required initial moment is missing."""


def multi_indices(n: int, max_order: int):
    """All exponent tuples over n slots with total order <= max_order."""
    out = []
    for alpha in product(range(max_order + 1), repeat=n):
        if sum(alpha) <= max_order:
            out.append(alpha)
    out.sort(key=lambda a: (sum(a), a))
    return out


@dataclass
class MomentTrajectory:
    n: int
    max_order: int
    entries: dict[tuple[int, ...], TimeProfile]

    def at(self, alpha, t: float) -> float:
        return self.entries[tuple(alpha)].at(t)


def initial_moments_from_poly(f: SimplexPolynomial, n: int,
                              max_order: int) -> dict:
    """Moments of f over the open simplex (boundary carries no mass at t=0)."""
    out = {}
    for alpha in multi_indices(n, max_order):
        out[alpha] = (f * SimplexPolynomial.monomial(n, alpha)).simplex_integral()
    return out


def solve_moment_ode(initial_moments: dict, n: int,
                     max_order: int) -> MomentTrajectory:
    """Closed-form trajectories in increasing total order.

    d/dt mu_a = -(|a|(|a|-1)/2) mu_a + sum_i (a_i(a_i-1)/2) mu_(a-e_i);
    the source is resolved by the Duhamel convolution, including its
    resonant branch should coinciding rates ever arise.
    """
    entries: dict[tuple[int, ...], TimeProfile] = {}
    for alpha in multi_indices(n, max_order):
        if alpha not in initial_moments:
            raise MomentInputError(f"missing initial moment for {alpha}")
        tot = sum(alpha)
        lam = tot * (tot - 1) // 2
        prof = TimeProfile({(lam, 0): initial_moments[alpha]})
        for i, a_i in enumerate(alpha):
            if a_i < 1:
                continue
            w = Fraction(a_i * (a_i - 1), 2)
            if w == 0:
                continue
            lower = alpha[:i] + (a_i - 1,) + alpha[i + 1:]
            conv, _ = convolve(entries[lower], lam)
            prof = prof + conv.scale(w)
        entries[alpha] = prof
    return MomentTrajectory(n=n, max_order=max_order, entries=entries)


def compare(trajectory: MomentTrajectory, U, t_grid, alphas) -> dict:
    """Max absolute discrepancy per multi-index between oracle and hierarchy."""
    from .hierarchy import moment_profile
    report = {}
    for alpha in alphas:
        alpha = tuple(alpha)
        diff = moment_profile(U, alpha) - trajectory.entries[alpha]
        report[alpha] = max(abs(diff.at(t)) for t in t_grid)
    return report


def rk4_crosscheck(initial_moments: dict, n: int, max_order: int,
                   t_end: float, step: float = 1e-3) -> dict:
    """Fixed-step RK4 integration of the same triangular system."""
    alphas = multi_indices(n, max_order)
    state = {a: float(initial_moments[a]) for a in alphas}

    def deriv(s):
        d = {}
        for a in alphas:
            tot = sum(a)
            v = -0.5 * tot * (tot - 1) * s[a]
            for i, a_i in enumerate(a):
                if a_i >= 2:
                    lower = a[:i] + (a_i - 1,) + a[i + 1:]
                    v += 0.5 * a_i * (a_i - 1) * s[lower]
            d[a] = v
        return d

    steps = max(1, round(t_end / step))
    h = t_end / steps
    for _ in range(steps):
        k1 = deriv(state)
        s2 = {a: state[a] + 0.5 * h * k1[a] for a in alphas}
        k2 = deriv(s2)
        s3 = {a: state[a] + 0.5 * h * k2[a] for a in alphas}
        k3 = deriv(s3)
        s4 = {a: state[a] + h * k3[a] for a in alphas}
        k4 = deriv(s4)
        state = {a: state[a] + h / 6 * (k1[a] + 2 * k2[a] + 2 * k3[a] + k4[a])
                 for a in alphas}
    return state


def trajectory_to_csv_rows(trajectory: MomentTrajectory, t_grid):
    rows = [("t", "alpha", "value")]
    for t in t_grid:
        for alpha in sorted(trajectory.entries, key=lambda a: (sum(a), a)):
            rows.append((t, ";".join(str(a) for a in alpha),
                         trajectory.entries[alpha].at(t)))
    return rows
