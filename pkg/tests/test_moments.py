import math
import random
from fractions import Fraction

import pytest

from wfhier.checks import random_poly
from wfhier.hierarchy import extend
from wfhier.moments import (MomentInputError, compare,
                            initial_moments_from_poly, multi_indices,
                            rk4_crosscheck, solve_moment_ode,
                            trajectory_to_csv_rows)
from wfhier.poly import SimplexPolynomial
from wfhier.timeprofile import TimeProfile

P = SimplexPolynomial


def uniform_trajectory(n, max_order):
    f = P.one(n)
    init = initial_moments_from_poly(f, n, max_order)
    return solve_moment_ode(init, n, max_order)


def test_uniform_n1_closed_forms():
    traj = uniform_trajectory(1, 2)
    assert traj.entries[(1,)] == TimeProfile({(0, 0): Fraction(1, 2)})
    # mu2' = -mu2 + mu1 with mu2(0) = 1/3 gives 1/2 - e^{-t}/6
    assert traj.entries[(2,)] == TimeProfile({(0, 0): Fraction(1, 2),
                                              (1, 0): Fraction(-1, 6)})


def test_heterozygosity_pure_decay():
    traj = uniform_trajectory(1, 2)
    h = traj.entries[(1,)] - traj.entries[(2,)]
    assert h == TimeProfile({(1, 0): Fraction(1, 6)})


def test_multilinear_moments_pure_decay():
    # alpha with all entries <= 1 has no source terms
    rng = random.Random(3)
    f = random_poly(3, 3, rng)
    init = initial_moments_from_poly(f, 3, 3)
    traj = solve_moment_ode(init, 3, 3)
    for alpha in multi_indices(3, 3):
        if alpha and max(alpha) <= 1 and sum(alpha) >= 1:
            tot = sum(alpha)
            lam = tot * (tot - 1) // 2
            assert traj.entries[alpha] == TimeProfile({(lam, 0): init[alpha]})


def test_initial_values_reproduced():
    rng = random.Random(5)
    f = random_poly(2, 3, rng)
    init = initial_moments_from_poly(f, 2, 4)
    traj = solve_moment_ode(init, 2, 4)
    for alpha, mu0 in init.items():
        assert traj.entries[alpha].value0() == mu0


def test_missing_initial_moment():
    with pytest.raises(MomentInputError):
        solve_moment_ode({(0,): Fraction(1)}, 1, 2)


def test_monotone_bounds_probability_density():
    traj = uniform_trajectory(2, 4)
    mass = traj.entries[(0, 0)].at(0.0)
    for alpha in multi_indices(2, 4):
        for t in (0.0, 0.1, 1.0, 5.0):
            v = traj.entries[alpha].at(t)
            assert -1e-12 <= v <= mass + 1e-12


def test_compare_examples():
    U = extend(P.one(1), 1)
    traj = uniform_trajectory(1, 2)
    report = compare(traj, U, (1.0,), [(2,)])
    assert report[(2,)] == 0.0
    U2 = extend(P.one(2), 2)
    traj2 = uniform_trajectory(2, 2)
    report = compare(traj2, U2, (0.1, 1.0, 5.0), [(1, 1), (0, 0)])
    assert report[(1, 1)] == 0.0
    assert report[(0, 0)] == 0.0


def test_compare_random_exact():
    rng = random.Random(7)
    for n in (1, 2, 3):
        f = random_poly(n, 3, rng)
        U = extend(f, n)
        init = initial_moments_from_poly(f, n, 4)
        traj = solve_moment_ode(init, n, 4)
        report = compare(traj, U, (0.1, 1.0, 5.0), multi_indices(n, 4))
        assert max(report.values()) == 0.0


def test_rk4_crosscheck():
    rng = random.Random(9)
    f = random_poly(2, 2, rng)
    init = initial_moments_from_poly(f, 2, 3)
    traj = solve_moment_ode(init, 2, 3)
    state = rk4_crosscheck(init, 2, 3, t_end=1.0, step=1e-3)
    for alpha in multi_indices(2, 3):
        assert state[alpha] == pytest.approx(traj.entries[alpha].at(1.0),
                                             abs=1e-9)


def test_csv_rows_shape():
    traj = uniform_trajectory(1, 2)
    rows = trajectory_to_csv_rows(traj, (0.0, 1.0))
    assert rows[0] == ("t", "alpha", "value")
    assert len(rows) == 1 + 2 * 3
    # mu_0 column constant over time
    mu0 = [r[2] for r in rows[1:] if r[1] == "0"]
    assert all(v == mu0[0] for v in mu0)
