import math
from fractions import Fraction

import pytest

from wfhier.timeprofile import TimeProfile, convolve


def test_convolve_distinct_rates():
    prof, res = convolve(TimeProfile.decay(3), 1)
    assert res == 0
    assert prof.atoms == {(1, 0): Fraction(1, 2), (3, 0): Fraction(-1, 2)}
    for t in (0.1, 1.0, 2.5):
        assert prof.at(t) == pytest.approx((math.exp(-t) - math.exp(-3 * t)) / 2)


def test_convolve_resonant():
    prof, res = convolve(TimeProfile.decay(1), 1)
    assert res == 1
    assert prof.atoms == {(1, 1): Fraction(1)}
    assert prof.at(2.0) == pytest.approx(2.0 * math.exp(-2.0))


def test_convolve_rate_zero_accumulation():
    prof, res = convolve(TimeProfile.decay(0), 0)
    assert res == 1
    assert prof.atoms == {(0, 1): Fraction(1)}
    assert prof.at(3.0) == pytest.approx(3.0)


def test_convolve_resonant_power():
    # int_0^t tau^p e^{-a tau} e^{-a(t-tau)} dtau = t^(p+1)/(p+1) e^{-a t}
    prof, res = convolve(TimeProfile({(2, 3): Fraction(5)}), 2)
    assert res == 1
    assert prof.atoms == {(2, 4): Fraction(5, 4)}


def test_convolve_matches_numeric_quadrature():
    # oracle: trapezoid integration of the Duhamel integral
    parent = TimeProfile({(3, 0): Fraction(2), (1, 2): Fraction(-1, 3),
                          (0, 1): Fraction(1, 7)})
    b = 2
    prof, _ = convolve(parent, b)
    t = 1.7
    m = 200000
    h = t / m
    acc = 0.0
    for i in range(m + 1):
        tau = i * h
        w = 0.5 if i in (0, m) else 1.0
        acc += w * parent.at(tau) * math.exp(-b * (t - tau))
    acc *= h
    assert prof.at(t) == pytest.approx(acc, abs=1e-8)


def test_profile_algebra_and_derivative():
    p = TimeProfile({(1, 0): Fraction(1), (2, 1): Fraction(3)})
    d = p.derivative()
    t = 0.8
    eps = 1e-6
    numeric = (p.at(t + eps) - p.at(t - eps)) / (2 * eps)
    assert d.at(t) == pytest.approx(numeric, rel=1e-8)
    assert (p - p).is_zero()
    assert p.scale(0).is_zero()


def test_value0():
    p = TimeProfile({(4, 0): Fraction(2), (1, 3): Fraction(9), (0, 0): Fraction(1)})
    assert p.value0() == 3
    assert p.at(0.0) == pytest.approx(3.0)


def test_json_round_trip():
    p = TimeProfile({(1, 0): Fraction(1, 3), (2, 2): Fraction(-5)})
    assert TimeProfile.from_json(p.to_json()) == p
    q = p.map_coeffs(float)
    assert TimeProfile.from_json(q.to_json()) == q
