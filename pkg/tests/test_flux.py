import random
from fractions import Fraction

import pytest

from wfhier.checks import random_poly
from wfhier.flux import (adjointness_residual, apply_backward,
                         apply_backward_operator_form, apply_forward,
                         divergence, flux_of, half_trace_flux,
                         normal_flux_on_facet, restrict_ambient_to_face,
                         restrict_to_child)
from wfhier.poly import SimplexPolynomial
from wfhier.simplex import FaceId, LatticeError, build_lattice
from wfhier.spectral import omega

P = SimplexPolynomial


def test_apply_forward_examples():
    assert apply_forward(P.one(1)) == P.constant(1, Fraction(-1))
    assert apply_forward(P.one(2)) == P.constant(2, Fraction(-3))
    u = P.parse("x1^2 + -1 * x1 + 1/5", 1)
    assert apply_forward(u) == u.scale(-6)


def test_apply_backward_examples():
    assert apply_backward(P.one(2)).is_zero()
    assert apply_backward(P.variable(2, 0)).is_zero()
    assert apply_backward(P.parse("x1^2", 1)) == P.parse("x1 + -1 * x1^2", 1)
    assert apply_backward(P.parse("1 * x1 * x2", 2)) == P.parse("-1 * x1 * x2", 2)


def test_backward_monomial_vs_operator_form():
    rng = random.Random(3)
    for k in (1, 2, 3):
        for _ in range(4):
            phi = random_poly(k, 4, rng)
            assert apply_backward(phi) == apply_backward_operator_form(phi)


def test_backward_degree_never_increases():
    rng = random.Random(5)
    for k in (1, 2):
        for _ in range(5):
            phi = random_poly(k, 5, rng)
            assert apply_backward(phi).degree() <= phi.degree()
            assert apply_forward(phi).degree() <= phi.degree()


def test_flux_examples():
    g = flux_of(P.one(1))
    assert g[0] == P.parse("x1 + -1/2", 1)  # -1/2 (1 - 2x)
    # G^1 = -1/2 [d_1(x1 - x1^2) + d_2(-x1 x2)] = -1/2 (1 - 3 x1)
    g2 = flux_of(P.one(2))
    assert g2[0] == P.parse("-1/2 + 3/2 * x1", 2)
    assert divergence(g2) == -apply_forward(P.one(2))


def test_flux_divergence_identity():
    rng = random.Random(7)
    for k in (1, 2, 3):
        for _ in range(4):
            u = random_poly(k, 4, rng)
            assert divergence(flux_of(u)) == -apply_forward(u)


def test_normal_flux_examples():
    lat1 = build_lattice(1)
    top = lat1.top
    # u = 1: rate 1/2 into each vertex
    for v in lat1.children[top]:
        assert normal_flux_on_facet(P.one(1), top, v) == \
            P.constant(0, Fraction(1, 2))
    # n=2, u=1: rate 1/2 in edge coordinates on all three edges
    lat2 = build_lattice(2)
    for edge in lat2.children[lat2.top]:
        assert normal_flux_on_facet(P.one(2), lat2.top, edge) == \
            P.constant(1, Fraction(1, 2))


def test_normal_flux_vanishing_trace():
    # u vanishing on a facet has zero flux through it
    lat = build_lattice(2)
    u = omega(2)
    for edge in lat.children[lat.top]:
        assert normal_flux_on_facet(u, lat.top, edge).is_zero()


def test_half_trace_identity_all_faces():
    rng = random.Random(11)
    for n in (1, 2, 3):
        lat = build_lattice(n)
        for _ in range(4):
            for parent in lat.faces:
                if parent.dim == 0:
                    continue
                u = random_poly(parent.dim, 4, rng)
                for facet in lat.children[parent]:
                    assert normal_flux_on_facet(u, parent, facet) == \
                        half_trace_flux(u, parent, facet)


def test_normal_flux_adjacency_error():
    lat = build_lattice(2)
    with pytest.raises(LatticeError):
        normal_flux_on_facet(P.one(2), lat.top, FaceId((0,)))


def test_adjointness_examples():
    lat = build_lattice(1)
    assert adjointness_residual(P.one(1), P.variable(1, 0), lat) == 0
    # compactly supported surrogate phi = omega * q: boundary term vanishes,
    # reducing to plain adjointness (L u, phi) = (u, L* phi)
    rng = random.Random(13)
    for n in (1, 2):
        lat = build_lattice(n)
        u = random_poly(n, 3, rng)
        phi = omega(n) * random_poly(n, 2, rng)
        lhs = (apply_forward(u) * phi).simplex_integral()
        rhs = (u * apply_backward(phi)).simplex_integral()
        assert lhs == rhs
        assert adjointness_residual(u, phi, lat) == 0


def test_adjointness_random():
    rng = random.Random(17)
    for n in (1, 2, 3):
        lat = build_lattice(n)
        for _ in range(5):
            u = random_poly(n, 4, rng)
            phi = random_poly(n, 4, rng)
            assert adjointness_residual(u, phi, lat) == 0


def test_restriction_lemma():
    rng = random.Random(19)
    for n in (1, 2, 3):
        lat = build_lattice(n)
        for _ in range(3):
            phi = random_poly(n, 4, rng)
            lphi = apply_backward(phi)
            for face in lat.faces:
                assert restrict_ambient_to_face(lphi, face, n) == \
                    apply_backward(restrict_ambient_to_face(phi, face, n))


def test_restrict_to_child_consistency():
    # restriction through the chart agrees with evaluating the parent
    lat = build_lattice(2)
    rng = random.Random(23)
    u = random_poly(2, 3, rng)
    top = lat.top
    # facet {0,1}: x2 = 0
    r = restrict_to_child(u, top, FaceId((0, 1)))
    assert r == u.substitute_zero(1)
    # facet {1,2}: x1 = 1 - x2 in edge coordinate x2
    r = restrict_to_child(u, top, FaceId((1, 2)))
    assert r == u.substitute_closure(0)
