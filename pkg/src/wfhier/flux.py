"""Forward/backward operator application, flux vectors, and boundary traces.

All operations act on chart polynomials; the diffusion matrix on a k-dim
chart is a^ij = x^i (delta_ij - x^j).
"""
from __future__ import annotations

from fractions import Fraction

from .poly import SimplexPolynomial
from .simplex import FaceId, LatticeError, chart_of


def _a_ij(k: int, i: int, j: int) -> SimplexPolynomial:
    xi = SimplexPolynomial.variable(k, i)
    xj = SimplexPolynomial.variable(k, j)
    if i == j:
        return xi - xi * xj
    return (xi * xj).scale(-1)


def apply_forward(u: SimplexPolynomial) -> SimplexPolynomial:
    """Forward (Fokker-Planck) operator: 1/2 sum_ij d_i d_j (a^ij u)."""
    k = u.nvars
    total = SimplexPolynomial.zero(k)
    for i in range(k):
        for j in range(k):
            total = total + (_a_ij(k, i, j) * u).diff(i).diff(j)
    return total.scale(Fraction(1, 2))


def apply_backward(phi: SimplexPolynomial) -> SimplexPolynomial:
    """Backward operator via its exact action on monomials.

    L* x^a = 1/2 sum_i a_i(a_i - 1) x^(a - e_i) - 1/2 |a|(|a| - 1) x^a;
    never raises the degree, annihilates polynomials of degree < 2.
    """
    k = phi.nvars
    out: dict = {}

    def bump(key, val):
        if val != 0:
            out[key] = out.get(key, 0) + val

    for e, c in phi.terms.items():
        tot = sum(e)
        bump(e, -c * Fraction(tot * (tot - 1), 2))
        for i, p in enumerate(e):
            if p >= 2:
                bump(e[:i] + (p - 1,) + e[i + 1:], c * Fraction(p * (p - 1), 2))
    return SimplexPolynomial(k, out)


def apply_backward_operator_form(phi: SimplexPolynomial) -> SimplexPolynomial:
    """Backward operator as 1/2 sum_ij a^ij d_i d_j phi (cross-check route)."""
    k = phi.nvars
    total = SimplexPolynomial.zero(k)
    for i in range(k):
        for j in range(k):
            total = total + _a_ij(k, i, j) * phi.diff(i).diff(j)
    return total.scale(Fraction(1, 2))


def flux_of(u: SimplexPolynomial) -> list[SimplexPolynomial]:
    """Flux components G^i = -1/2 sum_j d_j (a^ij u); div G = -L u."""
    k = u.nvars
    comps = []
    for i in range(k):
        g = SimplexPolynomial.zero(k)
        for j in range(k):
            g = g - (_a_ij(k, i, j) * u).diff(j)
        comps.append(g.scale(Fraction(1, 2)))
    return comps


def divergence(components: list[SimplexPolynomial]) -> SimplexPolynomial:
    total = SimplexPolynomial.zero(components[0].nvars)
    for i, g in enumerate(components):
        total = total + g.diff(i)
    return total


def _removed_label(parent: FaceId, facet: FaceId) -> int:
    gone = set(parent.indices) - set(facet.indices)
    if len(gone) != 1 or not set(facet.indices) <= set(parent.indices):
        raise LatticeError(f"{facet} is not a facet of {parent}")
    return gone.pop()


def restrict_to_child(p: SimplexPolynomial, parent: FaceId, facet: FaceId) -> SimplexPolynomial:
    """Restrict a parent-chart polynomial to a facet, in the facet's chart."""
    m = _removed_label(parent, facet)
    chart = chart_of(parent)
    if p.nvars != parent.dim:
        raise LatticeError(
            f"polynomial has {p.nvars} variables, face {parent} has dim {parent.dim}")
    if m == chart.dependent:
        # the facet {x^dependent = 0} is the diagonal of the chart; the
        # facet's own dependent label is the first free variable
        return p.substitute_closure(0)
    return p.substitute_zero(chart.free.index(m))


def normal_flux_on_facet(u: SimplexPolynomial, parent: FaceId, facet: FaceId) -> SimplexPolynomial:
    """Outward normal flux through a facet, as a density rate with respect
    to the facet's coordinate chart measure.

    Computed from the general flux components; the metric factors of the
    diagonal facet cancel against its induced-measure factor, so every facet
    reduces to a chart-coordinate expression.
    """
    m = _removed_label(parent, facet)
    chart = chart_of(parent)
    comps = flux_of(u)
    if m == chart.dependent:
        total = SimplexPolynomial.zero(u.nvars)
        for g in comps:
            total = total + g
        return total.substitute_closure(0)
    slot = chart.free.index(m)
    return (-comps[slot]).substitute_zero(slot)


def half_trace_flux(u: SimplexPolynomial, parent: FaceId, facet: FaceId) -> SimplexPolynomial:
    """Derived shortcut for the facet flux rate: half the boundary trace."""
    return restrict_to_child(u, parent, facet).scale(Fraction(1, 2))


def restrict_ambient_to_face(phi: SimplexPolynomial, face: FaceId, n: int) -> SimplexPolynomial:
    """Restrict an ambient-chart polynomial (variables x^1..x^n) to a face chart."""
    if phi.nvars != n:
        raise LatticeError(f"ambient polynomial must have {n} variables")
    alive = set(face.indices)
    p = phi
    remaining = list(range(1, n + 1))
    for label in range(n, 0, -1):
        if label not in alive:
            p = p.substitute_zero(remaining.index(label))
            remaining.remove(label)
    if 0 not in alive:
        # eliminate the face's dependent label, which is its smallest
        p = p.substitute_closure(0)
    return p


def adjointness_residual(u: SimplexPolynomial, phi: SimplexPolynomial, lattice):
    """Residual of the integration-by-parts identity with boundary flux.

    (L u, phi) + sum_facets int phi * (normal flux rate) - (u, L* phi);
    identically zero for exact polynomials.
    """
    top = lattice.top
    res = (apply_forward(u) * phi).simplex_integral()
    for facet in lattice.children[top]:
        rate = normal_flux_on_facet(u, top, facet)
        phi_f = restrict_to_child(phi, top, facet)
        res = res + (phi_f * rate).simplex_integral()
    res = res - (u * apply_backward(phi)).simplex_integral()
    return res
