"""Hierarchical extension of interior solutions to the closed simplex.

The interior solution decays spectrally; its normal boundary flux seeds a
lower-dimensional process on every facet via a Duhamel integral, recursively
down to the vertices, which accumulate mass at rate zero.  All time
dependence stays in closed form (TimeProfile atoms), so densities and
hierarchical products are exact at arbitrary times.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from .flux import (apply_backward, normal_flux_on_facet,
                   restrict_ambient_to_face)
from .poly import SimplexPolynomial
from .simplex import FaceId, FaceLattice, SimplexSizeError, build_lattice
from .spectral import GegenbauerMode, build_mode, project
from .timeprofile import TimeProfile, convolve

log = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 10


@dataclass
class FaceSolution:
    """Modal expansion with time profiles of the density on one face chart."""

    face: FaceId
    terms: dict[tuple[int, ...], tuple[GegenbauerMode, TimeProfile]]

    def density_poly(self, t: float) -> SimplexPolynomial:
        total = SimplexPolynomial.zero(self.face.dim)
        for mode, prof in self.terms.values():
            total = total + mode.poly.scale(prof.at(t))
        return total

    def density_at0(self) -> SimplexPolynomial:
        total = SimplexPolynomial.zero(self.face.dim)
        for mode, prof in self.terms.values():
            total = total + mode.poly.scale(prof.value0())
        return total


@dataclass
class HierarchicalSolution:
    n: int
    lattice: FaceLattice
    per_face: dict[FaceId, FaceSolution]
    initial: SimplexPolynomial
    mode: str
    resonance_events: int = 0


def _project_with_profiles(p: SimplexPolynomial, profile_for):
    """Expand p in eigenmodes, attaching profile_for(mode) to each term."""
    return [(m, c, profile_for(m)) for m, c in project(p)]


def extend(f: SimplexPolynomial, n: int, *, mode: str = "rational",
           boundary_data: dict | None = None,
           max_degree: int = DEFAULT_MAX_DEGREE) -> HierarchicalSolution:
    """Build the extended solution on the closed simplex for initial density f.

    f lives on the ambient chart and is extended by zero to the boundary;
    optional boundary_data maps faces to chart polynomials that are
    superposed as additional initial conditions on those faces.
    """
    if mode not in ("rational", "double"):
        raise ValueError(f"unknown arithmetic mode {mode!r}")
    if f.nvars != n:
        raise SimplexSizeError(f"initial polynomial has {f.nvars} variables, expected {n}")
    if f.degree() > max_degree:
        raise SimplexSizeError(
            f"initial degree {f.degree()} exceeds cap {max_degree}")
    lattice = build_lattice(n)
    convert = (lambda p: p.map_coeffs(float)) if mode == "double" else (lambda p: p)
    f = convert(f)
    boundary_data = {face: convert(p) for face, p in (boundary_data or {}).items()}

    per_face: dict[FaceId, FaceSolution] = {}
    resonances = 0

    def decay_terms(p: SimplexPolynomial):
        """Initial-condition terms: each mode coefficient decays at its rate."""
        out = {}
        for m, c in project(p):
            out[m.alpha] = (m, TimeProfile({(m.rate, 0): c}))
        return out

    top = lattice.top
    per_face[top] = FaceSolution(top, decay_terms(f))

    for k in range(n - 1, -1, -1):
        for face in lattice.faces_of_dim(k):
            seeds: dict[tuple[int, ...], TimeProfile] = {}
            for parent in lattice.parents[face]:
                for pmode, pprof in per_face[parent].terms.values():
                    q = normal_flux_on_facet(pmode.poly, parent, face)
                    if q.is_zero():
                        continue
                    for cmode, c in project(q):
                        cur = seeds.get(cmode.alpha, TimeProfile.zero())
                        seeds[cmode.alpha] = cur + pprof.scale(c)
            terms: dict[tuple[int, ...], tuple[GegenbauerMode, TimeProfile]] = {}
            if face in boundary_data:
                terms = decay_terms(boundary_data[face])
            for alpha, seed_prof in seeds.items():
                cmode = build_mode(k, alpha)
                conv, res = convolve(seed_prof, cmode.rate)
                if res and k >= 1:
                    resonances += res
                    log.warning("resonant Duhamel atom on face %s mode %s",
                                face, alpha)
                if alpha in terms:
                    terms[alpha] = (cmode, terms[alpha][1] + conv)
                else:
                    terms[alpha] = (cmode, conv)
            per_face[face] = FaceSolution(face, terms)

    return HierarchicalSolution(n=n, lattice=lattice, per_face=per_face,
                                initial=f, mode=mode,
                                resonance_events=resonances)


# -- hierarchical products and residuals -------------------------------------

def hierarchical_product_profile(U: HierarchicalSolution,
                                 phi: SimplexPolynomial) -> TimeProfile:
    """[U, phi] as a symbolic function of time."""
    total = TimeProfile.zero()
    for face, fs in U.per_face.items():
        if not fs.terms:
            continue
        phi_f = restrict_ambient_to_face(phi, face, U.n)
        for mode, prof in fs.terms.values():
            w = (mode.poly * phi_f).simplex_integral()
            if w != 0:
                total = total + prof.scale(w)
    return total


def hierarchical_product(U: HierarchicalSolution, phi: SimplexPolynomial,
                         t: float) -> float:
    if t < 0:
        raise ValueError("time must be nonnegative")
    return hierarchical_product_profile(U, phi).at(t)


def weak_residual_profile(U: HierarchicalSolution,
                          phi: SimplexPolynomial) -> TimeProfile:
    """[d/dt U, phi] - [U, L* phi], symbolic in time.

    The backward operator acts facewise through the restriction property of
    the backward operator to subsimplices.
    """
    total = TimeProfile.zero()
    for face, fs in U.per_face.items():
        if not fs.terms:
            continue
        phi_f = restrict_ambient_to_face(phi, face, U.n)
        lphi_f = apply_backward(phi_f)
        for mode, prof in fs.terms.values():
            w_dt = (mode.poly * phi_f).simplex_integral()
            if w_dt != 0:
                total = total + prof.derivative().scale(w_dt)
            w_bw = (mode.poly * lphi_f).simplex_integral()
            if w_bw != 0:
                total = total - prof.scale(w_bw)
    return total


def weak_residual(U: HierarchicalSolution, phi: SimplexPolynomial,
                  t: float) -> float:
    if t <= 0:
        raise ValueError("weak residual is defined for t > 0")
    return weak_residual_profile(U, phi).at(t)


def moment_profile(U: HierarchicalSolution, alpha) -> TimeProfile:
    alpha = tuple(alpha)
    phi = SimplexPolynomial.monomial(U.n, alpha)
    return hierarchical_product_profile(U, phi)


def moment(U: HierarchicalSolution, alpha, t: float) -> float:
    if t < 0:
        raise ValueError("time must be nonnegative")
    return moment_profile(U, alpha).at(t)


def mass_profile(U: HierarchicalSolution) -> TimeProfile:
    return moment_profile(U, (0,) * U.n)


def stratum_mass_profile(U: HierarchicalSolution, k: int) -> TimeProfile:
    """Total mass carried by all faces of dimension k, symbolic in time."""
    total = TimeProfile.zero()
    for face in U.lattice.faces_of_dim(k):
        fs = U.per_face[face]
        for mode, prof in fs.terms.values():
            w = mode.poly.simplex_integral()
            if w != 0:
                total = total + prof.scale(w)
    return total


# -- serialization ------------------------------------------------------------

def solution_to_json(U: HierarchicalSolution) -> dict:
    faces = []
    for face in U.lattice.faces:
        fs = U.per_face[face]
        from .simplex import chart_of
        chart = chart_of(face)
        faces.append({
            "indices": list(face.indices),
            "chart": {"dependent": chart.dependent, "free": list(chart.free),
                      "measure_factor": chart.measure_factor},
            "terms": [{
                "mode_alpha": list(alpha),
                "mode_degree": fs.terms[alpha][0].degree,
                "atoms": fs.terms[alpha][1].to_json(),
            } for alpha in sorted(fs.terms)],
        })
    return {
        "n": U.n,
        "mode": U.mode,
        "initial": U.initial.to_json(),
        "faces": faces,
    }


def solution_from_json(data: dict) -> HierarchicalSolution:
    n = data["n"]
    lattice = build_lattice(n)
    per_face: dict[FaceId, FaceSolution] = {}
    for entry in data["faces"]:
        face = FaceId(tuple(entry["indices"]))
        terms = {}
        for term in entry["terms"]:
            alpha = tuple(term["mode_alpha"])
            terms[alpha] = (build_mode(face.dim, alpha),
                            TimeProfile.from_json(term["atoms"]))
        per_face[face] = FaceSolution(face, terms)
    initial = SimplexPolynomial.from_json(data["initial"], n)
    return HierarchicalSolution(n=n, lattice=lattice, per_face=per_face,
                                initial=initial, mode=data.get("mode", "rational"))
