"""Face lattice and coordinate charts of the closed probability simplex.

Allele labels are 0..n; the ambient chart uses coordinates x^1..x^n with
x^0 = 1 - sum(x^i) implied.  A face is identified by the set of labels whose
frequencies may be positive on it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

MAX_AMBIENT_DIM = 12


class SimplexSizeError(ValueError):
    """Requested dimension exceeds the supported combinatorial range."""


class LatticeError(ValueError):
    """Faces are not adjacent in the lattice, or a face is malformed."""


@dataclass(frozen=True, order=True)
class FaceId:
    """A face of the closed simplex: the set of allele labels alive on it."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if len(idx) == 0:
            raise LatticeError("face needs at least one label")
        if list(idx) != sorted(set(idx)):
            raise LatticeError(f"labels must be sorted and distinct: {idx}")
        if idx[0] < 0:
            raise LatticeError(f"negative label in {idx}")

    @property
    def dim(self) -> int:
        return len(self.indices) - 1

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self.indices) + "]"


@dataclass(frozen=True)
class FaceChart:
    """Canonical chart of a face.

    The smallest label is eliminated via x^dep = 1 - sum(free); densities are
    stored with respect to the Lebesgue measure of the free coordinates, and
    measure_factor records the ratio to the induced surface measure.
    """

    face: FaceId
    dependent: int
    free: tuple[int, ...]
    measure_factor: float


def chart_of(face: FaceId) -> FaceChart:
    dep = face.indices[0]
    free = face.indices[1:]
    factor = 1.0 if dep == 0 else math.sqrt(face.dim + 1)
    return FaceChart(face=face, dependent=dep, free=free, measure_factor=factor)


class FaceLattice:
    """All faces of the closed n-simplex with parent/child adjacency."""

    def __init__(self, n: int):
        if not (1 <= n <= MAX_AMBIENT_DIM):
            raise SimplexSizeError(
                f"ambient dimension must be in 1..{MAX_AMBIENT_DIM}, got {n}")
        self.n = n
        labels = tuple(range(n + 1))
        self.faces: list[FaceId] = []
        for k in range(n + 1):
            for sub in combinations(labels, k + 1):
                self.faces.append(FaceId(sub))
        self._by_dim: dict[int, list[FaceId]] = {}
        for f in self.faces:
            self._by_dim.setdefault(f.dim, []).append(f)
        self.children: dict[FaceId, list[FaceId]] = {}
        self.parents: dict[FaceId, list[FaceId]] = {f: [] for f in self.faces}
        for f in self.faces:
            kids = []
            if f.dim > 0:
                for i in f.indices:
                    child = FaceId(tuple(j for j in f.indices if j != i))
                    kids.append(child)
                    self.parents[child].append(f)
            self.children[f] = kids

    @property
    def top(self) -> FaceId:
        return FaceId(tuple(range(self.n + 1)))

    def faces_of_dim(self, k: int) -> list[FaceId]:
        return list(self._by_dim.get(k, []))

    def __contains__(self, face: FaceId) -> bool:
        return set(face.indices) <= set(range(self.n + 1))


def build_lattice(n: int) -> FaceLattice:
    return FaceLattice(n)


def embed_point(face: FaceId, coords, n: int):
    """Map chart coordinates of a face to ambient coordinates (x^1..x^n)."""
    chart = chart_of(face)
    if len(coords) != face.dim:
        raise LatticeError(
            f"face {face} expects {face.dim} coordinates, got {len(coords)}")
    if any(c < 0 for c in coords) or sum(coords) > 1:
        raise ValueError(f"coordinates {coords} outside the closed simplex")
    x = [0.0] * (n + 1)
    for lab, c in zip(chart.free, coords):
        x[lab] = c
    x[chart.dependent] = 1 - sum(coords)
    return tuple(x[1:])
