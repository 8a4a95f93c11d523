import math
from itertools import combinations, permutations

import pytest

from wfhier.simplex import (FaceId, LatticeError, SimplexSizeError,
                            build_lattice, chart_of, embed_point)


def test_counts_n2():
    lat = build_lattice(2)
    assert len(lat.faces_of_dim(0)) == 3
    assert len(lat.faces_of_dim(1)) == 3
    assert len(lat.faces_of_dim(2)) == 1


def test_faces_n1():
    lat = build_lattice(1)
    assert {f.indices for f in lat.faces} == {(0,), (1,), (0, 1)}


def test_face_count_n3_brute_force():
    # oracle: enumerate all nonempty subsets of {0,1,2,3}
    subsets = [s for k in range(1, 5) for s in combinations(range(4), k)]
    lat = build_lattice(3)
    assert len(lat.faces) == len(subsets) == 15
    assert {f.indices for f in lat.faces} == set(subsets)


def test_binomial_counts():
    for n in (1, 2, 3, 4):
        lat = build_lattice(n)
        for k in range(n + 1):
            assert len(lat.faces_of_dim(k)) == math.comb(n + 1, k + 1)


def test_adjacency_counts():
    lat = build_lattice(3)
    for f in lat.faces:
        k = f.dim
        assert len(lat.children[f]) == (k + 1 if k > 0 else 0)
        assert len(lat.parents[f]) == 3 - k
        for c in lat.children[f]:
            assert set(c.indices) < set(f.indices)
            assert len(f.indices) == len(c.indices) + 1


def test_top_face():
    lat = build_lattice(3)
    assert lat.top.indices == (0, 1, 2, 3)
    assert lat.top.dim == 3


def test_size_errors():
    with pytest.raises(SimplexSizeError):
        build_lattice(0)
    with pytest.raises(SimplexSizeError):
        build_lattice(13)


def test_faceid_invariants():
    with pytest.raises(LatticeError):
        FaceId(())
    with pytest.raises(LatticeError):
        FaceId((2, 1))
    with pytest.raises(LatticeError):
        FaceId((1, 1))


def test_chart_examples():
    c = chart_of(FaceId((0, 1, 2)))
    assert c.dependent == 0 and c.free == (1, 2) and c.measure_factor == 1
    c = chart_of(FaceId((1, 2)))
    assert c.dependent == 1 and c.free == (2,)
    assert c.measure_factor == pytest.approx(math.sqrt(2))
    c = chart_of(FaceId((3,)))
    assert c.dependent == 3 and c.free == () and c.measure_factor == 1


def test_embed_examples():
    assert embed_point(FaceId((1, 2)), (0.3,), 2) == pytest.approx((0.7, 0.3))
    assert embed_point(FaceId((0, 1)), (0.4,), 2) == pytest.approx((0.4, 0.0))
    assert embed_point(FaceId((2,)), (), 2) == pytest.approx((0.0, 1.0))


def test_embed_domain_error():
    with pytest.raises(ValueError):
        embed_point(FaceId((0, 1)), (1.4,), 2)
    with pytest.raises(ValueError):
        embed_point(FaceId((0, 1)), (-0.1,), 2)


def test_permutation_automorphism():
    lat = build_lattice(2)
    faces = {f.indices for f in lat.faces}
    for perm in permutations(range(3)):
        mapped = {tuple(sorted(perm[i] for i in idx)) for idx in faces}
        assert mapped == faces
        # permutations fixing membership of 0 preserve measure factors
        if perm[0] == 0:
            for idx in faces:
                img = tuple(sorted(perm[i] for i in idx))
                assert chart_of(FaceId(idx)).measure_factor == pytest.approx(
                    chart_of(FaceId(img)).measure_factor)
