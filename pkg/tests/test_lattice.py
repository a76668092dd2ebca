import math
import random
from itertools import product

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from scipy.optimize import linprog
from scipy.spatial import ConvexHull

from conftest import unit
from mvone.generators import random_unimodular
from mvone.lattice import (
    LatticePolytope,
    UnimodularAffineMap,
    affine_dim,
    contains,
    contains_translate,
    convex_hull,
    face,
    hermite_extend,
    minkowski_sum,
    normalized_volume,
    normalized_volume_in_dim,
    project_along,
    restrict_to,
    span_frame,
    standard_simplex,
    support,
)
from mvone.linalg import vec_gcd

# ---------------------------------------------------------------- oracles


def lp_extreme_points(points):
    """Points that are not convex combinations of the others (exact LP test in floats
    on tiny integer data)."""
    pts = sorted(set(map(tuple, points)))
    out = []
    for i, p in enumerate(pts):
        others = [q for j, q in enumerate(pts) if j != i]
        if not others:
            out.append(p)
            continue
        a_eq = np.vstack([np.array(others, dtype=float).T, np.ones(len(others))])
        b_eq = np.append(np.array(p, dtype=float), 1.0)
        res = linprog(np.zeros(len(others)), A_eq=a_eq, b_eq=b_eq, bounds=(0, None), method="highs")
        if res.status != 0:
            out.append(p)
    return out


def float_volume(points):
    n = len(points[0])
    return round(ConvexHull(np.array(points, dtype=float)).volume * math.factorial(n))


points_2d = st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=8)
points_3d = st.lists(st.tuples(*[st.integers(-2, 2)] * 3), min_size=1, max_size=8)
covectors = st.lists(st.integers(-5, 5), min_size=3, max_size=3).filter(lambda v: any(v)).map(
    lambda v: tuple(x // vec_gcd(v) for x in v))


# ---------------------------------------------------------------- hull


def test_hull_drops_boundary_midpoint():
    pts = [(0, 0), (2, 0), (0, 2), (1, 1)]
    assert set(convex_hull(pts).vertices) == {(0, 0), (2, 0), (0, 2)} == set(lp_extreme_points(pts))


def test_hull_single_point_and_simplex():
    assert convex_hull([(5, 7)]).vertices == ((5, 7),)
    s = standard_simplex(4)
    assert convex_hull(s.vertices) == s
    assert len(s.vertices) == 5


def test_hull_errors():
    with pytest.raises(ValueError):
        convex_hull([])
    with pytest.raises(ValueError):
        convex_hull([(0, 0), (1,)])


@given(st.one_of(points_2d, points_3d))
@settings(max_examples=120, deadline=None)
def test_hull_matches_lp_oracle(points):
    assert set(convex_hull(points).vertices) == set(lp_extreme_points(points))


@given(points_3d)
@settings(max_examples=60, deadline=None)
def test_hull_idempotent(points):
    x = convex_hull(points)
    assert convex_hull(x.vertices) == x


# ---------------------------------------------------------------- support / faces / sums


def test_support_examples():
    assert support(standard_simplex(2), (1, 1)) == 1
    assert support(convex_hull([(0, 0), (2, 0), (0, 2)]), (1, 0)) == 2
    assert support(convex_hull([(3, -1)]), (2, 5)) == 1


def test_face_examples():
    s3 = standard_simplex(3)
    assert set(face(s3, (1, 1, 1)).vertices) == {unit(3, 0), unit(3, 1), unit(3, 2)}
    assert face(s3, (-1, -1, -1)).vertices == ((0, 0, 0),)
    square = convex_hull(product((0, 1), repeat=2))
    assert set(face(square, (1, 0)).vertices) == {(1, 0), (1, 1)}


def test_minkowski_examples():
    seg1, seg2 = convex_hull([(0, 0), (1, 0)]), convex_hull([(0, 0), (0, 1)])
    assert minkowski_sum(seg1, seg2) == convex_hull(product((0, 1), repeat=2))
    tri = standard_simplex(2)
    assert minkowski_sum(tri, convex_hull([(3, 4)])) == tri.translate((3, 4))
    assert minkowski_sum(tri, tri) == convex_hull([(0, 0), (2, 0), (0, 2)])


@given(points_3d, points_3d, st.lists(covectors, min_size=1, max_size=10))
@settings(max_examples=60, deadline=None)
def test_support_additive(xs, ys, alphas):
    x, y = convex_hull(xs), convex_hull(ys)
    s = minkowski_sum(x, y)
    for a in alphas:
        assert support(s, a) == support(x, a) + support(y, a)


@given(points_3d, covectors)
@settings(max_examples=80, deadline=None)
def test_face_consistency(xs, alpha):
    x = convex_hull(xs)
    h = support(x, alpha)
    f = set(face(x, alpha).vertices)
    for v in x.vertices:
        value = sum(a * b for a, b in zip(alpha, v))
        assert (value == h) == (v in f)
        assert value <= h


# ---------------------------------------------------------------- dimension and volume


def test_affine_dim_examples():
    assert affine_dim(convex_hull([(1, 2, 3)])) == 0
    assert affine_dim(convex_hull([(0, 0, 0), (3, 0, 0)])) == 1
    assert affine_dim(convex_hull([(0, 0, 0), (1, 0, 0), (1, 1, 0)])) == 2


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_standard_simplex_volume_one(n):
    assert normalized_volume(standard_simplex(n)) == 1


def test_volume_examples():
    assert normalized_volume(convex_hull([(0, 0, 0), (7, 0, 0)])) == 7
    assert normalized_volume(convex_hull([(0, 0), (2, 0), (0, 2)])) == 4
    # shoelace: twice the area of the triangle
    assert normalized_volume(convex_hull([(0, 0), (3, 1), (1, 2)])) == 5
    assert normalized_volume(convex_hull([(4, 4)])) == 1
    assert normalized_volume_in_dim(convex_hull([(4, 4)]), 2) == 0
    assert normalized_volume_in_dim(convex_hull([(0, 0), (1, 0)]), 2) == 0
    with pytest.raises(ValueError):
        normalized_volume_in_dim(standard_simplex(2), 1)


def test_lower_dimensional_volume_uses_induced_lattice():
    # triangle in the plane x + y + z = 1 of Z^3: the standard triangle there
    tri = convex_hull([(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert normalized_volume(tri) == 1
    seg = convex_hull([(0, 0, 0), (2, 2, 2)])
    assert normalized_volume(seg) == 2


@given(points_3d)
@settings(max_examples=80, deadline=None)
def test_volume_matches_float_oracle(points):
    x = convex_hull(points)
    assume(x.is_full_dimensional)
    assert normalized_volume(x) == float_volume(list(x.vertices))


@given(st.integers(0, 10_000), points_3d)
@settings(max_examples=60, deadline=None)
def test_volume_unimodular_invariance(seed, points):
    m = random_unimodular(3, random.Random(seed))
    x = convex_hull(points)
    assert normalized_volume(m.apply_polytope(x)) == normalized_volume(x)


# ---------------------------------------------------------------- frames


def test_hermite_extend_examples():
    frame, m = hermite_extend([(2, 0)])
    assert frame.basis == ((1, 0),)
    assert abs(np.linalg.det(np.array(m.linear, dtype=float))) == pytest.approx(1)
    frame, _ = hermite_extend([(1, 0), (0, 1)])
    assert frame.rank == 2 and frame.coords((3, -4)) == (3, -4)
    frame, _ = hermite_extend([(1, 2), (2, 4)])
    assert frame.basis in (((1, 2),), ((-1, -2),))


def test_project_along_examples():
    square = convex_hull(product((0, 1), repeat=2))
    frame, _ = hermite_extend([(1, 0)])
    assert normalized_volume(project_along(square, frame)) == 1
    assert affine_dim(project_along(convex_hull([(0, 0), (5, 0)]), frame)) == 0
    frame3, _ = hermite_extend([(0, 0, 1)])
    tri = project_along(standard_simplex(3), frame3)
    assert tri.dim == 2 and normalized_volume(tri) == 1 and len(tri.vertices) == 3


def test_restrict_to_examples():
    frame, _ = hermite_extend([(1, 0, 0), (0, 1, 0)])
    tri = restrict_to(convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0)]), frame)
    assert tri == standard_simplex(2)
    seg_frame, _ = hermite_extend([(1, 1, 0)])
    seg = restrict_to(convex_hull([(1, 1, 1), (2, 2, 1)]), seg_frame.with_anchor((1, 1, 1)))
    assert set(seg.vertices) in ({(0,), (1,)}, {(0,), (-1,)})
    point = restrict_to(convex_hull([(1, 1, 1)]), seg_frame.with_anchor((1, 1, 1)))
    assert point.vertices == ((0,),)
    with pytest.raises(ValueError):
        restrict_to(convex_hull([(0, 0, 1)]), seg_frame)


@given(points_3d)
@settings(max_examples=60, deadline=None)
def test_restrict_embed_round_trip(points):
    x = convex_hull(points)
    frame = span_frame(x.vertices)
    local = restrict_to(x, frame)
    assert local.dim == affine_dim(x)
    assert {frame.embed(z) for z in local.vertices} == set(x.vertices)
    assert normalized_volume(local) == normalized_volume(x)


# ---------------------------------------------------------------- containment


def test_contains_translate_examples():
    tri = standard_simplex(2)
    v = contains_translate(tri, convex_hull([(1, 0)]))
    assert v is not None and contains(tri, convex_hull([(1 + v[0], v[1])]))
    assert contains_translate(tri, convex_hull([(0, 0), (2, 0)])) is None
    assert contains_translate(standard_simplex(3), convex_hull([(0, 0, 0), (0, 1, 0), (0, 0, 1)])) == (0, 0, 0)


def test_unimodular_map_algebra():
    m = UnimodularAffineMap(((1, 1), (0, 1)), (2, -1))
    assert m.inverse()(m((3, 5))) == (3, 5)
    assert m.compose(m.inverse()) == UnimodularAffineMap.identity(2)
    with pytest.raises(ValueError):
        UnimodularAffineMap(((2, 0), (0, 1)))


def test_polytope_rejects_bad_points():
    with pytest.raises(ValueError):
        LatticePolytope(2, ((0, 0, 0),))
