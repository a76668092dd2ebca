import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import copies_of_simplex, six_triangles, tup
from mvone.essentiality import is_linearly_independent
from mvone.generators import random_translations, random_tuple, random_unimodular
from mvone.lattice import convex_hull, hermite_extend, minkowski_sum, normalized_volume, standard_simplex
from mvone.mixed_volume import (
    PolytopeTuple,
    facet_normals,
    mixed_volume,
    mixed_volume_oracle,
    mixed_volume_product_check,
)


def tuples(n):
    return st.integers(0, 10**6).map(lambda s: random_tuple(n, random.Random(s)))


any_tuple = st.sampled_from([2, 3, 4]).flatmap(tuples)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_copies_of_simplex(n):
    assert mixed_volume(copies_of_simplex(n)) == 1
    if n <= 4:
        assert mixed_volume_oracle(copies_of_simplex(n)) == 1


def test_two_unit_segments():
    a = tup([(0, 0), (1, 0)], [(0, 0), (0, 1)])
    assert mixed_volume(a) == 1
    # square has volume 2, each segment 0: (2 - 0 - 0) / 2!
    assert mixed_volume_oracle(a) == 1


def test_six_triangles_have_mixed_volume_one():
    assert mixed_volume(six_triangles()) == 1


def test_parallel_segments_vanish():
    a = tup([(0, 0), (1, 0)], [(0, 0), (1, 0)])
    assert mixed_volume(a) == 0 == mixed_volume_oracle(a)


def test_point_entry_vanishes():
    a = tup([(0, 0, 0), (2, 1, 0), (0, 3, 1)], [(1, 1, 1)], [(0, 0, 0), (0, 0, 1), (1, 1, 1)])
    assert mixed_volume(a) == 0 == mixed_volume_oracle(a)


def test_wrong_length_rejected():
    with pytest.raises(ValueError):
        mixed_volume(PolytopeTuple(3, (standard_simplex(3),)))
    with pytest.raises(ValueError):
        mixed_volume_oracle(PolytopeTuple(3, (standard_simplex(3),)))


def test_equal_entries_give_volume():
    p = convex_hull([(0, 0, 0), (2, 0, 0), (0, 3, 0), (0, 0, 1), (1, 1, 1)])
    assert mixed_volume(PolytopeTuple(3, (p, p, p))) == normalized_volume(p)


def test_facet_normal_examples():
    assert set(facet_normals(standard_simplex(2))) == {(-1, 0), (0, -1), (1, 1)}
    square = convex_hull([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert set(facet_normals(square)) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    normals = facet_normals(convex_hull([(0, 0), (2, 1), (1, 2)]))
    assert set(normals) == {(1, -2), (-2, 1), (1, 1)}
    with pytest.raises(ValueError):
        facet_normals(convex_hull([(0, 0), (1, 1)]))


@given(any_tuple)
@settings(max_examples=80, deadline=None)
def test_matches_oracle(a):
    assert mixed_volume(a) == mixed_volume_oracle(a)


@given(st.sampled_from([2, 3, 4]).flatmap(tuples))
@settings(max_examples=20, deadline=None)
def test_symmetric(a):
    value = mixed_volume(a)
    for perm in permutations(range(a.dim)):
        assert mixed_volume(a.subtuple(perm)) == value


@given(any_tuple, st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_translation_invariant(a, seed):
    shifts = random_translations(a.dim, a.dim, random.Random(seed))
    assert mixed_volume(a.translate(shifts)) == mixed_volume(a)


@given(st.sampled_from([2, 3]).flatmap(lambda n: st.tuples(tuples(n), tuples(n))))
@settings(max_examples=50, deadline=None)
def test_multilinear_in_first_slot(pair):
    a, b = pair
    rest = a.entries[1:]
    s = minkowski_sum(a.entries[0], b.entries[0])
    left = mixed_volume(PolytopeTuple.of((s,) + rest))
    right = mixed_volume(a) + mixed_volume(PolytopeTuple.of((b.entries[0],) + rest))
    assert left == right


@given(any_tuple, st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_monotone(a, seed):
    rng = random.Random(seed)
    bigger = []
    for p in a.entries:
        extra = [tuple(rng.randint(-1, 4) for _ in range(a.dim)) for _ in range(rng.randint(0, 2))]
        bigger.append(convex_hull(list(p.vertices) + extra))
    assert mixed_volume(a) <= mixed_volume(PolytopeTuple.of(bigger))


@given(any_tuple, st.integers(0, 10**6))
@settings(max_examples=50, deadline=None)
def test_unimodular_invariant(a, seed):
    m = random_unimodular(a.dim, random.Random(seed))
    assert mixed_volume(PolytopeTuple.of(m.apply_polytope(p) for p in a.entries)) == mixed_volume(a)


@given(any_tuple)
@settings(max_examples=80, deadline=None)
def test_zero_iff_dependent(a):
    assert (mixed_volume(a) == 0) == (not is_linearly_independent(a))


def test_product_check_examples():
    frame, _ = hermite_extend([(1, 0)])
    a = tup([(0, 0), (1, 0)], [(0, 0), (1, 0), (0, 1)])
    assert mixed_volume_product_check(a, frame) == (1, 1, 1)
    b = tup([(2, 5)], [(0, 0), (1, 0), (0, 1)])
    whole, inside, _ = mixed_volume_product_check(b, frame)
    assert whole == inside == 0


@given(st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_product_check_random(seed):
    rng = random.Random(seed)
    rest = random_tuple(3, rng)
    length = rng.randint(1, 3)
    start = tuple(rng.randint(-2, 2) for _ in range(3))
    seg = convex_hull([start, (start[0] + length,) + start[1:]])
    a = PolytopeTuple.of((seg,) + rest.entries[1:])
    frame, _ = hermite_extend([(1, 0, 0)])
    whole, inside, outside = mixed_volume_product_check(a, frame)
    assert inside == length
    assert whole == inside * outside
    assert whole == mixed_volume_oracle(a)
