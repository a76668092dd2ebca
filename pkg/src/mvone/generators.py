"""Seeded random instances: tuples, unimodular maps and MV-1 systems.

Used by the test suite and by ``mvone selftest``.  Every function takes a
``random.Random`` so runs are reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import List, Tuple

from .essentiality import is_essential, is_linearly_independent
from .lattice import LatticePolytope, Point, UnimodularAffineMap, convex_hull, standard_simplex
from .linalg import identity, mat_mul
from .mixed_volume import PolytopeTuple


def random_unimodular(n: int, rng: random.Random, steps: int = 6, span: int = 2) -> UnimodularAffineMap:
    m = identity(n)
    for _ in range(steps):
        if n == 1:
            break
        i, j = rng.sample(range(n), 2)
        e = identity(n)
        e[i][j] = rng.randint(-span, span)
        m = mat_mul(e, m)
    perm = list(range(n))
    rng.shuffle(perm)
    p = [[int(perm[i] == j) * rng.choice((-1, 1)) for j in range(n)] for i in range(n)]
    m = mat_mul(p, m)
    shift = tuple(rng.randint(-3, 3) for _ in range(n))
    return UnimodularAffineMap(tuple(map(tuple, m)), shift)


def random_tuple(n: int, rng: random.Random, coord_max: int = 3, max_vertices: int = 5) -> PolytopeTuple:
    return PolytopeTuple.from_points(
        [[tuple(rng.randint(0, coord_max) for _ in range(n)) for _ in range(rng.randint(1, max_vertices))]
         for _ in range(n)])


def random_translations(n: int, count: int, rng: random.Random, span: int = 4) -> List[Point]:
    return [tuple(rng.randint(-span, span) for _ in range(n)) for _ in range(count)]


def _face_choice(n: int, rng: random.Random, min_size: int) -> Tuple[int, ...]:
    size = rng.randint(min_size, n + 1)
    return tuple(sorted(rng.sample(range(n + 1), size)))


def random_face_tuple(n: int, rng: random.Random, essential: bool = True,
                      translate: bool = True, max_tries: int = 10_000) -> PolytopeTuple:
    """n faces of a random volume 1 simplex, optionally translated.

    With ``essential`` the tuple is essential; otherwise it is merely linearly
    independent (mixed volume 1 either way).
    """
    simplex = random_unimodular(n, rng).apply_polytope(standard_simplex(n)).vertices
    min_size = 3 if essential and n > 1 else 2
    for _ in range(max_tries):
        faces = [_face_choice(n, rng, min_size) for _ in range(n)]
        tup = PolytopeTuple.of(LatticePolytope(n, tuple(simplex[i] for i in f)) for f in faces)
        ok = is_essential(tup) if essential else is_linearly_independent(tup)
        if ok:
            if translate:
                tup = tup.translate(random_translations(n, n, rng))
            return tup
    raise RuntimeError("could not draw a suitable face tuple")


def dilate(p: LatticePolytope, factor: int) -> LatticePolytope:
    return LatticePolytope(p.dim, tuple(tuple(factor * x for x in v) for v in p.vertices))


def random_mv2_dilated(n: int, rng: random.Random) -> PolytopeTuple:
    """Essential tuple of mixed volume 2: one entry of an MV-1 tuple dilated by 2."""
    tup = random_face_tuple(n, rng, essential=True)
    i = rng.randrange(n)
    entries = list(tup.entries)
    entries[i] = dilate(entries[i], 2)
    return PolytopeTuple.of(entries)


def random_mv2_simplices(n: int, rng: random.Random, max_tries: int = 20_000) -> PolytopeTuple:
    """Essential tuple of volume 1 simplices (of various dimensions) with
    mixed volume 2; every entry passes the per-polytope test, so only the
    lifting can reject it."""
    from .mixed_volume import mixed_volume

    base = standard_simplex(n).vertices
    for _ in range(max_tries):
        entries = []
        for _ in range(n):
            m = random_unimodular(n, rng, steps=rng.randint(0, 2), span=1)
            verts = [m(v) for v in base]
            size = rng.randint(3 if n > 1 else 2, n + 1)
            entries.append(convex_hull(rng.sample(verts, size)))
        tup = PolytopeTuple.of(entries)
        if is_essential(tup) and mixed_volume(tup) == 2:
            return tup
    raise RuntimeError("could not draw an MV-2 tuple of unit simplices")


def random_rational(rng: random.Random, bound: int = 100) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num:
            return Fraction(num, rng.randint(1, bound))


def random_mv1_system(n: int, rng: random.Random, essential: bool = False, bound: int = 100):
    """A Laurent system whose Newton polytopes are faces of one volume 1
    simplex (hence mixed volume 1), with random nonzero rational coefficients.

    Supports include every lattice point of the face, i.e. its vertices.
    """
    from .solver import LaurentPolynomial, LaurentSystem

    supports = random_face_tuple(n, rng, essential=essential)
    polys = []
    for p in supports.entries:
        polys.append(LaurentPolynomial(n, {v: random_rational(rng, bound) for v in p.vertices}))
    return LaurentSystem(n, tuple(polys))
