import random
from fractions import Fraction

import pytest

from mvone.lattice import convex_hull, standard_simplex
from mvone.mixed_volume import PolytopeTuple
from mvone.solver import LaurentPolynomial, LaurentSystem


def unit(n, i):
    return tuple(int(j == i) for j in range(n))


def tup(*point_lists):
    return PolytopeTuple.from_points(point_lists)


def copies_of_simplex(n):
    s = standard_simplex(n)
    return PolytopeTuple(n, (s,) * n)


def shifted_triangles(a):
    """(0,e1,e2), (0,e2,e3), (a, a+e3, a+e1) in Z^3."""
    e1, e2, e3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    add = lambda p, q: tuple(x + y for x, y in zip(p, q))
    return tup([(0, 0, 0), e1, e2], [(0, 0, 0), e2, e3], [a, add(a, e3), add(a, e1)])


SIX_TRIANGLES = ("012", "034", "056", "136", "145", "246")


def six_triangles():
    verts = [(0,) * 6] + [unit(6, i) for i in range(6)]
    return PolytopeTuple.of(convex_hull([verts[int(c)] for c in tri]) for tri in SIX_TRIANGLES)


def two_equation_system(a, b, f, g):
    """a + b*x*y = 0 and f(xy) + y*g(xy) = 0 with f, g given as coefficient lists."""
    first = LaurentPolynomial(2, {(0, 0): a, (1, 1): b})
    terms = {}
    for d, c in enumerate(f):
        terms[(d, d)] = terms.get((d, d), 0) + Fraction(c)
    for d, c in enumerate(g):
        terms[(d, d + 1)] = terms.get((d, d + 1), 0) + Fraction(c)
    return LaurentSystem(2, (first, LaurentPolynomial(2, terms)))


@pytest.fixture
def rng():
    return random.Random(20240611)
