"""Lattice mixed volume of n polytopes in Z^n.

The main routine expands along the first polytope over the facet normals of
the sum of the others and recurses on the faces in one dimension lower.  The
polarization formula is kept alongside as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import factorial
from operator import mul
from typing import Iterable, Sequence, Tuple

from .lattice import (
    LatticePolytope,
    Point,
    SublatticeFrame,
    _hull,
    convex_hull,
    covector_complement,
    facet_normals,
    minkowski_sum_all,
    normalized_volume_in_dim,
    project_along,
    restrict_to,
    span_frame,
)
from .linalg import mat_vec


@dataclass(frozen=True)
class PolytopeTuple:
    """An ordered tuple of lattice polytopes sharing one ambient lattice."""

    dim: int
    entries: Tuple[LatticePolytope, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if any(p.dim != self.dim for p in entries):
            raise ValueError("all polytopes of a tuple must share the ambient dimension")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, polys: Iterable[LatticePolytope]) -> "PolytopeTuple":
        polys = tuple(polys)
        if not polys:
            raise ValueError("use PolytopeTuple(dim, ()) for an empty tuple")
        return cls(polys[0].dim, polys)

    @classmethod
    def from_points(cls, point_lists: Iterable[Iterable[Sequence[int]]]) -> "PolytopeTuple":
        return cls.of(convex_hull(pts) for pts in point_lists)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def subtuple(self, indices: Iterable[int]) -> "PolytopeTuple":
        return PolytopeTuple(self.dim, tuple(self.entries[i] for i in indices))

    def minkowski_sum(self) -> LatticePolytope:
        return minkowski_sum_all(self.entries)

    def translate(self, shifts: Sequence[Sequence[int]]) -> "PolytopeTuple":
        return PolytopeTuple(self.dim, tuple(p.translate(v) for p, v in zip(self.entries, shifts)))


def _normalize(vertices: Tuple[Point, ...]) -> Tuple[Point, ...]:
    v0 = vertices[0]
    return tuple(tuple(a - b for a, b in zip(v, v0)) for v in vertices)


def _dot(a, b):
    return sum(map(mul, a, b))


def _canonical(polys: Iterable[Tuple[Point, ...]]) -> Tuple[Tuple[Point, ...], ...]:
    # translation-normalized, sorted by vertex count descending
    return tuple(sorted((_normalize(p) for p in polys), key=lambda p: (-len(p), p)))


@lru_cache(maxsize=65536)
def _mv(polys: Tuple[Tuple[Point, ...], ...]) -> int:
    n = len(polys)
    if n == 0:
        return 1
    if any(len(p) == 1 for p in polys):
        return 0
    if n == 1:
        return polys[0][-1][0] - polys[0][0][0]
    first, rest = polys[0], polys[1:]
    points = {(0,) * n}
    for p in rest:
        points = {tuple(a + b for a, b in zip(s, v)) for s in points for v in p}
        points = set(_hull(tuple(sorted(points)))[0])
    total_sum = tuple(sorted(points))
    frame = span_frame(total_sum)
    d = frame.rank
    if d < n - 1:
        return 0
    if d == n - 1:
        beta = frame.transform[n - 1]
        values = [_dot(beta, v) for v in first]
        width = max(values) - min(values)
        if width == 0:
            return 0
        k = covector_complement(beta)
        return width * _mv(_canonical(tuple(sorted(set(mat_vec(k, v) for v in p))) for p in rest))
    # put a vertex of `first` at the origin so every support value is >= 0;
    # pick the one that zeroes the most terms
    facets = _hull(total_sum)[1]
    best = None
    for v0 in first:
        vals = [max(_dot(f[0], v) for v in first) - _dot(f[0], v0) for f in facets]
        zeros = vals.count(0)
        if best is None or zeros > best[0]:
            best = (zeros, vals)
    total = 0
    for (normal, _off, _verts), weight in zip(facets, best[1]):
        if weight == 0:
            continue
        k = covector_complement(normal)
        faces = []
        for p in rest:
            h = max(_dot(normal, v) for v in p)
            faces.append(tuple(sorted(set(mat_vec(k, v) for v in p if _dot(normal, v) == h))))
        total += weight * _mv(_canonical(faces))
    return total


def mixed_volume(a: PolytopeTuple) -> int:
    """Normalized mixed volume of an n-tuple in Z^n (unit simplex -> 1)."""
    if len(a) != a.dim:
        raise ValueError(f"mixed volume needs {a.dim} polytopes, got {len(a)}")
    return _mv(_canonical(p.vertices for p in a.entries))


def mixed_volume_oracle(a: PolytopeTuple) -> int:
    """Mixed volume by inclusion-exclusion over normalized volumes of sums."""
    n = len(a)
    if n != a.dim:
        raise ValueError(f"mixed volume needs {a.dim} polytopes, got {n}")
    total = 0
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in combinations(range(n), size):
            s = minkowski_sum_all([a.entries[i] for i in subset])
            total += sign * normalized_volume_in_dim(s, n)
    q, r = divmod(total, factorial(n))
    assert r == 0, "polarization sum not divisible by n!"
    return q


def mixed_volume_product_check(a: PolytopeTuple, frame: SublatticeFrame, k: int | None = None):
    """Both sides of the product formula for a tuple whose first k entries lie
    in translates of the frame's sublattice.

    Returns ``(MV(a), MV(first k inside the frame), MV(projections of the rest))``.
    """
    k = frame.rank if k is None else k
    if k != frame.rank:
        raise ValueError("number of entries inside the frame must equal its rank")
    inside = []
    for p in a.entries[:k]:
        local = frame.with_anchor(p.vertices[0])
        inside.append(restrict_to(p, local))
    outside = [project_along(p, frame) for p in a.entries[k:]]
    whole = mixed_volume(a)
    first = mixed_volume(PolytopeTuple(k, tuple(inside))) if k else 1
    second = mixed_volume(PolytopeTuple(a.dim - k, tuple(outside))) if k < a.dim else 1
    return whole, first, second


__all__ = [
    "PolytopeTuple",
    "facet_normals",
    "mixed_volume",
    "mixed_volume_oracle",
    "mixed_volume_product_check",
]
