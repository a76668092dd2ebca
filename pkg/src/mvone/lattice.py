"""Lattice polytopes, sublattice frames and unimodular maps.

All coordinates are Python ints.  Hulls are computed exactly with the double
description method on the homogenized point cone, which yields facets (as
primitive outer normals) and vertices at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from operator import mul
from typing import Iterable, List, Optional, Sequence, Tuple

from .linalg import (
    bareiss_det,
    echelon_transform,
    identity,
    mat_mul,
    mat_vec,
    primitive,
    rank,
    unimodular_inverse,
    vec_gcd,
)

Point = Tuple[int, ...]
Covector = Tuple[int, ...]


def _sub(p: Sequence[int], q: Sequence[int]) -> Point:
    return tuple(a - b for a, b in zip(p, q))


def _add(p: Sequence[int], q: Sequence[int]) -> Point:
    return tuple(a + b for a, b in zip(p, q))


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(map(mul, a, b))


@dataclass(frozen=True)
class Facet:
    normal: Covector  # primitive outer normal
    offset: int  # normal . x <= offset on the polytope
    vertices: Tuple[Point, ...]


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many points of Z^n, stored by its vertices.

    Build instances with :func:`convex_hull`; the constructor trusts that the
    given points are already the extreme points.
    """

    dim: int
    vertices: Tuple[Point, ...]

    def __post_init__(self):
        vs = tuple(sorted(set(tuple(int(x) for x in v) for v in self.vertices)))
        if not vs:
            raise ValueError("a lattice polytope needs at least one vertex")
        if any(len(v) != self.dim for v in vs):
            raise ValueError("vertex length does not match ambient dimension")
        object.__setattr__(self, "vertices", vs)

    def __len__(self):
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    @cached_property
    def affine_dim(self) -> int:
        v0 = self.vertices[0]
        return rank([_sub(v, v0) for v in self.vertices[1:]])

    @property
    def is_full_dimensional(self) -> bool:
        return self.affine_dim == self.dim

    def translate(self, v: Sequence[int]) -> "LatticePolytope":
        return LatticePolytope(self.dim, tuple(_add(p, v) for p in self.vertices))

    def __add__(self, other: "LatticePolytope") -> "LatticePolytope":
        return minkowski_sum(self, other)

    @cached_property
    def facets(self) -> Tuple[Facet, ...]:
        if not self.is_full_dimensional:
            raise ValueError("facets are only defined for full-dimensional polytopes")
        return _facets(self.vertices)

    def __repr__(self):
        return f"LatticePolytope({list(map(list, self.vertices))})"


@dataclass(frozen=True)
class UnimodularAffineMap:
    """``x -> linear @ x + shift`` with ``|det(linear)| = 1``."""

    linear: Tuple[Tuple[int, ...], ...]
    shift: Tuple[int, ...] = None  # type: ignore[assignment]

    def __post_init__(self):
        lin = tuple(tuple(int(x) for x in row) for row in self.linear)
        n = len(lin)
        if any(len(row) != n for row in lin):
            raise ValueError("linear part must be square")
        if abs(bareiss_det(lin)) != 1:
            raise ValueError("linear part is not unimodular")
        shift = (0,) * n if self.shift is None else tuple(int(x) for x in self.shift)
        if len(shift) != n:
            raise ValueError("shift has the wrong length")
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "shift", shift)

    @property
    def dim(self) -> int:
        return len(self.linear)

    @classmethod
    def identity(cls, n: int) -> "UnimodularAffineMap":
        return cls(tuple(map(tuple, identity(n))))

    def __call__(self, x: Sequence[int]) -> Point:
        return _add(mat_vec(self.linear, x), self.shift)

    def apply_linear(self, x: Sequence[int]) -> Point:
        return mat_vec(self.linear, x)

    def apply_polytope(self, p: LatticePolytope) -> LatticePolytope:
        return LatticePolytope(p.dim, tuple(self(v) for v in p.vertices))

    def compose(self, other: "UnimodularAffineMap") -> "UnimodularAffineMap":
        """``self o other``."""
        lin = mat_mul(self.linear, other.linear)
        return UnimodularAffineMap(tuple(map(tuple, lin)), self(other.shift))

    def inverse(self) -> "UnimodularAffineMap":
        inv = unimodular_inverse(self.linear)
        return UnimodularAffineMap(
            tuple(map(tuple, inv)), tuple(-x for x in mat_vec(inv, self.shift))
        )


@dataclass(frozen=True)
class SublatticeFrame:
    """A saturated rank-k sublattice of Z^n together with an anchor point.

    ``transform`` is a unimodular matrix sending ``basis[j]`` to ``e_j``; its
    first ``k`` rows give coordinates inside the sublattice and the remaining
    rows give coordinates of the quotient lattice.
    """

    ambient_dim: int
    basis: Tuple[Point, ...]
    anchor: Point
    transform: Tuple[Tuple[int, ...], ...] = field(repr=False)
    transform_inv: Tuple[Tuple[int, ...], ...] = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def split(self, x: Sequence[int]) -> Tuple[Point, Point]:
        """Coordinates of ``x - anchor``: (inside the frame, in the quotient)."""
        y = mat_vec(self.transform, _sub(x, self.anchor))
        return y[: self.rank], y[self.rank:]

    def coords(self, x: Sequence[int]) -> Point:
        inside, outside = self.split(x)
        if any(outside):
            raise ValueError(f"point {tuple(x)} is not in the affine sublattice")
        return inside

    def embed(self, z: Sequence[int]) -> Point:
        full = tuple(z) + (0,) * (self.ambient_dim - self.rank)
        return _add(mat_vec(self.transform_inv, full), self.anchor)

    def quotient(self, x: Sequence[int]) -> Point:
        return mat_vec(self.transform[self.rank:], x)

    def lift_quotient(self, q: Sequence[int]) -> Point:
        """A lattice point whose quotient coordinates are ``q``."""
        full = (0,) * self.rank + tuple(q)
        return mat_vec(self.transform_inv, full)

    def with_anchor(self, anchor: Sequence[int]) -> "SublatticeFrame":
        return SublatticeFrame(self.ambient_dim, self.basis, tuple(anchor),
                               self.transform, self.transform_inv)

    def to_map(self) -> UnimodularAffineMap:
        """The unimodular affine map ``x -> transform @ (x - anchor)``."""
        shift = tuple(-c for c in mat_vec(self.transform, self.anchor))
        return UnimodularAffineMap(self.transform, shift)


def hermite_extend(vectors: Sequence[Sequence[int]], n: Optional[int] = None):
    """Saturate the span of ``vectors`` and complete it to a basis of Z^n.

    Returns ``(frame, map)`` where ``map`` is linear, unimodular and carries
    the saturated span onto the first ``k`` coordinate axes.
    """
    vectors = [tuple(v) for v in vectors]
    if n is None:
        if not vectors:
            raise ValueError("ambient dimension needed for an empty vector list")
        n = len(vectors[0])
    if vectors:
        cols = [list(row) for row in zip(*vectors)]
    else:
        cols = [[] for _ in range(n)]
    _, w, winv, r = echelon_transform(cols)
    basis = tuple(tuple(winv[i][j] for i in range(n)) for j in range(r))
    frame = SublatticeFrame(n, basis, (0,) * n,
                            tuple(map(tuple, w)), tuple(map(tuple, winv)))
    return frame, UnimodularAffineMap(tuple(map(tuple, w)))


def span_frame(points: Sequence[Sequence[int]]) -> SublatticeFrame:
    """Frame of the affine lattice spanned by ``points``, anchored at the first."""
    p0 = tuple(points[0])
    frame, _ = hermite_extend([_sub(p, p0) for p in points[1:]], len(p0))
    return frame.with_anchor(p0)


def covector_complement(alpha: Covector) -> List[List[int]]:
    """Rows ``K`` such that ``[alpha; K]`` is unimodular.

    ``x -> K x`` identifies every hyperplane ``alpha . x = c`` with Z^{n-1}.
    """
    n = len(alpha)
    _, _, winv, r = echelon_transform([[a] for a in alpha])
    if r != 1 or vec_gcd(alpha) != 1:
        raise ValueError("covector must be primitive and nonzero")
    return [[winv[i][j] for i in range(n)] for j in range(1, n)]


# ---------------------------------------------------------------- hulls


def _facets_full(points: Tuple[Point, ...]) -> List[Tuple[Covector, int, List[int]]]:
    """Facets of a full-dimensional point set by double description.

    Rays ``y = (b, a)`` of the cone ``{y : b + a.p >= 0 for all p}`` are the
    facet inequalities; the outer normal is ``-a``.  Each facet comes with the
    indices of the points lying on it.
    """
    n = len(points[0])
    dim = n + 1
    cons = [(1,) + p for p in points]

    # greedy affinely independent start
    chosen: List[int] = []
    for i, c in enumerate(cons):
        if rank([cons[j] for j in chosen] + [c]) > len(chosen):
            chosen.append(i)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise ValueError("point set is not full-dimensional")
    base = [list(cons[i]) for i in chosen]
    # columns of the adjugate are the initial rays
    det = bareiss_det(base)
    rays = []
    for j in range(dim):
        col = []
        for i in range(dim):
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(base) if k != j]
            col.append((-1) ** (i + j) * bareiss_det(minor))
        rays.append(primitive(tuple(x if det > 0 else -x for x in col)))
    # bit b of a mask <=> constraint order[b] is tight on the ray
    masks = [sum(1 << b for b in range(dim) if b != j) for j in range(dim)]
    order = list(chosen)
    taken = set(chosen)
    need = dim - 2
    for ci in range(len(cons)):
        if ci in taken:
            continue
        c = cons[ci]
        bit = 1 << len(order)
        order.append(ci)
        vals = [sum(map(mul, c, r)) for r in rays]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            for k, v in enumerate(vals):
                if v == 0:
                    masks[k] |= bit
            continue
        pos = [k for k, v in enumerate(vals) if v > 0]
        new_rays = []
        new_masks = []
        for k, v in enumerate(vals):
            if v > 0:
                new_rays.append(rays[k])
                new_masks.append(masks[k])
            elif v == 0:
                new_rays.append(rays[k])
                new_masks.append(masks[k] | bit)
        nmasks = len(masks)
        for p in pos:
            mp = masks[p]
            for q in neg:
                common = mp & masks[q]
                if common.bit_count() < need:
                    continue
                for k in range(nmasks):
                    if k != p and k != q and masks[k] & common == common:
                        break
                else:
                    vp, vq = vals[p], vals[q]
                    new_rays.append(primitive(
                        tuple(vp * b - vq * a for a, b in zip(rays[p], rays[q]))))
                    new_masks.append(common | bit)
        rays, masks = new_rays, new_masks
    out = []
    for ray, m in zip(rays, masks):
        b, a = ray[0], ray[1:]
        g = vec_gcd(a)
        tight = sorted(order[i] for i in range(len(order)) if m >> i & 1)
        out.append((tuple(-x // g for x in a), b // g, tight))
    return out


@lru_cache(maxsize=8192)
def _hull(points: Tuple[Point, ...]):
    """(vertices, facets) of a finite point set; facets only if full-dim."""
    n = len(points[0])
    if len(points) == 1:
        return points, None
    frame = span_frame(points)
    d = frame.rank
    if d == 0:
        return points[:1], None
    if d < n:
        local = tuple(frame.coords(p) for p in points)
        back = dict(zip(local, points))
        lverts, _ = _hull(tuple(sorted(set(local))))
        return tuple(sorted(back[v] for v in lverts)), None
    if d == 1:
        # n == 1
        lo, hi = min(points), max(points)
        return (lo, hi), (((-1,), -lo[0], (lo,)), ((1,), hi[0], (hi,)))
    raw = _facets_full(points)
    tight = [t for _, _, t in raw]
    pmask = [0] * len(points)
    for fi, idx in enumerate(tight):
        for i in idx:
            pmask[i] |= 1 << fi
    verts = []
    for i, m in enumerate(pmask):
        if m == 0:
            continue
        if any(j != i and (pmask[j] & m) == m for j in range(len(points))):
            continue
        verts.append(points[i])
    vset = set(verts)
    facets = tuple(
        (normal, off, tuple(points[i] for i in idx if points[i] in vset))
        for normal, off, idx in raw
    )
    return tuple(sorted(verts)), facets


def _canonical_points(points: Iterable[Sequence[int]]) -> Tuple[Point, ...]:
    pts = tuple(sorted(set(tuple(int(x) for x in p) for p in points)))
    if not pts:
        raise ValueError("convex hull of an empty point set")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points have mixed dimensions")
    return pts


def _facets(vertices: Tuple[Point, ...]) -> Tuple[Facet, ...]:
    _, facets = _hull(vertices)
    return tuple(Facet(nrm, off, vs) for nrm, off, vs in facets)


def convex_hull(points: Iterable[Sequence[int]]) -> LatticePolytope:
    """The lattice polytope spanned by ``points`` (extreme points only)."""
    pts = _canonical_points(points)
    verts, _ = _hull(pts)
    return LatticePolytope(len(pts[0]), verts)


def facet_normals(x: LatticePolytope) -> List[Covector]:
    """Primitive outer facet normals of a full-dimensional polytope."""
    if not x.is_full_dimensional:
        raise ValueError("facet normals need a full-dimensional polytope")
    return [f.normal for f in x.facets]


def support(x: LatticePolytope, alpha: Sequence[int]) -> int:
    """max over x of the linear functional alpha."""
    if len(alpha) != x.dim:
        raise ValueError("covector and polytope dimensions differ")
    return max(_dot(alpha, v) for v in x.vertices)


def face(x: LatticePolytope, alpha: Sequence[int]) -> LatticePolytope:
    """The face of x on which alpha attains its maximum."""
    h = support(x, alpha)
    return LatticePolytope(x.dim, tuple(v for v in x.vertices if _dot(alpha, v) == h))


def minkowski_sum(x: LatticePolytope, y: LatticePolytope) -> LatticePolytope:
    if x.dim != y.dim:
        raise ValueError("Minkowski sum of polytopes in different dimensions")
    return convex_hull(_add(a, b) for a in x.vertices for b in y.vertices)


def minkowski_sum_all(polys: Sequence[LatticePolytope]) -> LatticePolytope:
    acc = polys[0]
    for p in polys[1:]:
        acc = minkowski_sum(acc, p)
    return acc


def affine_dim(x: LatticePolytope) -> int:
    return x.affine_dim


def sum_affine_dim(polys: Sequence[LatticePolytope]) -> int:
    """Dimension of the Minkowski sum, without building it."""
    diffs = []
    for p in polys:
        v0 = p.vertices[0]
        diffs.extend(_sub(v, v0) for v in p.vertices[1:])
    return rank(diffs)


@lru_cache(maxsize=8192)
def _volume_full(vertices: Tuple[Point, ...]) -> int:
    """Normalized volume of a full-dimensional polytope by pulling from its
    lexicographically least vertex: sum of lattice height times facet volume."""
    n = len(vertices[0])
    if n == 1:
        return vertices[-1][0] - vertices[0][0]
    if len(vertices) == n + 1:
        v0 = vertices[0]
        return abs(bareiss_det([_sub(v, v0) for v in vertices[1:]]))
    v0 = vertices[0]
    total = 0
    for normal, off, fverts in _hull(vertices)[1]:
        height = off - _dot(normal, v0)
        if height == 0:
            continue
        total += height * _volume_in_span(fverts)
    return total


def _volume_in_span(points: Tuple[Point, ...]) -> int:
    frame = span_frame(points)
    if frame.rank == 0:
        return 1
    local = tuple(sorted(frame.coords(p) for p in points))
    verts, _ = _hull(local)
    return _volume_full(verts)


def normalized_volume(x: LatticePolytope) -> int:
    """Lattice-normalized volume of x inside the lattice of its affine span.

    A unimodular simplex of any dimension has volume 1, a lattice segment its
    lattice length, and a point volume 1 (the 0-dimensional convention).
    """
    return _volume_in_span(x.vertices)


def normalized_volume_in_dim(x: LatticePolytope, d: int) -> int:
    """d-dimensional normalized volume; 0 when x has dimension below d."""
    ad = x.affine_dim
    if ad < d:
        return 0
    if ad > d:
        raise ValueError(f"polytope has dimension {ad} > {d}")
    return normalized_volume(x)


def project_along(x: LatticePolytope, frame: SublatticeFrame) -> LatticePolytope:
    """Image of x in Z^n / U, in the frame's quotient coordinates."""
    if x.dim != frame.ambient_dim:
        raise ValueError("frame and polytope dimensions differ")
    return convex_hull(frame.quotient(v) for v in x.vertices)


def restrict_to(x: LatticePolytope, frame: SublatticeFrame) -> LatticePolytope:
    """x expressed in the Z^k coordinates of an affine sublattice containing it."""
    if x.dim != frame.ambient_dim:
        raise ValueError("frame and polytope dimensions differ")
    return LatticePolytope(frame.rank, tuple(frame.coords(v) for v in x.vertices))


def simplex_facets(s: LatticePolytope) -> List[Tuple[Covector, int]]:
    """(normal, offset) pairs of a full-dimensional simplex."""
    return [(f.normal, f.offset) for f in s.facets]


def contains(x: LatticePolytope, y: LatticePolytope) -> bool:
    """Whether y is a subset of x."""
    if x.affine_dim < x.dim:
        frame = span_frame(x.vertices)
        try:
            return contains(restrict_to(x, frame), restrict_to(y, frame))
        except ValueError:
            return False
    return all(support(y, f.normal) <= f.offset for f in x.facets)


def contains_translate(x: LatticePolytope, y: LatticePolytope) -> Optional[Point]:
    """Some integer v with y + v inside x, or None.

    Any such v sends the first vertex of y to a lattice point of x, so those
    are the only candidates.
    """
    if x.dim != y.dim:
        raise ValueError("dimensions differ")
    y0 = y.vertices[0]
    for p in lattice_points(x):
        v = _sub(p, y0)
        if contains(x, y.translate(v)):
            return v
    return None


def lattice_points(x: LatticePolytope) -> List[Point]:
    """All lattice points of x (box scan filtered by the facet inequalities)."""
    if x.affine_dim < x.dim:
        frame = span_frame(x.vertices)
        return [frame.embed(z) for z in lattice_points(restrict_to(x, frame))]
    if x.dim == 0:
        return [x.vertices[0]]
    lo = [min(v[i] for v in x.vertices) for i in range(x.dim)]
    hi = [max(v[i] for v in x.vertices) for i in range(x.dim)]
    fs = x.facets
    return [p for p in product(*(range(a, b + 1) for a, b in zip(lo, hi)))
            if all(_dot(f.normal, p) <= f.offset for f in fs)]


def standard_simplex(n: int) -> LatticePolytope:
    pts = [(0,) * n] + [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return LatticePolytope(n, tuple(pts))


def is_unit_simplex(x: LatticePolytope) -> bool:
    """Whether x is a volume 1 lattice simplex of its own dimension."""
    return len(x.vertices) == x.affine_dim + 1 and normalized_volume(x) == 1
