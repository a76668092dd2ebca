"""Certificates that a tuple of lattice polytopes has mixed volume 1.

An essential n-tuple has mixed volume 1 exactly when its polytopes can be
translated into one volume 1 lattice simplex.  :func:`certify_unit` finds the
translations by projecting along an edge of the first polytope, certifying
the projected tuple recursively and lifting the answer back one fiber at a
time.  :func:`decompose_theorem1` handles tuples that are not essential by
peeling off minimal critical subtuples and projecting the rest.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import List, Optional, Sequence, Tuple

from .errors import (
    NoLift,
    NotEssential,
    NotMixedVolumeOne,
    ZeroMixedVolume,
)
from .essentiality import is_essential, maximal_essential_subtuple
from .lattice import (
    LatticePolytope,
    Point,
    SublatticeFrame,
    _add,
    _hull,
    _sub,
    contains,
    hermite_extend,
    is_unit_simplex,
    normalized_volume,
    project_along,
    restrict_to,
)
from .linalg import bareiss_det, mat_vec, transpose, unimodular_inverse
from .mixed_volume import PolytopeTuple

log = logging.getLogger(__name__)

Piece = Tuple[Point, ...]


@dataclass(frozen=True)
class UnitCertificate:
    """Translations putting every entry into one volume 1 simplex."""

    translations: Tuple[Point, ...]
    simplex: LatticePolytope


@dataclass(frozen=True)
class DecompositionStep:
    indices: Tuple[int, ...]  # positions in the original tuple
    frame: SublatticeFrame  # saturated span U, in the coordinates of this stage
    anchors: Tuple[Point, ...]  # per entry: the point mapped to 0 when restricting
    certificate: UnitCertificate  # in the k coordinates of U
    quotient_tuple: Tuple[LatticePolytope, ...]  # remaining entries projected to V/U


@dataclass(frozen=True)
class Theorem1Decomposition:
    steps: Tuple[DecompositionStep, ...]

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(len(s.indices) for s in self.steps)


# ---------------------------------------------------------------- lifting


def _standard_vertex(z: Sequence[int]) -> Optional[int]:
    """Index of z among 0, e_1, ..., e_m, or None."""
    nonzero = [i for i, x in enumerate(z) if x]
    if not nonzero:
        return 0
    if len(nonzero) == 1 and z[nonzero[0]] == 1:
        return nonzero[0] + 1
    return None


def _try_vertex(fixed: Sequence[Piece], free: Sequence[Piece], k: int, m: int):
    heights: dict = {}

    def place(piece: Piece, c: int) -> bool:
        for p in piece:
            base = _standard_vertex(p[:m])
            if base is None:
                return False
            heights.setdefault(base, set()).add(p[m] + c)
            hs = heights[base]
            if base != k and len(hs) > 1:
                return False
            if base == k and max(hs) - min(hs) > 1:
                return False
        return True

    for piece in fixed:
        if not place(piece, 0):
            return None
    cs: List[Optional[int]] = [None] * len(free)
    if not fixed and free:
        if not place(free[0], 0):
            return None
        cs[0] = 0
    while any(c is None for c in cs):
        progress = False
        for i, piece in enumerate(free):
            if cs[i] is not None:
                continue
            c = None
            for p in piece:
                base = _standard_vertex(p[:m])
                if base is not None and base != k and base in heights:
                    over = [q for q in piece if q[:m] == p[:m]]
                    if len(over) != 1:
                        return None
                    c = next(iter(heights[base])) - p[m]
                    break
            if c is None:
                continue
            if not place(piece, c):
                return None
            cs[i] = c
            progress = True
        if not progress:
            # pieces seen only over the vertical line: align bottoms
            for i, piece in enumerate(free):
                if cs[i] is None and k in heights and all(
                        _standard_vertex(p[:m]) == k for p in piece):
                    c = min(heights[k]) - min(p[m] for p in piece)
                    if not place(piece, c):
                        return None
                    cs[i] = c
                    progress = True
                    break
        if not progress:
            return None
    if set(heights) != set(range(m + 1)) or len(heights[k]) != 2:
        return None
    verts = []
    for base in range(m + 1):
        z = tuple(int(base == i + 1) for i in range(m))
        verts.extend(z + (h,) for h in sorted(heights[base]))
    v0 = verts[0]
    if abs(bareiss_det([_sub(v, v0) for v in verts[1:]])) != 1:
        return None
    return [int(c) for c in cs], tuple(sorted(verts))


def lift_translations(free: Sequence[Sequence[Sequence[int]]],
                      fixed: Sequence[Sequence[Sequence[int]]] = ()):
    """Fiber shifts putting lifted pieces into one volume 1 simplex.

    Points live in Z^m + Z with the fiber as the last coordinate, and every
    piece projects into the standard simplex of Z^m.  For each vertex v_k of
    that simplex we look for a simplex whose vertical edge sits over v_k:
    pieces are chained through shared vertices other than v_k, each shift
    fixed by matching heights, and the union is checked to be the vertex set
    of a volume 1 simplex.  With no ``fixed`` pieces the first free piece is
    the reference and gets shift 0.

    Returns ``(shifts, simplex_vertices)``; raises :class:`NoLift`.
    """
    free = [tuple(map(tuple, p)) for p in free]
    fixed = [tuple(map(tuple, p)) for p in fixed]
    sample = (free or fixed)[0][0]
    m = len(sample) - 1
    for k in range(m + 1):
        res = _try_vertex(fixed, free, k, m)
        if res is not None:
            return res
    raise NoLift("no vertex of the base simplex admits a lift")


# ---------------------------------------------------------------- certifying


class _Normalizer:
    """Unimodular affine identification of a unit simplex with the standard one."""

    def __init__(self, simplex: Sequence[Point]):
        verts = sorted(simplex)
        self.t0 = verts[0]
        cols = [_sub(v, self.t0) for v in verts[1:]]
        self.matrix = transpose(cols) if cols else []
        self.inv = unimodular_inverse(self.matrix) if cols else []

    def forward(self, z: Sequence[int]) -> Point:
        return mat_vec(self.inv, _sub(z, self.t0)) if self.inv else ()

    def backward(self, y: Sequence[int]) -> Point:
        return _add(mat_vec(self.matrix, y), self.t0) if self.matrix else self.t0


def _hull_vertices(points) -> Piece:
    return _hull(tuple(sorted(set(points))))[0]


def _minimal_critical(polys: Sequence[Piece], dim: int) -> List[Tuple[int, ...]]:
    """Inclusion-minimal proper subsets I with dim of the sum equal to |I|."""
    from .lattice import sum_affine_dim

    k = len(polys)
    found: List[Tuple[int, ...]] = []
    lp = [LatticePolytope(dim, p) for p in polys]
    for size in range(1, k):
        for subset in combinations(range(k), size):
            if any(set(f) <= set(subset) for f in found):
                continue
            if sum_affine_dim([lp[i] for i in subset]) == size:
                found.append(subset)
    return found


def _check_entries(entries: Sequence[Piece], n: int):
    for i, p in enumerate(entries):
        if not is_unit_simplex(LatticePolytope(n, p)):
            raise NotMixedVolumeOne(
                "entry", f"polytope {i} is not a volume 1 simplex, so it fits in no volume 1 simplex")


def _certify(entries: List[Piece], n: int, edge: Optional[Tuple[int, int]] = None):
    """Translations and simplex for an essential n-tuple of vertex sets."""
    _check_entries(entries, n)
    if n == 1:
        return [(-p[0][0],) for p in entries], ((0,), (1,))
    a1 = entries[0]
    i, j = edge if edge is not None else (0, 1)
    e_lo, e_hi = a1[i], a1[j]
    direction = _sub(e_hi, e_lo)
    fiber_frame, _ = hermite_extend([direction])
    fiber_row = fiber_frame.transform[0]

    def proj(x):
        return fiber_frame.quotient(x)

    def fiber(x):
        return sum(a * b for a, b in zip(fiber_row, x))

    def lift(q):
        return fiber_frame.lift_quotient(q)

    b = [_hull_vertices(proj(v) for v in p) for p in entries[1:]]
    critical = _minimal_critical(b, n - 1)
    used = [i for group in critical for i in group]
    if len(used) != len(set(used)):
        raise RuntimeError(f"minimal critical subtuples overlap: {critical}")
    log.debug("n=%d edge=%s critical=%s", n, (e_lo, e_hi), critical)

    v = [None] * n  # translations, v[0] stays 0
    v[0] = (0,) * n
    simplices = []
    for group in critical:
        sub = [b[g] for g in group]
        diffs = [_sub(x, p[0]) for p in sub for x in p[1:]]
        frame, _ = hermite_extend(diffs, n - 1)
        m = frame.rank
        local = [tuple(sorted(frame.with_anchor(p[0]).coords(x) for x in p)) for p in sub]
        try:
            u_loc, t_loc = _certify(local, m)
        except NotMixedVolumeOne as exc:
            raise NotMixedVolumeOne(f"subtuple {list(group)} / {exc.stage}", exc.detail) from exc
        norm = _Normalizer(t_loc)
        pieces = []
        ws = []
        for g, uz in zip(group, u_loc):
            u = _sub(frame.embed(uz), b[g][0])
            w = lift(u)
            ws.append(w)
            pts = []
            for x in entries[g + 1]:
                y = _add(x, w)
                pts.append(norm.forward(frame.coords(proj(y))) + (fiber(y),))
            pieces.append(tuple(pts))
        try:
            cs, simplex = lift_translations(pieces)
        except NoLift as exc:
            raise NotMixedVolumeOne(f"lift of subtuple {list(group)}", str(exc)) from exc
        simplex_n = [_add(lift(frame.embed(norm.backward(s[:m]))), tuple(s[m] * d for d in direction))
                     for s in simplex]
        bottom = _vertical_bottom(simplex_n, direction)
        delta = _sub(e_lo, bottom)
        for g, w, c in zip(group, ws, cs):
            v[g + 1] = _add(_add(w, tuple(c * d for d in direction)), delta)
        simplices.append([_add(s, delta) for s in simplex_n])

    if critical:
        hull_pts = [proj(x) for x in a1]
        for s in simplices:
            hull_pts.extend(proj(x) for x in s)
        h = _hull_vertices(hull_pts)
        b_new = [h if i in used else b[i] for i in range(n - 1)]
    else:
        b_new = b
    if not is_essential(PolytopeTuple(n - 1, tuple(LatticePolytope(n - 1, p) for p in b_new))):
        raise NotMixedVolumeOne("replaced tuple", "projected tuple is not essential")
    try:
        u_new, sigma = _certify(b_new, n - 1)
    except NotMixedVolumeOne as exc:
        raise NotMixedVolumeOne(f"projection / {exc.stage}", exc.detail) from exc

    if critical:
        shifts = [tuple(-x for x in u_new[used[0]])]
    else:
        pe = proj(e_lo)
        shifts = [_sub(pe, q) for q in sigma]
    fixed_n = [a1] + [tuple(s) for s in simplices]
    free_idx = [i for i in range(n - 1) if i not in used]
    for t in shifts:
        sig = [_add(q, t) for q in sigma]
        norm = _Normalizer(sig)
        fixed = [tuple(norm.forward(proj(x)) + (fiber(x),) for x in p) for p in fixed_n]
        ws = {}
        free = []
        for i in free_idx:
            w = lift(_add(u_new[i], t))
            ws[i] = w
            free.append(tuple(norm.forward(proj(_add(x, w))) + (fiber(_add(x, w)),)
                              for x in entries[i + 1]))
        try:
            cs, simplex = lift_translations(free, fixed)
        except NoLift:
            continue
        for i, c in zip(free_idx, cs):
            v[i + 1] = _add(ws[i], tuple(c * d for d in direction))
        simplex_n = tuple(_add(lift(norm.backward(s[:n - 1])), tuple(s[n - 1] * d for d in direction))
                          for s in simplex)
        if all(_fits(entries[i], v[i], simplex_n) for i in range(n)):
            return v, tuple(sorted(simplex_n))
    raise NotMixedVolumeOne("final lift", "no lift of the projected certificate is a volume 1 simplex")


def _vertical_bottom(simplex: Sequence[Point], direction: Point) -> Point:
    pts = set(simplex)
    for p in simplex:
        if _add(p, direction) in pts:
            return p
    raise NotMixedVolumeOne("lift", "lifted simplex has no edge along the projection direction")


def _fits(piece: Piece, shift: Point, simplex: Sequence[Point]) -> bool:
    s = set(simplex)
    return all(_add(x, shift) in s for x in piece)


def certify_unit(a: PolytopeTuple, edge: Optional[Tuple[int, int]] = None) -> UnitCertificate:
    """Translate an essential n-tuple of mixed volume 1 into a volume 1 simplex.

    ``edge`` picks the edge of the first polytope to project along, as a pair
    of indices into its sorted vertex list; by default the first two vertices.
    Raises :class:`NotEssential` or :class:`NotMixedVolumeOne`.
    """
    n = a.dim
    if len(a) != n:
        raise ValueError(f"need {n} polytopes, got {len(a)}")
    if not is_essential(a):
        raise NotEssential()
    translations, simplex = _certify([p.vertices for p in a.entries], n, edge)
    cert = UnitCertificate(tuple(translations), LatticePolytope(n, simplex))
    if not verify_certificate(a, cert):
        raise NotMixedVolumeOne("verification", "assembled certificate does not verify")
    return cert


def verify_certificate(a: PolytopeTuple, cert: UnitCertificate) -> bool:
    """Simplex has volume 1 and full dimension, and contains every A(i) + v_i."""
    if len(cert.translations) != len(a):
        return False
    s = cert.simplex
    if s.dim != a.dim or not s.is_full_dimensional or len(s.vertices) != s.dim + 1:
        return False
    if normalized_volume(s) != 1:
        return False
    return all(contains(s, p.translate(v)) for p, v in zip(a.entries, cert.translations))


def uniqueness_check(a: PolytopeTuple, c1: UnitCertificate, c2: UnitCertificate) -> bool:
    """Whether two certificates differ by one common translation."""
    diffs = {_sub(x, y) for x, y in zip(c1.translations, c2.translations)}
    return len(diffs) <= 1


# ---------------------------------------------------------------- decomposition


def decompose_theorem1(a: PolytopeTuple) -> Theorem1Decomposition:
    """Split an n-tuple of mixed volume 1 into certified critical blocks.

    Each step takes the first minimal critical subtuple, certifies it inside
    its own span U and projects the remaining entries to V/U.
    Raises :class:`ZeroMixedVolume` or :class:`NotMixedVolumeOne`.
    """
    if len(a) != a.dim:
        raise ValueError(f"need {a.dim} polytopes, got {len(a)}")
    current = list(a.entries)
    index = list(range(len(a)))
    dim = a.dim
    steps = []
    while current:
        tup = PolytopeTuple(dim, tuple(current))
        try:
            local_idx, frame = maximal_essential_subtuple(tup)
        except ZeroMixedVolume as exc:
            raise ZeroMixedVolume(tuple(index[i] for i in exc.witness)) from exc
        k = len(local_idx)
        anchors = tuple(current[i].vertices[0] for i in local_idx)
        inside = PolytopeTuple(k, tuple(
            restrict_to(current[i], frame.with_anchor(anchor))
            for i, anchor in zip(local_idx, anchors)))
        try:
            cert = certify_unit(inside)
        except NotEssential as exc:  # pragma: no cover - minimal critical subtuples are essential
            raise RuntimeError("critical subtuple is not essential") from exc
        except NotMixedVolumeOne as exc:
            raise NotMixedVolumeOne(
                f"step {len(steps) + 1} ({[index[i] for i in local_idx]}) / {exc.stage}",
                exc.detail) from exc
        rest_idx = [i for i in range(len(current)) if i not in local_idx]
        rest = tuple(project_along(current[i], frame) for i in rest_idx)
        steps.append(DecompositionStep(tuple(index[i] for i in local_idx), frame, anchors, cert, rest))
        current = list(rest)
        index = [index[i] for i in rest_idx]
        dim -= k
    return Theorem1Decomposition(tuple(steps))


# ---------------------------------------------------------------- counting


def count_unit_simplices_containing_axes(n: int, radius: int = 1) -> int:
    """Count volume 1 lattice simplices (up to translation) containing a
    translate of every coordinate unit segment.

    Simplices are anchored at their lexicographically least vertex, which is
    put at the origin; the other n vertices are searched among the points of
    ``[-radius, radius]^n`` that are lexicographically positive.  Every such
    simplex has coordinate widths 1, so ``radius = 1`` is already exhaustive;
    larger radii are accepted to confirm that nothing is missed.
    """
    if not 2 <= n <= 4:
        raise ValueError("enumeration is supported for 2 <= n <= 4")
    zero = (0,) * n
    box = [p for p in product(range(-radius, radius + 1), repeat=n) if p > zero]
    units = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    count = 0
    for others in combinations(box, n):
        if abs(bareiss_det(others)) != 1:
            continue
        verts = (zero,) + others
        diffs = {_sub(p, q) for p in verts for q in verts}
        if all(u in diffs for u in units):
            count += 1
    return count


def cayley_count(n: int) -> int:
    """Closed form 2^n (n+1)^(n-2) for the count above."""
    return 2 ** n * (n + 1) ** n // (n + 1) ** 2
