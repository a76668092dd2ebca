"""Exact solution of generic sparse systems whose Newton polytopes have mixed volume 1.

The cascade follows the block decomposition of the Newton polytopes.  For a
block of k equations the monomial change ``x^a = y^(G a)`` sends the
certified volume 1 simplex onto the standard simplex on ``y_1..y_k``, so after
dividing each block equation by one monomial it becomes affine-linear in
those k variables.  They are solved exactly, substituted into the remaining
equations, and the process repeats on the quotient lattice.

Coefficients are :class:`fractions.Fraction`; nothing here depends on the
field beyond exact division.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .certifier import decompose_theorem1
from .errors import MixedVolumeExceedsOne, NotMixedVolumeOne, SingularBlock, ZeroCoordinate
from .lattice import LatticePolytope, Point, UnimodularAffineMap, convex_hull
from .linalg import bareiss_solve, identity, mat_mul, mat_vec, transpose, unimodular_inverse
from .mixed_volume import PolytopeTuple, mixed_volume

ExactScalar = Fraction


@dataclass(frozen=True)
class LaurentPolynomial:
    n_vars: int
    terms: Dict[Point, Fraction]

    def __post_init__(self):
        clean: Dict[Point, Fraction] = {}
        for exp, coef in dict(self.terms).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != self.n_vars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {self.n_vars}")
            coef = Fraction(coef)
            if coef:
                clean[exp] = clean.get(exp, Fraction(0)) + coef
                if not clean[exp]:
                    del clean[exp]
        object.__setattr__(self, "terms", clean)

    def is_zero(self) -> bool:
        return not self.terms

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for exp, coef in self.terms.items():
            total += coef * monomial_value(point, exp)
        return total


@dataclass(frozen=True)
class LaurentSystem:
    n_vars: int
    polys: Tuple[LaurentPolynomial, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        if len(polys) != self.n_vars:
            raise ValueError(f"system is not square: {len(polys)} equations in {self.n_vars} variables")
        if any(p.n_vars != self.n_vars for p in polys):
            raise ValueError("polynomials disagree on the number of variables")
        object.__setattr__(self, "polys", polys)


@dataclass(frozen=True)
class TorusPoint:
    coordinates: Tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(Fraction(c) for c in self.coordinates)
        if any(c == 0 for c in coords):
            raise ZeroCoordinate("a torus point has no zero coordinates")
        object.__setattr__(self, "coordinates", coords)


@dataclass(frozen=True)
class SolveStage:
    """One block of the cascade, in the coordinates left by earlier stages.

    ``change`` acts on exponent vectors: ``x^a = y^(G a)``.  Equation
    ``equations[i]`` divided by ``y^normalizers[i]`` is affine-linear in the
    first k variables of y, which are the global unknowns ``variables``.
    """

    change: UnimodularAffineMap
    equations: Tuple[int, ...]
    variables: Tuple[int, ...]
    normalizers: Tuple[Point, ...]

    @property
    def size(self) -> int:
        return len(self.equations)

    @property
    def new_variables(self) -> Tuple[Point, ...]:
        """Row i: the exponents of the old variables in ``y_i``."""
        return tuple(map(tuple, transpose(unimodular_inverse(self.change.linear))))


@dataclass(frozen=True)
class SolvePlan:
    n_vars: int
    stages: Tuple[SolveStage, ...]
    final: UnimodularAffineMap  # x_j = prod_i w_i^final[j][i], w the stacked block unknowns

    @property
    def sizes(self) -> Tuple[int, ...]:
        return tuple(s.size for s in self.stages)


def monomial_value(point: Sequence[Fraction], exp: Sequence[int]) -> Fraction:
    value = Fraction(1)
    for x, e in zip(point, exp):
        if e:
            value *= Fraction(x) ** e
    return value


def apply_monomial_change(matrix: Sequence[Sequence[int]], point: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """``x -> x^M``: coordinate j of the image is ``prod_i x_i^M[i][j]``."""
    cols = transpose(matrix)
    return tuple(monomial_value(point, col) for col in cols)


def newton_polytope(p: LaurentPolynomial) -> LatticePolytope:
    if p.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    return convex_hull(p.terms.keys())


def newton_tuple(s: LaurentSystem) -> PolytopeTuple:
    return PolytopeTuple(s.n_vars, tuple(newton_polytope(p) for p in s.polys))


def _block_diag(top: Sequence[Sequence[int]], size: int) -> List[List[int]]:
    k = len(top)
    out = identity(size)
    for i in range(k):
        for j in range(k):
            out[i][j] = top[i][j]
    return out


def build_solve_plan(s: LaurentSystem) -> SolvePlan:
    """Monomial changes and normalizers for each block of the decomposition.

    Raises :class:`ZeroMixedVolume` or :class:`MixedVolumeExceedsOne`.
    """
    n = s.n_vars
    if n == 0:
        return SolvePlan(0, (), UnimodularAffineMap(()))
    tup = newton_tuple(s)
    try:
        dec = decompose_theorem1(tup)
    except NotMixedVolumeOne as exc:
        raise MixedVolumeExceedsOne(mixed_volume(tup)) from exc
    stages = []
    offset = 0
    dim = n
    for step in dec.steps:
        k = len(step.indices)
        cert = step.certificate
        verts = sorted(cert.simplex.vertices)
        t0 = verts[0]
        edges = transpose([[a - b for a, b in zip(v, t0)] for v in verts[1:]])
        m = unimodular_inverse(edges)  # M (v - t0) is 0 or a unit vector
        g = mat_mul(_block_diag(m, dim), step.frame.transform)
        normalizers = []
        for anchor, shift in zip(step.anchors, cert.translations):
            ga = mat_vec(g, anchor)
            local = mat_vec(m, [a - b for a, b in zip(shift, t0)])
            normalizers.append(tuple(x - y for x, y in zip(ga, local + (0,) * (dim - k))))
        stages.append(SolveStage(
            UnimodularAffineMap(tuple(map(tuple, g))),
            tuple(step.indices),
            tuple(range(offset, offset + k)),
            tuple(normalizers),
        ))
        offset += k
        dim -= k
    # compose x^(s) = y^(s) ^ G_s^T from the last stage back to the first
    final = identity(0)
    for stage in reversed(stages):
        d = stage.change.dim
        k = stage.size
        inner = identity(d)
        for i in range(d - k):
            for j in range(d - k):
                inner[k + i][k + j] = final[i][j]
        final = mat_mul(transpose(stage.change.linear), inner)
    return SolvePlan(n, tuple(stages), UnimodularAffineMap(tuple(map(tuple, final))))


def _change_terms(terms: Dict[Point, Fraction], g) -> Dict[Point, Fraction]:
    return {mat_vec(g, e): c for e, c in terms.items()}


def execute_plan(plan: SolvePlan, s: LaurentSystem) -> TorusPoint:
    """Run the cascade on the coefficients of ``s``.

    Raises :class:`SingularBlock` or :class:`ZeroCoordinate` when the
    coefficients are not generic enough for the plan.
    """
    if plan.n_vars != s.n_vars:
        raise ValueError("plan and system have different numbers of variables")
    n = s.n_vars
    if n == 0:
        return TorusPoint(())
    current: Dict[int, Dict[Point, Fraction]] = {i: dict(p.terms) for i, p in enumerate(s.polys)}
    solved: List[Fraction] = []
    for number, stage in enumerate(plan.stages, 1):
        g = stage.change.linear
        k = stage.size
        current = {i: _change_terms(t, g) for i, t in current.items()}
        rows, rhs = [], []
        for eq, r in zip(stage.equations, stage.normalizers):
            row = [Fraction(0)] * k
            const = Fraction(0)
            for exp, coef in current.pop(eq).items():
                z = tuple(a - b for a, b in zip(exp, r))
                if any(z[k:]) or any(x not in (0, 1) for x in z[:k]) or sum(z[:k]) > 1:
                    raise RuntimeError(f"equation {eq} is not affine-linear after the change")
                if any(z):
                    row[z.index(1)] += coef
                else:
                    const += coef
            rows.append(row)
            rhs.append(-const)
        det, values = bareiss_solve(rows, rhs)
        if values is None:
            raise SingularBlock(f"stage {number}: the linear block for equations {list(stage.equations)} is singular")
        if any(v == 0 for v in values):
            raise ZeroCoordinate(f"stage {number}: a block unknown is 0, the solution leaves the torus")
        solved.extend(values)
        for i, terms in current.items():
            reduced: Dict[Point, Fraction] = {}
            for exp, coef in terms.items():
                c = coef * monomial_value(values, exp[:k])
                key = exp[k:]
                reduced[key] = reduced.get(key, Fraction(0)) + c
            current[i] = {e: c for e, c in reduced.items() if c}
    return TorusPoint(apply_monomial_change(transpose(plan.final.linear), solved))


def verify_solution(s: LaurentSystem, p: TorusPoint) -> bool:
    if len(p.coordinates) != s.n_vars:
        return False
    return all(poly.evaluate(p.coordinates) == 0 for poly in s.polys)


def solve_unique(s: LaurentSystem) -> Tuple[TorusPoint, SolvePlan]:
    plan = build_solve_plan(s)
    point = execute_plan(plan, s)
    if not verify_solution(s, point):
        raise RuntimeError("cascade produced a point that does not solve the system")
    return point, plan
