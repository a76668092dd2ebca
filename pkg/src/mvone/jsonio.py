"""JSON encodings of polytopes, tuples, certificates, systems and plans.

Decoders validate shape and report the offending field as a path such as
``polytopes[2].vertices[0]``.  Rationals travel as strings ``"p/q"``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, List

from .certifier import DecompositionStep, Theorem1Decomposition, UnitCertificate
from .lattice import LatticePolytope, SublatticeFrame, UnimodularAffineMap, convex_hull
from .mixed_volume import PolytopeTuple
from .solver import LaurentPolynomial, LaurentSystem, SolvePlan, SolveStage, TorusPoint


class FormatError(ValueError):
    """Input does not match a documented schema."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path or '<root>'}: {message}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc


_FLAT_LIST = re.compile(r"\[\s+([^\[\]{}]*?)\s+\]")


def dumps(obj: Any) -> str:
    """Indented JSON with lists of scalars kept on one line."""
    text = json.dumps(obj, indent=2, sort_keys=True)
    return _FLAT_LIST.sub(lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]", text)


# ---------------------------------------------------------------- checks


def _field(obj: Any, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise FormatError(path, "expected an object")
    if key not in obj:
        raise FormatError(path, f"missing field {key!r}")
    return obj[key]


def _int(x: Any, path: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(path, f"expected an integer, got {x!r}")
    return x


def _list(x: Any, path: str) -> list:
    if not isinstance(x, list):
        raise FormatError(path, "expected a list")
    return x


def _vector(x: Any, n: int, path: str) -> tuple:
    items = _list(x, path)
    if len(items) != n:
        raise FormatError(path, f"expected {n} entries, got {len(items)}")
    return tuple(_int(v, f"{path}[{i}]") for i, v in enumerate(items))


def _matrix(x: Any, n: int, path: str) -> tuple:
    rows = _list(x, path)
    if len(rows) != n:
        raise FormatError(path, f"expected {n} rows, got {len(rows)}")
    return tuple(_vector(r, n, f"{path}[{i}]") for i, r in enumerate(rows))


def _rational(x: Any, path: str) -> Fraction:
    if isinstance(x, bool):
        raise FormatError(path, f"expected a rational, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError):
            pass
    raise FormatError(path, f"expected a rational like \"p/q\", got {x!r}")


def _dim(obj: Any, key: str, path: str) -> int:
    n = _int(_field(obj, key, path), f"{path}.{key}" if path else key)
    if n < 0:
        raise FormatError(f"{path}.{key}" if path else key, "dimension must be nonnegative")
    return n


def _rat_str(x: Fraction) -> str:
    return str(Fraction(x))


# ---------------------------------------------------------------- geometry


def polytope_to_json(p: LatticePolytope) -> dict:
    return {"dim": p.dim, "vertices": [list(v) for v in p.vertices]}


def polytope_from_json(obj: Any, path: str = "") -> LatticePolytope:
    n = _dim(obj, "dim", path)
    vpath = f"{path}.vertices" if path else "vertices"
    verts = _list(_field(obj, "vertices", path), vpath)
    if not verts:
        raise FormatError(vpath, "a polytope needs at least one vertex")
    return convex_hull(_vector(v, n, f"{vpath}[{i}]") for i, v in enumerate(verts))


def tuple_to_json(a: PolytopeTuple) -> dict:
    return {"dim": a.dim, "polytopes": [polytope_to_json(p) for p in a.entries]}


def tuple_from_json(obj: Any) -> PolytopeTuple:
    n = _dim(obj, "dim", "")
    polys = _list(_field(obj, "polytopes", ""), "polytopes")
    entries = []
    for i, p in enumerate(polys):
        poly = polytope_from_json(p, f"polytopes[{i}]")
        if poly.dim != n:
            raise FormatError(f"polytopes[{i}].dim", f"expected {n}, got {poly.dim}")
        entries.append(poly)
    return PolytopeTuple(n, tuple(entries))


def certificate_to_json(c: UnitCertificate) -> dict:
    return {"translations": [list(v) for v in c.translations], "simplex": polytope_to_json(c.simplex)}


def certificate_from_json(obj: Any) -> UnitCertificate:
    simplex = polytope_from_json(_field(obj, "simplex", ""), "simplex")
    shifts = _list(_field(obj, "translations", ""), "translations")
    return UnitCertificate(
        tuple(_vector(v, simplex.dim, f"translations[{i}]") for i, v in enumerate(shifts)), simplex)


def frame_to_json(f: SublatticeFrame) -> dict:
    return {
        "ambient_dim": f.ambient_dim,
        "basis": [list(b) for b in f.basis],
        "anchor": list(f.anchor),
        "transform": [list(r) for r in f.transform],
    }


def frame_from_json(obj: Any, path: str = "") -> SublatticeFrame:
    from .linalg import unimodular_inverse

    n = _dim(obj, "ambient_dim", path)
    p = (path + ".") if path else ""
    basis = tuple(_vector(b, n, f"{p}basis[{i}]")
                  for i, b in enumerate(_list(_field(obj, "basis", path), f"{p}basis")))
    anchor = _vector(_field(obj, "anchor", path), n, f"{p}anchor")
    transform = _matrix(_field(obj, "transform", path), n, f"{p}transform")
    try:
        inv = unimodular_inverse(transform)
    except ValueError as exc:
        raise FormatError(f"{p}transform", str(exc)) from exc
    return SublatticeFrame(n, basis, anchor, transform, tuple(map(tuple, inv)))


def decomposition_to_json(d: Theorem1Decomposition) -> list:
    return [
        {
            "indices": list(s.indices),
            "frame": frame_to_json(s.frame),
            "anchors": [list(a) for a in s.anchors],
            "certificate": certificate_to_json(s.certificate),
            "quotient_tuple": [polytope_to_json(p) for p in s.quotient_tuple],
        }
        for s in d.steps
    ]


def decomposition_from_json(obj: Any) -> Theorem1Decomposition:
    steps = []
    for i, s in enumerate(_list(obj, "")):
        path = f"[{i}]"
        frame = frame_from_json(_field(s, "frame", path), f"{path}.frame")
        indices = tuple(_int(x, f"{path}.indices[{j}]")
                        for j, x in enumerate(_list(_field(s, "indices", path), f"{path}.indices")))
        anchors = tuple(_vector(a, frame.ambient_dim, f"{path}.anchors[{j}]")
                        for j, a in enumerate(_list(_field(s, "anchors", path), f"{path}.anchors")))
        cert = _field(s, "certificate", path)
        try:
            certificate = certificate_from_json(cert)
        except FormatError as exc:
            raise FormatError(f"{path}.certificate.{exc.path}", exc.message) from exc
        quotient = tuple(polytope_from_json(q, f"{path}.quotient_tuple[{j}]")
                         for j, q in enumerate(_list(_field(s, "quotient_tuple", path),
                                                     f"{path}.quotient_tuple")))
        steps.append(DecompositionStep(indices, frame, anchors, certificate, quotient))
    return Theorem1Decomposition(tuple(steps))


# ---------------------------------------------------------------- algebra


def system_to_json(s: LaurentSystem) -> dict:
    return {
        "vars": s.n_vars,
        "polynomials": [
            {"terms": [{"exp": list(e), "coef": _rat_str(c)} for e, c in sorted(p.terms.items())]}
            for p in s.polys
        ],
    }


def system_from_json(obj: Any) -> LaurentSystem:
    n = _dim(obj, "vars", "")
    polys_raw = _list(_field(obj, "polynomials", ""), "polynomials")
    if len(polys_raw) != n:
        raise FormatError("polynomials", f"expected {n} polynomials, got {len(polys_raw)}")
    polys: List[LaurentPolynomial] = []
    for i, p in enumerate(polys_raw):
        path = f"polynomials[{i}]"
        terms = {}
        for j, t in enumerate(_list(_field(p, "terms", path), f"{path}.terms")):
            tp = f"{path}.terms[{j}]"
            exp = _vector(_field(t, "exp", tp), n, f"{tp}.exp")
            coef = _rational(_field(t, "coef", tp), f"{tp}.coef")
            terms[exp] = terms.get(exp, Fraction(0)) + coef
        poly = LaurentPolynomial(n, terms)
        if poly.is_zero():
            raise FormatError(path, "polynomial is zero")
        polys.append(poly)
    return LaurentSystem(n, tuple(polys))


def point_to_json(p: TorusPoint) -> dict:
    return {"point": [_rat_str(c) for c in p.coordinates]}


def point_from_json(obj: Any) -> TorusPoint:
    coords = _list(_field(obj, "point", ""), "point")
    return TorusPoint(tuple(_rational(c, f"point[{i}]") for i, c in enumerate(coords)))


def plan_to_json(plan: SolvePlan) -> dict:
    return {
        "vars": plan.n_vars,
        "stages": [
            {
                "monomial_change": [list(r) for r in st.change.linear],
                "equations": list(st.equations),
                "variables": list(st.variables),
                "normalizing_monomials": [list(r) for r in st.normalizers],
            }
            for st in plan.stages
        ],
        "final": [list(r) for r in plan.final.linear],
    }


def plan_from_json(obj: Any) -> SolvePlan:
    n = _dim(obj, "vars", "")
    stages = []
    dim = n
    for i, st in enumerate(_list(_field(obj, "stages", ""), "stages")):
        path = f"stages[{i}]"
        g = _matrix(_field(st, "monomial_change", path), dim, f"{path}.monomial_change")
        eqs = tuple(_int(x, f"{path}.equations[{j}]")
                    for j, x in enumerate(_list(_field(st, "equations", path), f"{path}.equations")))
        var = tuple(_int(x, f"{path}.variables[{j}]")
                    for j, x in enumerate(_list(_field(st, "variables", path), f"{path}.variables")))
        norms = tuple(_vector(r, dim, f"{path}.normalizing_monomials[{j}]")
                      for j, r in enumerate(_list(_field(st, "normalizing_monomials", path),
                                                  f"{path}.normalizing_monomials")))
        if not (len(eqs) == len(var) == len(norms)) or not eqs:
            raise FormatError(path, "equations, variables and normalizing_monomials must have one equal nonzero length")
        try:
            change = UnimodularAffineMap(g)
        except ValueError as exc:
            raise FormatError(f"{path}.monomial_change", str(exc)) from exc
        stages.append(SolveStage(change, eqs, var, norms))
        dim -= len(eqs)
    if dim != 0:
        raise FormatError("stages", "stage blocks do not cover every variable")
    final = _matrix(_field(obj, "final", ""), n, "final")
    try:
        final_map = UnimodularAffineMap(final)
    except ValueError as exc:
        raise FormatError("final", str(exc)) from exc
    return SolvePlan(n, tuple(stages), final_map)
