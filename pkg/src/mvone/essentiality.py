"""Dimensions of subtuples: essentiality, independence, critical subtuples.

All checks reduce to ranks of difference vectors, so no hulls are built.
Subtuples are scanned exhaustively by increasing size; k stays small.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Tuple

from .errors import ZeroMixedVolume
from .lattice import SublatticeFrame, _sub, hermite_extend, sum_affine_dim
from .mixed_volume import PolytopeTuple


@dataclass(frozen=True)
class SubtupleReport:
    indices: Tuple[int, ...]  # 0-based
    sum_dim: int

    @property
    def deficiency(self) -> int:
        return len(self.indices) - self.sum_dim


def _sum_dim(a: PolytopeTuple, indices) -> int:
    return sum_affine_dim([a.entries[i] for i in indices])


def tuple_dim(a: PolytopeTuple) -> int:
    """dim of the Minkowski sum minus the number of entries (may be negative)."""
    return _sum_dim(a, range(len(a))) - len(a)


def is_essential(a: PolytopeTuple) -> bool:
    """Every subtuple of size l sums to dimension >= min(l + 1, n)."""
    n, k = a.dim, len(a)
    for size in range(1, k + 1):
        need = min(size + 1, n)
        for subset in combinations(range(k), size):
            if _sum_dim(a, subset) < need:
                return False
    return True


def is_linearly_independent(a: PolytopeTuple) -> bool:
    """Every subtuple of size l sums to dimension >= l."""
    return _strict_deficiency(a) is None


def _strict_deficiency(a: PolytopeTuple) -> Optional[SubtupleReport]:
    k = len(a)
    for size in range(1, k + 1):
        for subset in combinations(range(k), size):
            d = _sum_dim(a, subset)
            if d < size:
                return SubtupleReport(subset, d)
    return None


def _first_critical(a: PolytopeTuple) -> Optional[SubtupleReport]:
    k = len(a)
    for size in range(1, k + 1):
        for subset in combinations(range(k), size):
            if _sum_dim(a, subset) == size:
                return SubtupleReport(subset, size)
    return None


def minimal_deficient_subtuple(a: PolytopeTuple) -> Optional[SubtupleReport]:
    """Smallest subtuple whose sum has dimension at most its size.

    A strictly deficient subtuple (dimension below size, so the mixed volume
    vanishes) is reported in preference to a critical one (dimension equal to
    size).  Scanning by increasing size with lexicographic order makes the
    result minimal by inclusion and deterministic.
    """
    return _strict_deficiency(a) or _first_critical(a)


def maximal_essential_subtuple(a: PolytopeTuple) -> Tuple[Tuple[int, ...], SublatticeFrame]:
    """Minimal critical subtuple (|I| entries spanning an |I|-dim sum) and the
    saturated frame of its linear span.

    Raises :class:`ZeroMixedVolume` with a deficient subtuple as witness when
    the tuple is not linearly independent.
    """
    witness = _strict_deficiency(a)
    if witness is not None:
        raise ZeroMixedVolume(witness.indices)
    found = _first_critical(a)
    if found is None:
        raise ZeroMixedVolume(())
    diffs = []
    for i in found.indices:
        p = a.entries[i]
        diffs.extend(_sub(v, p.vertices[0]) for v in p.vertices[1:])
    frame, _ = hermite_extend(diffs, a.dim)
    return found.indices, frame
