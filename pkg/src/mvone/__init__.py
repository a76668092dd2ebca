"""Exact lattice mixed volumes, mixed volume 1 certificates and a solver for
sparse polynomial systems with a unique toric solution."""

from .certifier import (
    Theorem1Decomposition,
    UnitCertificate,
    certify_unit,
    count_unit_simplices_containing_axes,
    decompose_theorem1,
    uniqueness_check,
    verify_certificate,
)
from .errors import (
    MathematicalNegative,
    MixedVolumeExceedsOne,
    NotEssential,
    NotMixedVolumeOne,
    SingularBlock,
    ZeroCoordinate,
    ZeroMixedVolume,
)
from .essentiality import (
    is_essential,
    is_linearly_independent,
    maximal_essential_subtuple,
    minimal_deficient_subtuple,
    tuple_dim,
)
from .lattice import LatticePolytope, SublatticeFrame, UnimodularAffineMap, convex_hull
from .mixed_volume import PolytopeTuple, mixed_volume, mixed_volume_oracle
from .solver import (
    LaurentPolynomial,
    LaurentSystem,
    SolvePlan,
    TorusPoint,
    build_solve_plan,
    execute_plan,
    newton_polytope,
    solve_unique,
    verify_solution,
)

__all__ = [
    "LaurentPolynomial",
    "LaurentSystem",
    "MathematicalNegative",
    "MixedVolumeExceedsOne",
    "NotEssential",
    "NotMixedVolumeOne",
    "SingularBlock",
    "SolvePlan",
    "Theorem1Decomposition",
    "TorusPoint",
    "UnitCertificate",
    "ZeroCoordinate",
    "ZeroMixedVolume",
    "LatticePolytope",
    "SublatticeFrame",
    "UnimodularAffineMap",
    "convex_hull",
    "PolytopeTuple",
    "mixed_volume",
    "mixed_volume_oracle",
    "build_solve_plan",
    "certify_unit",
    "count_unit_simplices_containing_axes",
    "decompose_theorem1",
    "execute_plan",
    "is_essential",
    "is_linearly_independent",
    "maximal_essential_subtuple",
    "minimal_deficient_subtuple",
    "newton_polytope",
    "solve_unique",
    "tuple_dim",
    "uniqueness_check",
    "verify_certificate",
    "verify_solution",
]
