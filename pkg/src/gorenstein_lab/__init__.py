"""Exact module theory over split basic algebras, with Gorenstein-projectivity auditors."""

from .linalg import GF, QQ, Field, FieldMismatch, PrimeField, RationalField, field_from_spec
from .algebra import Algebra, AlgebraError, dump_algebra, load_algebra, preset
from .modrep import (
    Module,
    ModuleError,
    ModuleHom,
    ProjMap,
    free_module,
    hom_basis,
    is_isomorphic,
    k_dual,
    module_from_dict,
    projective,
    reduce,
    regular_module,
    simple,
)
from .complexes import (
    Complex,
    Resolution,
    a_dual,
    cosyzygy,
    dual_hom,
    ext_dims,
    phi,
    projective_dimension,
    syzygy,
    transpose,
)
from .gorenstein import (
    BoundedVerdict,
    build_main_complex,
    complex_to_module,
    is_gp,
    is_sgp,
    nunke_check,
    one_point_extension,
    check_exactness_criterion,
)

__all__ = [
    "GF", "QQ", "Field", "FieldMismatch", "PrimeField", "RationalField", "field_from_spec",
    "Algebra", "AlgebraError", "dump_algebra", "load_algebra", "preset",
    "Module", "ModuleError", "ModuleHom", "ProjMap", "free_module", "hom_basis", "is_isomorphic",
    "k_dual", "module_from_dict", "projective", "reduce", "regular_module", "simple",
    "Complex", "Resolution", "a_dual", "cosyzygy", "dual_hom", "ext_dims", "phi",
    "projective_dimension", "syzygy", "transpose",
    "BoundedVerdict", "build_main_complex", "complex_to_module", "is_gp", "is_sgp", "nunke_check",
    "one_point_extension", "check_exactness_criterion",
]

__version__ = "0.1.0"
