"""Lie algebras from structure constants, their modules, and the builtin families."""
from __future__ import annotations

from .algebra import LieAlgebra, SubalgebraEmbedding, quotient_algebra
from .builders import (
    build_h_n,
    build_j_n,
    build_sl_2,
    build_so_n,
    builtin_algebra,
    j_part,
    rotation_label,
    rotation_pairs,
    so_part,
    translation_label,
)
from .errors import (
    AntisymmetryViolation,
    InvalidDimension,
    JacobiViolation,
    ModuleAxiomViolation,
    NotClosed,
    ParseError,
    StructureError,
)
from .io import algebra_from_dict, algebra_to_dict, dump_algebra, load_algebra
from .modules import GModule, dual, exterior_power, make_module, restrict, submodule, tensor, trivial_module

__all__ = [
    "AntisymmetryViolation", "GModule", "InvalidDimension", "JacobiViolation", "LieAlgebra",
    "ModuleAxiomViolation", "NotClosed", "ParseError", "StructureError", "SubalgebraEmbedding",
    "algebra_from_dict", "algebra_to_dict", "build_h_n", "build_j_n", "build_sl_2", "build_so_n",
    "builtin_algebra", "dual", "dump_algebra", "exterior_power", "j_part", "load_algebra",
    "make_module", "quotient_algebra", "restrict", "rotation_label", "rotation_pairs", "so_part",
    "submodule", "tensor", "translation_label", "trivial_module",
]
