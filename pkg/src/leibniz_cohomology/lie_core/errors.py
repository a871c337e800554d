"""Errors raised while building or validating algebras and modules."""
from __future__ import annotations


class StructureError(ValueError):
    """Structure constants do not describe a Lie algebra."""


class AntisymmetryViolation(StructureError):
    def __init__(self, i: int, j: int, detail: str = ""):
        self.pair = (i, j)
        super().__init__(f"bracket not antisymmetric at ({i}, {j}){': ' + detail if detail else ''}")


class JacobiViolation(StructureError):
    def __init__(self, triple: tuple[int, int, int], labels: tuple[str, str, str] | None = None):
        self.triple = triple
        shown = labels if labels else triple
        super().__init__(f"Jacobi identity fails on basis triple {shown}")


class ModuleAxiomViolation(StructureError):
    def __init__(self, i: int, j: int):
        self.pair = (i, j)
        super().__init__(f"module axiom A_i A_j - A_j A_i = A_[i,j] fails for ({i}, {j})")


class NotClosed(StructureError):
    """A proposed subalgebra or submodule is not closed."""


class ParseError(ValueError):
    """Malformed algebra or cochain file."""


class InvalidDimension(ValueError):
    """Requested size is outside the supported range."""
