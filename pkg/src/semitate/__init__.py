"""Exact computation of relative and Tate cohomology over finite local algebras."""

from .linalg import GF, QQ, Field, Matrix
from .algebra import Algebra, FdModule, ModuleHom, make_algebra, validate_algebra, validate_module

__all__ = [
    "GF",
    "QQ",
    "Field",
    "Matrix",
    "Algebra",
    "FdModule",
    "ModuleHom",
    "make_algebra",
    "validate_algebra",
    "validate_module",
]
