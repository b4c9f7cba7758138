"""Exact staircase complexes of L-space knots and their epsilon-classes."""

from __future__ import annotations

from .complex import BifilteredComplex, dual, staircase_from_steps, tensor
from .falg import ClassExpr, arch_compare, class_add, class_compare, class_sequence, seq_normalize
from .knots import k_ij, knot_class
from .laurent import LaurentPoly, lspace_gaps, torus_alexander
from .parser import parse_expr
from .simplify import epsilon, reduced_representative, simultaneous_simplify, tau

__version__ = "0.1.0"

__all__ = [
    "BifilteredComplex",
    "ClassExpr",
    "LaurentPoly",
    "arch_compare",
    "class_add",
    "class_compare",
    "class_sequence",
    "dual",
    "epsilon",
    "k_ij",
    "knot_class",
    "lspace_gaps",
    "parse_expr",
    "reduced_representative",
    "seq_normalize",
    "simultaneous_simplify",
    "staircase_from_steps",
    "tau",
    "tensor",
    "torus_alexander",
]
