"""Assume-guarantee contracts over conjunctions of linear inequalities."""

from .contracts import (
    AlgebraError,
    ErrorKind,
    IoContract,
    compose,
    compose_all,
    merge,
    merge_all,
    quotient,
    refines,
    validate,
)
from .polyhedra import is_refinement, reduce, refine_with_context, relax_with_context
from .serialization import SchemaError, load_contract, save_contract
from .terms import NonlinearError, ParseError, PolyhedralTerm, TermList, parse_term, print_term

__version__ = "0.1.0"

__all__ = [
    "AlgebraError",
    "ErrorKind",
    "IoContract",
    "NonlinearError",
    "ParseError",
    "PolyhedralTerm",
    "SchemaError",
    "TermList",
    "compose",
    "compose_all",
    "is_refinement",
    "load_contract",
    "merge",
    "merge_all",
    "parse_term",
    "print_term",
    "quotient",
    "reduce",
    "refine_with_context",
    "refines",
    "relax_with_context",
    "save_contract",
    "validate",
]
