"""Workbench for the s-semantics of definite logic programs."""

from .terms import (
    NIL,
    ZERO,
    Atom,
    AtomSet,
    Clause,
    Program,
    Struct,
    Var,
    apply,
    compose,
    is_linear,
    is_variant,
    kth_member,
    mklist,
    open_list_view,
    peano,
    peano_value,
    rename_apart,
    tail_of,
)
from .unify import mgu
from .syntax import ParseError, parse_program, parse_query, parse_term, report_encode, to_text
from .sld import ComputedAnswer, Limits, most_general_query, solve
from .semantics import ground_instances, herbrand_tp, iterate, tpi, tpi_clause
from .checks import CheckReport, SpecBounds, Specification, check_completeness, check_correctness, check_level_mapping

__version__ = "0.1.0"

__all__ = [
    "NIL",
    "ZERO",
    "Atom",
    "AtomSet",
    "Clause",
    "Program",
    "Struct",
    "Var",
    "apply",
    "compose",
    "is_linear",
    "is_variant",
    "kth_member",
    "mklist",
    "open_list_view",
    "peano",
    "peano_value",
    "rename_apart",
    "tail_of",
    "mgu",
    "ParseError",
    "parse_program",
    "parse_query",
    "parse_term",
    "report_encode",
    "to_text",
    "ComputedAnswer",
    "Limits",
    "most_general_query",
    "solve",
    "ground_instances",
    "herbrand_tp",
    "iterate",
    "tpi",
    "tpi_clause",
    "CheckReport",
    "SpecBounds",
    "Specification",
    "check_completeness",
    "check_correctness",
    "check_level_mapping",
]
