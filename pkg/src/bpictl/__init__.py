"""Explicit-state model checking for a belief-preference-intention CTL."""

from .checker import eval_formula, is_satisfiable_in, is_valid
from .formula import Formula
from .frames import ValidationReport, Violation, check_condition, validate_model
from .model import Model, ModelError, UndeclaredSymbolError, make_model
from .oracle import denote
from .satbound import SatResult, closure_bound, sat_search
from .textio import (
    ParseError,
    parse_formula,
    parse_model,
    render_formula,
    render_model,
)

__all__ = [
    "Formula",
    "Model",
    "ModelError",
    "ParseError",
    "SatResult",
    "UndeclaredSymbolError",
    "ValidationReport",
    "Violation",
    "check_condition",
    "closure_bound",
    "denote",
    "eval_formula",
    "is_satisfiable_in",
    "is_valid",
    "make_model",
    "parse_formula",
    "parse_model",
    "render_formula",
    "render_model",
    "sat_search",
    "validate_model",
]

__version__ = "0.1.0"
