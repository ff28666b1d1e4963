"""Oriented link diagrams, HOMFLY polynomials and z-degree bounds."""

from .bounds import DegreeBound, Exact, SkeinTree, UpperBound, combine, ledger_check, propagate
from .constructors import (
    deflation_path,
    flat_double,
    four_plat,
    pretzel,
    torus2,
    twist_replace,
    whitehead_double,
)
from .diagram import Crossing, Diagram, DiagramError, format_pd, parse_pd, seifert_circles
from .homfly import BudgetExceeded, homfly, invariant_report, morton_bound
from .poly import LaurentPoly2

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "Crossing",
    "DegreeBound",
    "Diagram",
    "DiagramError",
    "Exact",
    "LaurentPoly2",
    "SkeinTree",
    "UpperBound",
    "combine",
    "deflation_path",
    "flat_double",
    "format_pd",
    "four_plat",
    "homfly",
    "invariant_report",
    "ledger_check",
    "morton_bound",
    "parse_pd",
    "pretzel",
    "propagate",
    "seifert_circles",
    "torus2",
    "twist_replace",
    "whitehead_double",
]
