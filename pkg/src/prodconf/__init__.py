"""Constraint-based product configuration engine.

Product knowledge goes in as ground facts (components, candidate types,
predefined property values, partonomy, requirements, incompatibilities,
user requirements); solutions come out as assignments of values to
component properties that satisfy every constraint.
"""

from .factlang import (
    Diagnostic,
    Fact,
    FactBase,
    ParseResult,
    PropertyValue,
    SolutionParseResult,
    Target,
    Term,
    parse_program,
    parse_solution,
    serialize_factbase,
    serialize_solution,
    term_text,
)
from .grounding import (
    ConfigurationProblem,
    InstanceError,
    RequireComponent,
    ground,
    ground_report,
    validate,
)
from .solver import (
    BUDGET_EXCEEDED,
    CAPPED,
    SAT,
    UNSAT,
    BudgetExceededError,
    CapExceededError,
    ConstraintViolation,
    Solution,
    SolveOptions,
    SolveResult,
    WhatIfResult,
    brute_force_solve,
    check,
    consistent_values,
    minimal_filter,
    satisfies,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BUDGET_EXCEEDED",
    "CAPPED",
    "SAT",
    "UNSAT",
    "BudgetExceededError",
    "CapExceededError",
    "ConfigurationProblem",
    "ConstraintViolation",
    "Diagnostic",
    "Fact",
    "FactBase",
    "InstanceError",
    "ParseResult",
    "PropertyValue",
    "RequireComponent",
    "Solution",
    "SolutionParseResult",
    "SolveOptions",
    "SolveResult",
    "Target",
    "Term",
    "WhatIfResult",
    "brute_force_solve",
    "check",
    "consistent_values",
    "ground",
    "ground_report",
    "minimal_filter",
    "parse_program",
    "parse_solution",
    "satisfies",
    "serialize_factbase",
    "serialize_solution",
    "solve",
    "term_text",
    "validate",
]
