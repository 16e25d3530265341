"""Shared JSON shapes for the HTTP service and the CLI's machine output."""

from __future__ import annotations

from .factlang import Target, Term, term_key, term_text
from .solver import ConstraintViolation, Solution


def solution_json(solution: Solution) -> dict:
    return {
        "assignments": [
            {"component": c, "property": p, "value": v}
            for c, p, v in sorted(solution.assignments, key=term_key)
        ],
        "present": sorted(solution.present),
    }


def violation_json(violation: ConstraintViolation) -> dict:
    body = {
        "rule": violation.rule,
        "message": violation.message,
        "atoms": [term_text(a) for a in violation.atoms],
    }
    if violation.origin is not None:
        body["origin"] = violation.origin
    return body


def requirement_json(polarity: str, target: Target) -> dict:
    if isinstance(target, tuple):
        component, prop, value = target
        return {"polarity": polarity, "component": component, "property": prop, "value": value}
    return {"polarity": polarity, "component": target}


def requirement_target(
    component: str, prop: str | None, value: Term | None
) -> Target:
    """Build a requirement target from its wire fields.

    A bare component names the component; property and value together name a
    property value. Raises ValueError on half-specified targets.
    """
    if prop is None and value is None:
        return component
    if prop is None or value is None:
        raise ValueError("requirement needs both property and value, or neither")
    return (component, prop, value)
