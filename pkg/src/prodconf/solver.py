"""Checking and enumerating solutions of a configuration problem.

A solution is a set of (component, property, value) assignments. A component
is present exactly when it carries at least one assignment. The checker
evaluates the full rule set; the enumerator searches over per-component
states because fixing a component's type forces the rest of its assignment:
the non-type values of a present component must equal its type's predefined
property values exactly, so each component contributes either nothing
(absent) or the full atom block of one candidate type.

Rule identifiers reported by the checker:

    A1          present component lacks a type assignment
    A2          one property carries two values
    A3_extra    assignment the assigned type does not predefine (or a triple
                outside the ground domain)
    A3_missing  predefined value of the assigned type not assigned
    A4          mandatory non-type property unassigned
    R1          required component absent (explicit or partonomy-derived)
    R2a/R2b/R3  requirement between components and property values
    I1/I2/I3    incompatibility between components and property values
    U1..U4      user requirements (require / exclude)

The enumerator additionally reports U_conflict when the same target is both
required and excluded, which can never be satisfied.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Iterator

from .factlang import (
    PropertyValue,
    Target,
    Term,
    serialize_solution,
    term_key,
    term_text,
)
from .grounding import ConfigurationProblem

RULE_A1 = "A1"
RULE_A2 = "A2"
RULE_A3_EXTRA = "A3_extra"
RULE_A3_MISSING = "A3_missing"
RULE_A4 = "A4"
RULE_R1 = "R1"
RULE_R2A = "R2a"
RULE_R2B = "R2b"
RULE_R3 = "R3"
RULE_I1 = "I1"
RULE_I2 = "I2"
RULE_I3 = "I3"
RULE_U1 = "U1"
RULE_U2 = "U2"
RULE_U3 = "U3"
RULE_U4 = "U4"
RULE_U_CONFLICT = "U_conflict"

SAT = "SAT"
UNSAT = "UNSAT"
CAPPED = "CAPPED"
BUDGET_EXCEEDED = "BUDGET_EXCEEDED"

#: hard ceiling on brute-force enumeration: product over all (component,
#: property) cells of (domain size + 1)
ORACLE_CAP = 10_000_000

DEFAULT_NODE_BUDGET = 1_000_000


class CapExceededError(Exception):
    """Brute-force enumeration would exceed the combination ceiling."""


class BudgetExceededError(Exception):
    """A satisfiability probe ran out of search budget before an answer."""


@dataclass(frozen=True)
class ConstraintViolation:
    """One violated rule together with the atoms that witness it."""

    rule: str
    atoms: tuple
    message: str
    origin: str | None = None


@dataclass(frozen=True)
class Solution:
    """An immutable solution: assignments plus the derived present set."""

    assignments: frozenset[PropertyValue]

    @cached_property
    def present(self) -> frozenset[str]:
        return frozenset(c for c, _, _ in self.assignments)

    @cached_property
    def canonical_text(self) -> str:
        return serialize_solution(self.assignments)

    def sort_key(self) -> str:
        return self.canonical_text


@dataclass
class SolveOptions:
    max_models: int = 0  # 0 = enumerate everything
    minimal_only: bool = False
    extra_requirements: tuple[tuple[str, Target], ...] = ()
    node_budget: int = DEFAULT_NODE_BUDGET
    time_budget: float | None = None  # seconds, wall clock


@dataclass(frozen=True)
class SolveResult:
    status: str
    solutions: tuple[Solution, ...]
    violations: tuple[ConstraintViolation, ...] = ()


@dataclass(frozen=True)
class WhatIfResult:
    """Values of one cell that keep the problem satisfiable, plus presence."""

    values: tuple[Term, ...]
    may_be_absent: bool
    must_be_present: bool


# ---------------------------------------------------------------------------
# Checking
# ---------------------------------------------------------------------------

def _pv_text(pv: PropertyValue) -> str:
    return f"{pv[0]}.{pv[1]}={term_text(pv[2])}"


def iter_violations(
    problem: ConfigurationProblem, candidate: Iterable[PropertyValue]
) -> Iterator[ConstraintViolation]:
    """Yield violations in a fixed rule-major order; empty iff a solution."""
    assignments = frozenset(candidate)
    present = {c for c, _, _ in assignments}
    present_sorted = sorted(present)
    values_by_cell: dict[tuple[str, str], set[Term]] = {}
    pairs_by_component: dict[str, set[tuple[str, Term]]] = {}
    for component, prop, value in assignments:
        values_by_cell.setdefault((component, prop), set()).add(value)
        pairs_by_component.setdefault(component, set()).add((prop, value))

    def assigned(pv: PropertyValue) -> bool:
        return pv in assignments

    # A1: every present component must have a type
    for component in present_sorted:
        if "type" in problem.mandatory_by_component.get(component, ()):
            if (component, "type") not in values_by_cell:
                yield ConstraintViolation(
                    RULE_A1,
                    (component,),
                    f"component {component!r} is present but has no type assigned",
                )

    # A2: one value per property
    for (component, prop), values in sorted(
        values_by_cell.items(), key=lambda item: item[0]
    ):
        if len(values) > 1:
            rendered = ",".join(term_text(v) for v in sorted(values, key=term_key))
            yield ConstraintViolation(
                RULE_A2,
                (component, prop) + tuple(sorted(values, key=term_key)),
                f"property {prop!r} of {component!r} has several values: {rendered}",
            )

    # A3_extra: triples outside the ground domain
    for triple in sorted(assignments - problem.domain_set, key=term_key):
        yield ConstraintViolation(
            RULE_A3_EXTRA,
            (triple,),
            f"assignment {_pv_text(triple)} is outside the ground domain",
        )

    def assigned_types(component: str) -> list[Term]:
        types = values_by_cell.get((component, "type"), set())
        return sorted(
            (t for t in types if (component, "type", t) in problem.domain_set),
            key=term_key,
        )

    # A3_extra: values the assigned type does not predefine
    for component in present_sorted:
        for type_name in assigned_types(component):
            predefined = problem.pv_pairs_of(type_name)
            actual = {
                (p, v)
                for p, v in pairs_by_component[component]
                if p != "type" and (component, p, v) in problem.domain_set
            }
            for prop, value in sorted(actual - predefined, key=term_key):
                yield ConstraintViolation(
                    RULE_A3_EXTRA,
                    ((component, prop, value), type_name),
                    f"type {term_text(type_name)} does not predefine "
                    f"{_pv_text((component, prop, value))}",
                )

    # A3_missing: predefined values of the assigned type that are unassigned
    for component in present_sorted:
        for type_name in assigned_types(component):
            for prop, value in sorted(problem.pv_pairs_of(type_name), key=term_key):
                if (prop, value) not in pairs_by_component[component]:
                    yield ConstraintViolation(
                        RULE_A3_MISSING,
                        ((component, prop, value), type_name),
                        f"type {term_text(type_name)} predefines "
                        f"{_pv_text((component, prop, value))}, which is unassigned",
                    )

    # A4: mandatory non-type properties
    for component in present_sorted:
        for prop in problem.mandatory_by_component.get(component, ()):
            if prop != "type" and (component, prop) not in values_by_cell:
                yield ConstraintViolation(
                    RULE_A4,
                    (component, prop),
                    f"mandatory property {prop!r} of {component!r} is unassigned",
                )

    # R1: component requires component
    for rule in problem.require_component:
        if rule.subject in present and rule.required not in present:
            yield ConstraintViolation(
                RULE_R1,
                (rule.subject, rule.required),
                f"{rule.subject!r} requires {rule.required!r}, which is absent",
                origin=rule.origin,
            )

    # R2a: component requires a property value
    for component, pv in problem.require_component_pv:
        if component in present and not assigned(pv):
            yield ConstraintViolation(
                RULE_R2A,
                (component, pv),
                f"{component!r} requires {_pv_text(pv)}, which is unassigned",
            )

    # R2b: property value requires a component
    for pv, component in problem.require_pv_component:
        if assigned(pv) and component not in present:
            yield ConstraintViolation(
                RULE_R2B,
                (pv, component),
                f"{_pv_text(pv)} requires {component!r}, which is absent",
            )

    # R3: property value requires a property value
    for left, right in problem.require_pv_pv:
        if assigned(left) and not assigned(right):
            yield ConstraintViolation(
                RULE_R3,
                (left, right),
                f"{_pv_text(left)} requires {_pv_text(right)}, which is unassigned",
            )

    # I1: incompatible components
    for c1, c2 in problem.incompatible_components:
        if c1 in present and c2 in present:
            yield ConstraintViolation(
                RULE_I1,
                (c1, c2),
                f"{c1!r} and {c2!r} are incompatible but both present",
            )

    # I2: component incompatible with a property value
    for component, pv in problem.incompatible_component_pv:
        if component in present and assigned(pv):
            yield ConstraintViolation(
                RULE_I2,
                (component, pv),
                f"{component!r} is incompatible with {_pv_text(pv)}",
            )

    # I3: incompatible property values
    for left, right in problem.incompatible_pv_pv:
        if assigned(left) and assigned(right):
            yield ConstraintViolation(
                RULE_I3,
                (left, right),
                f"{_pv_text(left)} is incompatible with {_pv_text(right)}",
            )

    # U1-U4: user requirements
    for polarity, target in problem.user_requirements:
        if isinstance(target, tuple):
            if polarity == "req" and not assigned(target):
                yield ConstraintViolation(
                    RULE_U2,
                    (target,),
                    f"user requires {_pv_text(target)}, which is unassigned",
                )
            if polarity == "nreq" and assigned(target):
                yield ConstraintViolation(
                    RULE_U4,
                    (target,),
                    f"user excludes {_pv_text(target)}, which is assigned",
                )
        else:
            if polarity == "req" and target not in present:
                yield ConstraintViolation(
                    RULE_U1,
                    (target,),
                    f"user requires component {target!r}, which is absent",
                )
            if polarity == "nreq" and target in present:
                yield ConstraintViolation(
                    RULE_U3,
                    (target,),
                    f"user excludes component {target!r}, which is present",
                )


def check(
    problem: ConfigurationProblem, candidate: Iterable[PropertyValue]
) -> list[ConstraintViolation]:
    """All violations of a candidate assignment; empty iff it is a solution."""
    return list(iter_violations(problem, candidate))


def satisfies(problem: ConfigurationProblem, candidate: Iterable[PropertyValue]) -> bool:
    """True iff the candidate violates nothing (stops at the first hit)."""
    return next(iter_violations(problem, candidate), None) is None


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

_ABSENT = None  # component state: absent, or a type name


class _Search:
    """Backtracking enumeration over per-component states.

    State of a component is either absent or one feasible type; choosing a
    type pins the full predefined assignment block (the exactness rule), so
    nothing below the type level is ever branched on.
    """

    def __init__(self, problem: ConfigurationProblem, options: SolveOptions):
        self.problem = problem
        self.options = options
        self.solutions: list[Solution] = []
        self.nodes = 0
        self.budget_hit = False
        self.capped = False
        self.deadline = (
            time.monotonic() + options.time_budget if options.time_budget else None
        )
        self.atoms: dict[tuple[str, Term], frozenset[PropertyValue]] = {}
        for component in problem.components:
            for type_name in problem.feasible_types(component):
                self.atoms[(component, type_name)] = problem.atoms_for(component, type_name)
        self.limit = 0 if options.minimal_only else options.max_models

    def supports(self, component: str, state, pv: PropertyValue) -> bool:
        return state is not _ABSENT and pv in self.atoms[(component, state)]

    def initial_candidates(self) -> dict[str, list]:
        """Per-component state lists after applying the user requirements.

        Requirements naming unknown components are skipped here; the caller
        rejects unsatisfiable ones up front. Lists may come back empty, which
        the caller reads as UNSAT.
        """
        cands: dict[str, list] = {
            c: [_ABSENT, *self.problem.feasible_types(c)] for c in self.problem.components
        }
        for polarity, target in self.problem.user_requirements:
            component = target[0] if isinstance(target, tuple) else target
            if component not in cands:
                continue
            if isinstance(target, tuple):
                if polarity == "req":
                    cands[component] = [
                        s for s in cands[component] if self.supports(component, s, target)
                    ]
                else:
                    cands[component] = [
                        s for s in cands[component] if not self.supports(component, s, target)
                    ]
            else:
                if polarity == "req":
                    cands[component] = [s for s in cands[component] if s is not _ABSENT]
                else:
                    cands[component] = [s for s in cands[component] if s is _ABSENT]
        return cands

    def propagate(self, cands: dict[str, list]) -> bool:
        """Prune states that no completion can use; False on a wipeout."""
        problem = self.problem

        def present_certain(c: str) -> bool:
            return bool(cands[c]) and _ABSENT not in cands[c]

        def absent_certain(c: str) -> bool:
            return cands[c] == [_ABSENT]

        def pv_certain(pv: PropertyValue) -> bool:
            c = pv[0]
            return bool(cands[c]) and all(self.supports(c, s, pv) for s in cands[c])

        def pv_impossible(pv: PropertyValue) -> bool:
            c = pv[0]
            return not any(self.supports(c, s, pv) for s in cands[c])

        def restrict(c: str, keep) -> bool:
            kept = [s for s in cands[c] if keep(s)]
            if len(kept) != len(cands[c]):
                cands[c] = kept
                return True
            return False

        changed = True
        while changed:
            changed = False
            for rule in problem.require_component:
                if present_certain(rule.subject):
                    changed |= restrict(rule.required, lambda s: s is not _ABSENT)
                if absent_certain(rule.required):
                    changed |= restrict(rule.subject, lambda s: s is _ABSENT)
            for component, pv in problem.require_component_pv:
                if present_certain(component):
                    changed |= restrict(pv[0], lambda s: self.supports(pv[0], s, pv))
                if pv_impossible(pv):
                    changed |= restrict(component, lambda s: s is _ABSENT)
            for pv, component in problem.require_pv_component:
                if pv_certain(pv):
                    changed |= restrict(component, lambda s: s is not _ABSENT)
                if absent_certain(component):
                    changed |= restrict(pv[0], lambda s: not self.supports(pv[0], s, pv))
            for left, right in problem.require_pv_pv:
                if pv_certain(left):
                    changed |= restrict(right[0], lambda s: self.supports(right[0], s, right))
                if pv_impossible(right):
                    changed |= restrict(left[0], lambda s: not self.supports(left[0], s, left))
            for c1, c2 in problem.incompatible_components:
                if present_certain(c1):
                    changed |= restrict(c2, lambda s: s is _ABSENT)
                if present_certain(c2):
                    changed |= restrict(c1, lambda s: s is _ABSENT)
            for component, pv in problem.incompatible_component_pv:
                if present_certain(component):
                    changed |= restrict(pv[0], lambda s: not self.supports(pv[0], s, pv))
                if pv_certain(pv):
                    changed |= restrict(component, lambda s: s is _ABSENT)
            for left, right in problem.incompatible_pv_pv:
                if pv_certain(left):
                    changed |= restrict(right[0], lambda s: not self.supports(right[0], s, right))
                if pv_certain(right):
                    changed |= restrict(left[0], lambda s: not self.supports(left[0], s, left))
            if any(not states for states in cands.values()):
                return False
        return True

    def out_of_budget(self) -> bool:
        if self.nodes > self.options.node_budget:
            return True
        if self.deadline is not None and time.monotonic() > self.deadline:
            return True
        return False

    def run(self, cands: dict[str, list]) -> None:
        if not self.propagate(cands):
            return
        self.dfs(cands)

    def dfs(self, cands: dict[str, list]) -> bool:
        """Explore; True stops the whole search (cap or budget)."""
        undecided = [c for c, states in cands.items() if len(states) > 1]
        if not undecided:
            atoms: set[PropertyValue] = set()
            for component, states in cands.items():
                if states[0] is not _ABSENT:
                    atoms |= self.atoms[(component, states[0])]
            if satisfies(self.problem, atoms):
                self.solutions.append(Solution(frozenset(atoms)))
                if self.limit and len(self.solutions) >= self.limit:
                    self.capped = True
                    return True
            return False
        chosen = min(undecided, key=lambda c: (len(cands[c]), c))
        for state in cands[chosen]:
            self.nodes += 1
            if self.out_of_budget():
                self.budget_hit = True
                return True
            child = {c: list(states) for c, states in cands.items()}
            child[chosen] = [state]
            if self.propagate(child) and self.dfs(child):
                return True
        return False


def _conflicting_requirements(
    requirements: Iterable[tuple[str, Target]]
) -> list[ConstraintViolation]:
    polarity_by_target: dict[Target, set[str]] = {}
    for polarity, target in requirements:
        polarity_by_target.setdefault(target, set()).add(polarity)
    conflicts = []
    for target in sorted(
        (t for t, pols in polarity_by_target.items() if len(pols) > 1), key=term_key
    ):
        rendered = _pv_text(target) if isinstance(target, tuple) else repr(target)
        conflicts.append(
            ConstraintViolation(
                RULE_U_CONFLICT,
                (target,),
                f"{rendered} is both required and excluded",
            )
        )
    return conflicts


def solve(problem: ConfigurationProblem, options: SolveOptions | None = None) -> SolveResult:
    """Enumerate solutions; deterministic and never wrong about its status.

    The returned solutions are sorted by their canonical serialization. With
    ``max_models`` > 0 the search stops after that many solutions (status
    CAPPED); with ``minimal_only`` the full set is enumerated first, filtered
    to subset-minimal solutions, then truncated.
    """
    options = options or SolveOptions()
    effective = problem.with_user_requirements(options.extra_requirements)

    conflicts = _conflicting_requirements(effective.user_requirements)
    if conflicts:
        return SolveResult(UNSAT, (), tuple(conflicts))

    unknown_required: list[ConstraintViolation] = []
    for polarity, target in effective.user_requirements:
        if polarity != "req":
            continue  # excluding an unknown component holds vacuously
        if isinstance(target, tuple):
            if target[0] not in effective.component_set:
                unknown_required.append(
                    ConstraintViolation(
                        RULE_U2,
                        (target,),
                        f"user requires {_pv_text(target)}, but component "
                        f"{target[0]!r} does not exist",
                    )
                )
        elif target not in effective.component_set:
            unknown_required.append(
                ConstraintViolation(
                    RULE_U1,
                    (target,),
                    f"user requires component {target!r}, which does not exist",
                )
            )
    if unknown_required:
        return SolveResult(UNSAT, (), tuple(unknown_required))

    search = _Search(effective, options)
    cands = search.initial_candidates()
    if any(not states for states in cands.values()):
        return SolveResult(UNSAT, ())

    search.run(cands)

    solutions = sorted(search.solutions, key=Solution.sort_key)
    if search.budget_hit:
        return SolveResult(BUDGET_EXCEEDED, tuple(solutions))

    truncated = False
    if options.minimal_only:
        solutions = sorted(minimal_filter(solutions), key=Solution.sort_key)
    if options.max_models and len(solutions) > options.max_models:
        solutions = solutions[: options.max_models]
        truncated = True

    if search.capped or truncated:
        return SolveResult(CAPPED, tuple(solutions))
    if solutions:
        return SolveResult(SAT, tuple(solutions))
    return SolveResult(UNSAT, ())


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------

def oracle_cost(problem: ConfigurationProblem) -> int:
    """Number of raw candidates the brute-force enumeration would visit."""
    cells: dict[tuple[str, str], int] = {}
    for component, prop, _ in problem.ground_domain:
        cells[(component, prop)] = cells.get((component, prop), 0) + 1
    cost = 1
    for count in cells.values():
        cost *= count + 1
        if cost > ORACLE_CAP:
            return cost
    return cost


def brute_force_solve(problem: ConfigurationProblem) -> frozenset[Solution]:
    """Exhaustive reference enumeration: every per-cell choice, then check.

    Each (component, property) cell independently takes either no value or
    one of its domain values; every combination is filtered through the
    checker. Intended as the conformance oracle at desk scale; refuses with
    CapExceededError beyond ORACLE_CAP combinations.
    """
    if oracle_cost(problem) > ORACLE_CAP:
        raise CapExceededError(
            f"brute force refused: more than {ORACLE_CAP} candidate assignments"
        )
    cells: dict[tuple[str, str], list[Term]] = {}
    for component, prop, value in problem.ground_domain:
        cells.setdefault((component, prop), []).append(value)
    cell_keys = sorted(cells)
    choice_lists = [[None, *sorted(cells[key], key=term_key)] for key in cell_keys]

    found: set[Solution] = set()
    for picks in itertools.product(*choice_lists):
        candidate = frozenset(
            (component, prop, value)
            for (component, prop), value in zip(cell_keys, picks)
            if value is not None
        )
        if satisfies(problem, candidate):
            found.add(Solution(candidate))
    return frozenset(found)


# ---------------------------------------------------------------------------
# What-if probing and minimality
# ---------------------------------------------------------------------------

def _probe(
    problem: ConfigurationProblem,
    options: SolveOptions,
    extra: tuple[tuple[str, Target], ...],
) -> bool:
    probe_options = replace(
        options,
        max_models=1,
        minimal_only=False,
        extra_requirements=options.extra_requirements + extra,
    )
    result = solve(problem, probe_options)
    if result.solutions:
        return True
    if result.status == BUDGET_EXCEEDED:
        raise BudgetExceededError("satisfiability probe exhausted its search budget")
    return False


def consistent_values(
    problem: ConfigurationProblem,
    options: SolveOptions,
    component: str,
    prop: str,
) -> WhatIfResult:
    """Which values of one cell keep the problem satisfiable right now.

    Runs one satisfiability probe per domain value of the cell under the
    current requirements, plus presence probes for the component itself.
    Raises ValueError when the cell has an empty ground domain.
    """
    values = problem.domain_values(component, prop)
    if not values:
        raise ValueError(f"({component}, {prop}) has an empty ground domain")
    good = tuple(
        v for v in values if _probe(problem, options, (("req", (component, prop, v)),))
    )
    may_be_absent = _probe(problem, options, (("nreq", component),))
    satisfiable_at_all = bool(good) or may_be_absent or _probe(problem, options, ())
    must_be_present = satisfiable_at_all and not may_be_absent
    return WhatIfResult(values=good, may_be_absent=may_be_absent, must_be_present=must_be_present)


def minimal_filter(solutions: Iterable[Solution]) -> set[Solution]:
    """Keep the solutions whose assignment set is subset-minimal."""
    pool = list(solutions)
    return {
        s
        for s in pool
        if not any(other.assignments < s.assignments for other in pool)
    }
