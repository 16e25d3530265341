"""Grounding: turn a FactBase into a checkable ConfigurationProblem.

Preprocessing performs four derivations:

1. Component property domains are generated from the predefined property
   values of the component's candidate types.
2. ``type`` is injected as a mandatory property of every component.
3. Every ``partof(W, P, _)`` yields a part-requires-whole rule (P needs W).
4. Every ``partof(W, P, mandatory)`` additionally yields a
   whole-requires-part rule (W needs P).

The resulting problem is immutable and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .factlang import (
    ERROR,
    TYPE_PROPERTY,
    WARNING,
    Diagnostic,
    FactBase,
    PropertyValue,
    Target,
    Term,
    fact_text,
    term_key,
    term_text,
)

# Origin labels for component-requires-component rules.
ORIGIN_EXPLICIT = "explicit"
ORIGIN_PART_NEEDS_WHOLE = "part-requires-whole"
ORIGIN_WHOLE_NEEDS_PART = "whole-requires-mandatory-part"


class RequireComponent(NamedTuple):
    """subject present => required present, with its provenance."""

    subject: str
    required: str
    origin: str
    source: str  # canonical text of the originating fact


class InstanceError(Exception):
    """Raised by ground() when the fact base has validation errors."""

    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = diagnostics
        errors = [d for d in diagnostics if d.severity == ERROR]
        super().__init__(
            f"{len(errors)} instance error(s): " + "; ".join(d.message for d in errors[:3])
        )


@dataclass(frozen=True)
class ConfigurationProblem:
    """A grounded configuration problem.

    All collections are canonically sorted tuples, so two equal fact bases
    ground to problems that compare equal and iterate identically.
    """

    components: tuple[str, ...]
    #: every assignable (component, property, value) triple
    ground_domain: tuple[PropertyValue, ...]
    #: (component, property) pairs that must be assigned when present
    mandatory: tuple[tuple[str, str], ...]
    #: predefined (type, property, value) triples of live types
    property_values: tuple[tuple[Term, str, Term], ...]
    require_component: tuple[RequireComponent, ...]
    require_component_pv: tuple[tuple[str, PropertyValue], ...]
    require_pv_component: tuple[tuple[PropertyValue, str], ...]
    require_pv_pv: tuple[tuple[PropertyValue, PropertyValue], ...]
    incompatible_components: tuple[tuple[str, str], ...]
    incompatible_component_pv: tuple[tuple[str, PropertyValue], ...]
    incompatible_pv_pv: tuple[tuple[PropertyValue, PropertyValue], ...]
    user_requirements: tuple[tuple[str, Target], ...]

    # -- derived lookups (not part of equality) -----------------------------

    @cached_property
    def domain_set(self) -> frozenset[PropertyValue]:
        return frozenset(self.ground_domain)

    @cached_property
    def component_set(self) -> frozenset[str]:
        return frozenset(self.components)

    @cached_property
    def mandatory_by_component(self) -> dict[str, tuple[str, ...]]:
        by_comp: dict[str, list[str]] = {c: [] for c in self.components}
        for component, prop in self.mandatory:
            by_comp.setdefault(component, []).append(prop)
        return {c: tuple(sorted(props)) for c, props in by_comp.items()}

    @cached_property
    def types_by_component(self) -> dict[str, tuple[Term, ...]]:
        by_comp: dict[str, list[Term]] = {c: [] for c in self.components}
        for component, prop, value in self.ground_domain:
            if prop == TYPE_PROPERTY:
                by_comp[component].append(value)
        return {c: tuple(sorted(ts, key=term_key)) for c, ts in by_comp.items()}

    @cached_property
    def pv_pairs_by_type(self) -> dict[Term, frozenset[tuple[str, Term]]]:
        pairs: dict[Term, set[tuple[str, Term]]] = {}
        for type_name, prop, value in self.property_values:
            pairs.setdefault(type_name, set()).add((prop, value))
        return {t: frozenset(ps) for t, ps in pairs.items()}

    def pv_pairs_of(self, type_name: Term) -> frozenset[tuple[str, Term]]:
        return self.pv_pairs_by_type.get(type_name, frozenset())

    def atoms_for(self, component: str, type_name: Term) -> frozenset[PropertyValue]:
        """The full assignment a component carries once its type is fixed."""
        atoms = {(component, TYPE_PROPERTY, type_name)}
        atoms.update((component, p, v) for p, v in self.pv_pairs_of(type_name))
        return frozenset(atoms)

    def feasible_types(self, component: str) -> tuple[Term, ...]:
        """Types whose forced assignment set is internally consistent.

        A type is infeasible for a component when its predefined values give
        one property two values, or when a mandatory property of the
        component is missing from the type's property set.
        """
        needed = {p for p in self.mandatory_by_component.get(component, ()) if p != TYPE_PROPERTY}
        feasible = []
        for type_name in self.types_by_component.get(component, ()):
            pairs = self.pv_pairs_of(type_name)
            props = [p for p, _ in pairs]
            if len(props) != len(set(props)):
                continue
            if not needed <= set(props):
                continue
            feasible.append(type_name)
        return tuple(feasible)

    def domain_values(self, component: str, prop: str) -> tuple[Term, ...]:
        values = {v for c, p, v in self.ground_domain if c == component and p == prop}
        return tuple(sorted(values, key=term_key))

    def with_user_requirements(
        self, extra: Iterable[tuple[str, Target]]
    ) -> "ConfigurationProblem":
        """A copy with extra user requirements merged in (set union)."""
        merged = set(self.user_requirements) | set(extra)
        if merged == set(self.user_requirements):
            return self
        from dataclasses import replace

        return replace(self, user_requirements=_sorted_user_requirements(merged))


def _sorted_user_requirements(reqs: Iterable[tuple[str, Target]]):
    return tuple(sorted(reqs, key=lambda r: (r[0], term_key(r[1]))))


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def _component_references(facts: FactBase) -> list[tuple[str, str]]:
    """Every (component, citing fact text) pair outside the type seeds."""
    refs: list[tuple[str, str]] = []

    def pv_ref(pv: PropertyValue, text: str) -> None:
        refs.append((pv[0], text))

    for whole, part, kind in facts.partonomy:
        text = fact_text("partof", (whole, part, kind))
        refs.append((whole, text))
        refs.append((part, text))
    for component, prop in facts.mandatory_properties:
        refs.append((component, fact_text("mandatory_property", (component, prop))))
    for c1, c2 in facts.incompatible_cc:
        text = fact_text("incompatible_com_com", (c1, c2))
        refs.append((c1, text))
        refs.append((c2, text))
    for component, pv in facts.incompatible_cp:
        text = fact_text("incompatible_com_pv", (component, pv))
        refs.append((component, text))
        pv_ref(pv, text)
    for left, right in facts.incompatible_pp:
        text = fact_text("incompatible_pv_pv", (left, right))
        pv_ref(left, text)
        pv_ref(right, text)
    for c1, c2 in facts.require_cc:
        text = fact_text("require_com_com", (c1, c2))
        refs.append((c1, text))
        refs.append((c2, text))
    for component, pv in facts.require_cp:
        text = fact_text("require_com_pv", (component, pv))
        refs.append((component, text))
        pv_ref(pv, text)
    for pv, component in facts.require_pc:
        text = fact_text("require_com_pv", (pv, component))
        pv_ref(pv, text)
        refs.append((component, text))
    for left, right in facts.require_pp:
        text = fact_text("require_pv_pv", (left, right))
        pv_ref(left, text)
        pv_ref(right, text)
    for polarity, target in facts.user_requirements:
        text = fact_text("user_com", (polarity, target))
        if isinstance(target, tuple):
            pv_ref(target, text)  # type: ignore[arg-type]
        else:
            refs.append((target, text))
    return refs


def _partonomy_cycle(facts: FactBase) -> list[str] | None:
    """A component cycle in the whole->part graph, or None."""
    children: dict[str, list[str]] = {}
    for whole, part, _ in sorted(facts.partonomy):
        children.setdefault(whole, []).append(part)

    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[str, int] = {}
    stack_path: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GRAY
        stack_path.append(node)
        for child in children.get(node, ()):
            state = color.get(child, WHITE)
            if state == GRAY:
                return stack_path[stack_path.index(child):] + [child]
            if state == WHITE:
                cycle = visit(child)
                if cycle is not None:
                    return cycle
        stack_path.pop()
        color[node] = BLACK
        return None

    for node in sorted(children):
        if color.get(node, WHITE) == WHITE:
            cycle = visit(node)
            if cycle is not None:
                return cycle
    return None


def validate(facts: FactBase, strict_mandatory: bool = True) -> list[Diagnostic]:
    """Full diagnostic sweep of a fact base; never raises.

    A fact base with zero errors is guaranteed to ground successfully.
    With ``strict_mandatory`` off, a mandatory property that no candidate
    type can supply is downgraded from error to warning.
    """
    diagnostics: list[Diagnostic] = []
    components = {c for c, _ in facts.type_domains}
    live_types = {t for _, t in facts.type_domains}

    for component, cited_in in sorted(set(_component_references(facts))):
        if component not in components:
            diagnostics.append(
                Diagnostic(
                    ERROR,
                    "UNKNOWN_COMPONENT",
                    f"component {component!r} has no type domain",
                    fact=cited_in,
                )
            )

    for type_name, prop, value in sorted(facts.property_values, key=term_key):
        text = fact_text("property_val", (type_name, prop, value))
        if prop == TYPE_PROPERTY:
            diagnostics.append(
                Diagnostic(
                    ERROR,
                    "RESERVED_PROPERTY",
                    f"property {TYPE_PROPERTY!r} is reserved for type assignment",
                    fact=text,
                )
            )
        elif type_name not in live_types:
            diagnostics.append(
                Diagnostic(
                    WARNING,
                    "DEAD_TYPE",
                    f"type {term_text(type_name)} is not a candidate type of any component",
                    fact=text,
                )
            )

    cycle = _partonomy_cycle(facts)
    if cycle is not None:
        diagnostics.append(
            Diagnostic(
                ERROR,
                "PARTONOMY_CYCLE",
                "partonomy contains a cycle: " + " -> ".join(cycle),
                fact=" -> ".join(cycle),
            )
        )

    props_by_component: dict[str, set[str]] = {c: set() for c in components}
    for component, type_name in facts.type_domains:
        for t, prop, _ in facts.property_values:
            if t == type_name:
                props_by_component[component].add(prop)
    for component, prop in sorted(facts.mandatory_properties):
        if component not in components or prop == TYPE_PROPERTY:
            continue
        if prop not in props_by_component[component]:
            diagnostics.append(
                Diagnostic(
                    ERROR if strict_mandatory else WARNING,
                    "IMPOSSIBLE_MANDATORY",
                    f"no candidate type of {component!r} supplies mandatory "
                    f"property {prop!r}",
                    fact=fact_text("mandatory_property", (component, prop)),
                )
            )

    return diagnostics


# ---------------------------------------------------------------------------
# Grounding
# ---------------------------------------------------------------------------

def ground(facts: FactBase, strict_mandatory: bool = True) -> ConfigurationProblem:
    """Ground a fact base; raises InstanceError when validation finds errors."""
    diagnostics = validate(facts, strict_mandatory=strict_mandatory)
    if any(d.severity == ERROR for d in diagnostics):
        raise InstanceError(diagnostics)

    components = sorted({c for c, _ in facts.type_domains})
    live_types = {t for _, t in facts.type_domains}

    pv_by_type: dict[Term, set[tuple[str, Term]]] = {}
    for type_name, prop, value in facts.property_values:
        if type_name in live_types:
            pv_by_type.setdefault(type_name, set()).add((prop, value))

    domain: set[PropertyValue] = set()
    for component, type_name in facts.type_domains:
        domain.add((component, TYPE_PROPERTY, type_name))
        for prop, value in pv_by_type.get(type_name, ()):
            domain.add((component, prop, value))

    mandatory = {(c, TYPE_PROPERTY) for c in components}
    mandatory.update(facts.mandatory_properties)

    require_component: set[RequireComponent] = set()
    for whole, part, kind in facts.partonomy:
        source = fact_text("partof", (whole, part, kind))
        require_component.add(RequireComponent(part, whole, ORIGIN_PART_NEEDS_WHOLE, source))
        if kind == "mandatory":
            require_component.add(
                RequireComponent(whole, part, ORIGIN_WHOLE_NEEDS_PART, source)
            )
    for c1, c2 in facts.require_cc:
        require_component.add(
            RequireComponent(c1, c2, ORIGIN_EXPLICIT, fact_text("require_com_com", (c1, c2)))
        )

    return ConfigurationProblem(
        components=tuple(components),
        ground_domain=tuple(sorted(domain, key=term_key)),
        mandatory=tuple(sorted(mandatory)),
        property_values=tuple(
            sorted(
                ((t, p, v) for t, ps in pv_by_type.items() for p, v in ps),
                key=term_key,
            )
        ),
        require_component=tuple(sorted(require_component)),
        require_component_pv=tuple(sorted(facts.require_cp, key=term_key)),
        require_pv_component=tuple(sorted(facts.require_pc, key=term_key)),
        require_pv_pv=tuple(sorted(facts.require_pp, key=term_key)),
        incompatible_components=tuple(sorted(facts.incompatible_cc)),
        incompatible_component_pv=tuple(sorted(facts.incompatible_cp, key=term_key)),
        incompatible_pv_pv=tuple(sorted(facts.incompatible_pp, key=term_key)),
        user_requirements=_sorted_user_requirements(facts.user_requirements),
    )


# ---------------------------------------------------------------------------
# Canonical report
# ---------------------------------------------------------------------------

def _pv_fields(pv: PropertyValue) -> list[str]:
    return [pv[0], pv[1], term_text(pv[2])]


def ground_report(problem: ConfigurationProblem) -> str:
    """Pipe-separated, lexicographically sorted dump for golden-file tests."""
    lines: list[str] = []
    for component in problem.components:
        lines.append(f"component|{component}")
    for component, prop, value in problem.ground_domain:
        lines.append(f"domain|{component}|{prop}|{term_text(value)}")
    for component, prop in problem.mandatory:
        lines.append(f"mandatory|{component}|{prop}")
    for rule in problem.require_component:
        lines.append(f"require_component|{rule.subject}|{rule.required}|{rule.origin}")
    for component, pv in problem.require_component_pv:
        lines.append("|".join(["require_component_pv", component] + _pv_fields(pv)))
    for pv, component in problem.require_pv_component:
        lines.append("|".join(["require_pv_component"] + _pv_fields(pv) + [component]))
    for left, right in problem.require_pv_pv:
        lines.append("|".join(["require_pv_pv"] + _pv_fields(left) + _pv_fields(right)))
    for c1, c2 in problem.incompatible_components:
        lines.append(f"incompatible_components|{c1}|{c2}")
    for component, pv in problem.incompatible_component_pv:
        lines.append("|".join(["incompatible_component_pv", component] + _pv_fields(pv)))
    for left, right in problem.incompatible_pv_pv:
        lines.append("|".join(["incompatible_pv_pv"] + _pv_fields(left) + _pv_fields(right)))
    for polarity, target in problem.user_requirements:
        if isinstance(target, tuple):
            lines.append("|".join(["user", polarity] + _pv_fields(target)))
        else:
            lines.append(f"user|{polarity}|{target}")
    return "".join(line + "\n" for line in sorted(lines))
