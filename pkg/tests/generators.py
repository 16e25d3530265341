"""Seeded random generation of fact bases and desk-scale instances.

Two generators with different purposes:

* random_factbase: arbitrary schema-valid content, including dangling
  references. Exercises parsing and serialization only.
* random_instance: always grounds cleanly and stays small enough for the
  brute-force engine. Exercises grounding and solving.
"""

from __future__ import annotations

import random

from prodconf.factlang import FactBase, PropertyValue, Target
from prodconf.grounding import ConfigurationProblem, ground
from prodconf.solver import oracle_cost

COMPONENT_POOL = ["c1", "c2", "c3", "c4", "c5", "c6"]
TYPE_POOL = ["t1", "t2", "t3", "t4", "t5", "t6", "t7", "t8"]
PROPERTY_POOL = ["color", "size", "grade"]
VALUE_POOL = ["red", "blue", 1, 2]


def _pv(rng: random.Random, components: list[str]) -> PropertyValue:
    return (
        rng.choice(components),
        rng.choice(PROPERTY_POOL),
        rng.choice(VALUE_POOL),
    )


def random_factbase(rng: random.Random) -> FactBase:
    """Arbitrary schema-valid fact base (may contain dangling references)."""
    components = rng.sample(COMPONENT_POOL, rng.randint(0, len(COMPONENT_POOL)))

    def some(maker, most: int):
        return frozenset(maker() for _ in range(rng.randint(0, most)))

    if components:
        type_domains = some(
            lambda: (rng.choice(components), rng.choice(TYPE_POOL + [7, 9])), 8
        )
        cc = lambda: (rng.choice(components), rng.choice(components))
        cp = lambda: (rng.choice(components), _pv(rng, components))
        pc = lambda: (_pv(rng, components), rng.choice(components))
        pp = lambda: (_pv(rng, components), _pv(rng, components))
        user = lambda: (
            rng.choice(["req", "nreq"]),
            rng.choice(components) if rng.random() < 0.5 else _pv(rng, components),
        )
        partof = lambda: (
            rng.choice(components),
            rng.choice(components),
            rng.choice(["mandatory", "optional"]),
        )
        mand = lambda: (rng.choice(components), rng.choice(PROPERTY_POOL))
    else:
        empty = frozenset()
        return FactBase(
            property_values=frozenset(
                (rng.choice(TYPE_POOL), rng.choice(PROPERTY_POOL), rng.choice(VALUE_POOL))
                for _ in range(rng.randint(0, 4))
            )
        )

    return FactBase(
        type_domains=type_domains,
        property_values=some(
            lambda: (rng.choice(TYPE_POOL), rng.choice(PROPERTY_POOL), rng.choice(VALUE_POOL)),
            6,
        ),
        mandatory_properties=some(mand, 3),
        partonomy=some(partof, 4),
        incompatible_cc=some(cc, 2),
        incompatible_cp=some(cp, 2),
        incompatible_pp=some(pp, 2),
        require_cc=some(cc, 2),
        require_cp=some(cp, 2),
        require_pc=some(pc, 2),
        require_pp=some(pp, 2),
        user_requirements=some(user, 3),
    )


def random_instance(
    rng: random.Random,
    max_components: int = 6,
    max_types: int = 3,
    max_props: int = 3,
    cost_limit: int = 20_000,
    allow_user_req: bool = True,
) -> tuple[FactBase, ConfigurationProblem]:
    """A groundable instance whose brute-force cost stays under cost_limit."""
    while True:
        facts = _draw_instance(rng, max_components, max_types, max_props, allow_user_req)
        problem = ground(facts)
        if oracle_cost(problem) <= cost_limit:
            return facts, problem


def _draw_instance(
    rng: random.Random,
    max_components: int,
    max_types: int,
    max_props: int,
    allow_user_req: bool,
) -> FactBase:
    n = rng.randint(1, max_components)
    components = COMPONENT_POOL[:n]

    type_domains: set[tuple[str, str]] = set()
    types_of: dict[str, list[str]] = {}
    for component in components:
        k = rng.randint(1, max_types)
        picked = rng.sample(TYPE_POOL, k)
        types_of[component] = picked
        type_domains.update((component, t) for t in picked)

    used_types = sorted({t for ts in types_of.values() for t in ts})
    property_values: set[tuple[str, str, object]] = set()
    pairs_of_type: dict[str, set[tuple[str, object]]] = {t: set() for t in used_types}
    for type_name in used_types:
        for prop in rng.sample(PROPERTY_POOL, rng.randint(0, max_props)):
            value = rng.choice(VALUE_POOL)
            property_values.add((type_name, prop, value))
            pairs_of_type[type_name].add((prop, value))
            if rng.random() < 0.05:  # occasionally an internally inconsistent type
                other = rng.choice([v for v in VALUE_POOL if v != value])
                property_values.add((type_name, prop, other))
                pairs_of_type[type_name].add((prop, other))

    def ground_pv() -> PropertyValue | None:
        component = rng.choice(components)
        type_name = rng.choice(types_of[component])
        pairs = sorted(pairs_of_type[type_name], key=str)
        if not pairs or rng.random() < 0.15:
            # a known component with a value outside its derived domain
            return (component, rng.choice(PROPERTY_POOL), rng.choice(VALUE_POOL))
        prop, value = rng.choice(pairs)
        return (component, prop, value)

    partonomy: set[tuple[str, str, str]] = set()
    for i in range(1, n):
        if rng.random() < 0.5:
            whole = components[rng.randrange(i)]
            partonomy.add((whole, components[i], rng.choice(["mandatory", "optional"])))

    mandatory_properties: set[tuple[str, str]] = set()
    for component in components:
        if rng.random() < 0.2:
            props = sorted({p for t in types_of[component] for p, _ in pairs_of_type[t]})
            if props:
                mandatory_properties.add((component, rng.choice(props)))

    def pair_cc() -> tuple[str, str]:
        return rng.choice(components), rng.choice(components)

    require_cc = {pair_cc() for _ in range(rng.randint(0, 2))}
    incompatible_cc = {pair_cc() for _ in range(rng.randint(0, 2))}
    require_cp = {(rng.choice(components), ground_pv()) for _ in range(rng.randint(0, 2))}
    require_pc = {(ground_pv(), rng.choice(components)) for _ in range(rng.randint(0, 2))}
    require_pp = {(ground_pv(), ground_pv()) for _ in range(rng.randint(0, 2))}
    incompatible_cp = {(rng.choice(components), ground_pv()) for _ in range(rng.randint(0, 2))}
    incompatible_pp = {(ground_pv(), ground_pv()) for _ in range(rng.randint(0, 2))}

    user_requirements: set[tuple[str, Target]] = set()
    if allow_user_req:
        for _ in range(rng.randint(0, 2)):
            polarity = rng.choice(["req", "nreq", "nreq"])
            target: Target = (
                rng.choice(components) if rng.random() < 0.6 else ground_pv()
            )
            user_requirements.add((polarity, target))

    return FactBase(
        type_domains=frozenset(type_domains),
        property_values=frozenset(property_values),
        mandatory_properties=frozenset(mandatory_properties),
        partonomy=frozenset(partonomy),
        incompatible_cc=frozenset(incompatible_cc),
        incompatible_cp=frozenset(incompatible_cp),
        incompatible_pp=frozenset(incompatible_pp),
        require_cc=frozenset(require_cc),
        require_cp=frozenset(require_cp),
        require_pc=frozenset(require_pc),
        require_pp=frozenset(require_pp),
        user_requirements=frozenset(user_requirements),
    )


def random_additional_constraint(
    rng: random.Random, facts: FactBase
) -> FactBase | None:
    """facts plus one new requirement/incompatibility/user fact, or None."""
    components = sorted({c for c, _ in facts.type_domains})
    if not components:
        return None

    domain_pairs = sorted(facts.type_domains)

    def any_pv() -> PropertyValue:
        component, type_name = rng.choice(domain_pairs)
        pairs = sorted(
            ((p, v) for t, p, v in facts.property_values if t == type_name), key=str
        )
        if pairs and rng.random() < 0.8:
            prop, value = rng.choice(pairs)
            return (component, prop, value)
        return (component, rng.choice(PROPERTY_POOL), rng.choice(VALUE_POOL))

    kind = rng.choice(
        ["require_cc", "require_cp", "require_pc", "require_pp",
         "incompatible_cc", "incompatible_cp", "incompatible_pp",
         "user_req", "user_nreq"]
    )
    from dataclasses import replace

    if kind == "require_cc":
        entry = (rng.choice(components), rng.choice(components))
        return replace(facts, require_cc=facts.require_cc | {entry})
    if kind == "require_cp":
        entry = (rng.choice(components), any_pv())
        return replace(facts, require_cp=facts.require_cp | {entry})
    if kind == "require_pc":
        entry = (any_pv(), rng.choice(components))
        return replace(facts, require_pc=facts.require_pc | {entry})
    if kind == "require_pp":
        entry = (any_pv(), any_pv())
        return replace(facts, require_pp=facts.require_pp | {entry})
    if kind == "incompatible_cc":
        entry = (rng.choice(components), rng.choice(components))
        return replace(facts, incompatible_cc=facts.incompatible_cc | {entry})
    if kind == "incompatible_cp":
        entry = (rng.choice(components), any_pv())
        return replace(facts, incompatible_cp=facts.incompatible_cp | {entry})
    if kind == "incompatible_pp":
        entry = (any_pv(), any_pv())
        return replace(facts, incompatible_pp=facts.incompatible_pp | {entry})
    polarity = "req" if kind == "user_req" else "nreq"
    target: Target = rng.choice(components) if rng.random() < 0.6 else any_pv()
    entry = (polarity, target)
    return replace(facts, user_requirements=facts.user_requirements | {entry})
