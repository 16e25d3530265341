from __future__ import annotations

from pathlib import Path

import pytest

from prodconf import ground, parse_program

REPO_ROOT = Path(__file__).resolve().parent.parent
BIKE_INSTANCE = REPO_ROOT / "instances" / "bike.lp"

# The reference instance is fully forced: its single solution, confirmed by
# the brute-force engine, doubles as the intersection of all solutions.
BIKE_FORCED_CORE = frozenset(
    {
        ("basket", "type", "b1"),
        ("bike", "type", "city"),
        ("frame", "basket_support", "yes"),
        ("frame", "material", "aluminum"),
        ("frame", "type", "f1"),
        ("front_wheel", "material", "aluminum"),
        ("front_wheel", "size", 26),
        ("front_wheel", "type", "w2"),
        ("rear_wheel", "material", "aluminum"),
        ("rear_wheel", "size", 26),
        ("rear_wheel", "type", "w2"),
        ("stand", "type", "s1"),
    }
)

# The headline atoms every solution must contain (plus stand/basket presence).
BIKE_CORE_ATOMS = frozenset(
    {
        ("bike", "type", "city"),
        ("frame", "type", "f1"),
        ("frame", "material", "aluminum"),
        ("frame", "basket_support", "yes"),
        ("front_wheel", "type", "w2"),
        ("front_wheel", "size", 26),
        ("rear_wheel", "type", "w2"),
        ("rear_wheel", "size", 26),
    }
)


@pytest.fixture(scope="session")
def bike_source() -> str:
    return BIKE_INSTANCE.read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def bike_factbase(bike_source):
    result = parse_program(bike_source)
    assert result.ok, result.diagnostics
    return result.factbase


@pytest.fixture(scope="session")
def bike_problem(bike_factbase):
    return ground(bike_factbase)
