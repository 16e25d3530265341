"""Acceptance suite: the engine's exit criteria, one test per criterion.

Each test prints a single `criterion N PASS/FAIL` line (visible with -s).
Every expected value here is either stated directly by a minimal example or
was computed and frozen from the brute-force reference engine.
"""

from __future__ import annotations

import random
import time

from prodconf import (
    SAT,
    UNSAT,
    SolveOptions,
    brute_force_solve,
    check,
    ground,
    parse_program,
    serialize_factbase,
    solve,
)

from conftest import BIKE_CORE_ATOMS, BIKE_FORCED_CORE
from generators import (
    random_additional_constraint,
    random_factbase,
    random_instance,
)
from rulecases import RULE_CASES, flipped


def report(number: int, description: str, body) -> None:
    try:
        body()
    except BaseException:
        print(f"criterion {number} FAIL: {description}")
        raise
    print(f"criterion {number} PASS: {description}")


def assignment_sets(solutions) -> set[frozenset]:
    return {s.assignments for s in solutions}


def test_criterion_1_bike_golden(bike_problem):
    def body():
        start = time.perf_counter()
        result = solve(bike_problem, SolveOptions(max_models=0))
        elapsed = time.perf_counter() - start
        assert result.status == SAT
        assert result.solutions

        intersection = frozenset.intersection(
            *(s.assignments for s in result.solutions)
        )
        present_everywhere = frozenset.intersection(
            *(s.present for s in result.solutions)
        )
        # headline atoms, exactly as narrated
        assert BIKE_CORE_ATOMS <= intersection
        assert {"stand", "basket"} <= present_everywhere
        # the full forced core, frozen from the brute-force engine
        assert intersection == BIKE_FORCED_CORE
        assert elapsed < 1.0, f"took {elapsed:.3f}s"

    report(1, "bike golden solve with forced core intersection", body)


def test_criterion_2_oracle_equivalence():
    def body():
        start = time.perf_counter()
        for seed in range(200):
            rng = random.Random(1000 + seed)
            _, problem = random_instance(rng, cost_limit=10_000)
            result = solve(problem, SolveOptions(max_models=0))
            oracle = brute_force_solve(problem)
            assert result.status in (SAT, UNSAT)
            assert assignment_sets(result.solutions) == assignment_sets(oracle), (
                f"seed {seed}"
            )
        elapsed = time.perf_counter() - start
        assert elapsed < 60.0, f"took {elapsed:.1f}s"

    report(2, "solve equals brute force on 200 random instances", body)


def test_criterion_3_per_constraint_suite():
    def body():
        passed = 0
        for case in RULE_CASES:
            problem = ground(parse_program(case.source).factbase)
            violations = check(problem, case.candidate)
            assert len(violations) == 1, (case.name, violations)
            assert violations[0].rule == case.rule, case.name
            if case.origin is not None:
                assert violations[0].origin == case.origin, case.name
            source, candidate = flipped(case)
            after = check(ground(parse_program(source).factbase), candidate)
            assert after == [], (case.name, after)
            passed += 1
        assert passed == 18

    report(3, "18/18 per-constraint trigger/flip cases", body)


def test_criterion_4_monotonicity():
    def body():
        done = 0
        seed = 0
        while done < 50:
            rng = random.Random(2000 + seed)
            seed += 1
            facts, problem = random_instance(rng, cost_limit=6_000)
            extended = random_additional_constraint(rng, facts)
            if extended is None:
                continue
            before = assignment_sets(brute_force_solve(problem))
            after = assignment_sets(brute_force_solve(ground(extended)))
            assert after <= before, f"seed {seed - 1}"
            done += 1

    report(4, "adding a constraint never grows the solution set (50 pairs)", body)


def test_criterion_5_parser_round_trip():
    def body():
        for seed in range(500):
            factbase = random_factbase(random.Random(3000 + seed))
            text = serialize_factbase(factbase)
            parsed = parse_program(text)
            assert parsed.ok, (seed, parsed.diagnostics)
            assert parsed.factbase == factbase, seed
            assert serialize_factbase(parsed.factbase) == text, seed

    report(5, "parse/serialize identity and byte stability on 500 fact bases", body)


def test_criterion_6_vacuity():
    def body():
        for seed in range(60):
            rng = random.Random(4000 + seed)
            _, problem = random_instance(rng, cost_limit=6_000, allow_user_req=False)
            result = solve(problem, SolveOptions(max_models=0))
            assert result.status == SAT, seed
            assert frozenset() in assignment_sets(result.solutions), seed
            assert check(problem, frozenset()) == [], seed

    report(6, "empty solution always present without positive requirements", body)


def test_criterion_7_unsat_probe(bike_problem):
    def body():
        extra = (("req", ("rear_wheel", "size", 28)),)
        result = solve(bike_problem, SolveOptions(extra_requirements=extra))
        assert result.status == UNSAT
        effective = bike_problem.with_user_requirements(extra)
        assert brute_force_solve(effective) == frozenset()

    report(7, "28-inch rear wheel requirement is UNSAT for solve and oracle", body)
