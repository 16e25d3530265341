"""Command-line front end.

Exit codes: 0 solutions found / ok, 1 no solution, 2 usage error,
3 parse or validation error, 4 budget or enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .factlang import (
    CONSTANT_RE,
    FactBase,
    Target,
    parse_program,
    parse_solution,
)
from .grounding import ConfigurationProblem, InstanceError, ground, ground_report
from .solver import (
    BUDGET_EXCEEDED,
    UNSAT,
    CapExceededError,
    Solution,
    SolveOptions,
    brute_force_solve,
    check,
    solve,
)
from .wire import solution_json, violation_json

EXIT_OK = 0
EXIT_UNSAT = 1
EXIT_USAGE = 2
EXIT_INVALID = 3
EXIT_BUDGET = 4

_INTEGER_RE = re.compile(r"-?[0-9]+\Z")


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def parse_requirement_literal(text: str, polarity: str) -> tuple[str, Target]:
    """Parse a requirement literal: ``component`` or ``component.property=value``."""

    def constant(part: str, role: str) -> str:
        if not CONSTANT_RE.match(part):
            raise _CliError(EXIT_USAGE, f"invalid {role} {part!r} in requirement {text!r}")
        return part

    if "=" in text:
        cell, _, raw_value = text.partition("=")
        component, dot, prop = cell.partition(".")
        if not dot:
            raise _CliError(
                EXIT_USAGE,
                f"requirement {text!r} must look like component.property=value",
            )
        value = int(raw_value) if _INTEGER_RE.match(raw_value) else constant(raw_value, "value")
        return polarity, (constant(component, "component"), constant(prop, "property"), value)
    if "." in text:
        raise _CliError(
            EXIT_USAGE, f"requirement {text!r} names a property but no =value"
        )
    return polarity, constant(text, "component")


def _read_file(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _CliError(EXIT_USAGE, f"cannot read {path}: {exc.strerror or exc}")


def _load_factbase(path: str) -> FactBase:
    parsed = parse_program(_read_file(path))
    if not parsed.ok:
        for diag in parsed.diagnostics:
            print(f"{path}:{diag}", file=sys.stderr)
        raise _CliError(EXIT_INVALID, f"{path}: parse failed")
    return parsed.factbase


def _load_problem(path: str, strict_mandatory: bool) -> ConfigurationProblem:
    facts = _load_factbase(path)
    try:
        return ground(facts, strict_mandatory=strict_mandatory)
    except InstanceError as exc:
        for diag in exc.diagnostics:
            print(f"{path}:{diag}", file=sys.stderr)
        raise _CliError(EXIT_INVALID, f"{path}: invalid instance")


def _print_solutions_text(solutions: list[Solution]) -> None:
    for index, solution in enumerate(solutions):
        if index:
            print("----")
        sys.stdout.write(solution.canonical_text)


def _gather_requirements(args) -> tuple[tuple[str, Target], ...]:
    reqs = [parse_requirement_literal(lit, "req") for lit in args.require or []]
    reqs += [parse_requirement_literal(lit, "nreq") for lit in args.forbid or []]
    return tuple(reqs)


def _cmd_solve(args) -> int:
    if args.all and args.max_models is not None:
        raise _CliError(EXIT_USAGE, "--all and --max-models are mutually exclusive")
    max_models = 0 if args.all else (args.max_models if args.max_models is not None else 1)
    problem = _load_problem(args.instance, args.strict_mandatory)
    options = SolveOptions(
        max_models=max_models,
        minimal_only=args.minimal,
        extra_requirements=_gather_requirements(args),
        node_budget=args.node_budget,
        time_budget=args.time_budget,
    )
    result = solve(problem, options)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "status": result.status,
                    "solutions": [solution_json(s) for s in result.solutions],
                    "violations": [violation_json(v) for v in result.violations],
                },
                indent=2,
            )
        )
    else:
        _print_solutions_text(list(result.solutions))
        for violation in result.violations:
            print(f"{violation.rule}: {violation.message}", file=sys.stderr)
    print(f"{result.status}: {len(result.solutions)} solution(s)", file=sys.stderr)
    if result.status == BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_UNSAT if result.status == UNSAT else EXIT_OK


def _cmd_check(args) -> int:
    problem = _load_problem(args.instance, args.strict_mandatory)
    parsed = parse_solution(_read_file(args.solution))
    if not parsed.ok:
        for diag in parsed.diagnostics:
            print(f"{args.solution}:{diag}", file=sys.stderr)
        raise _CliError(EXIT_INVALID, f"{args.solution}: parse failed")
    violations = check(problem, parsed.assignments)
    if not violations:
        print("OK")
        return EXIT_OK
    for violation in violations:
        print(f"{violation.rule}: {violation.message}")
    return EXIT_UNSAT


def _cmd_ground(args) -> int:
    problem = _load_problem(args.instance, args.strict_mandatory)
    sys.stdout.write(ground_report(problem))
    return EXIT_OK


def _cmd_oracle(args) -> int:
    problem = _load_problem(args.instance, args.strict_mandatory)
    try:
        solutions = sorted(brute_force_solve(problem), key=Solution.sort_key)
    except CapExceededError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    _print_solutions_text(solutions)
    print(f"{len(solutions)} solution(s)", file=sys.stderr)
    return EXIT_OK if solutions else EXIT_UNSAT


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static)
    try:
        uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        print(f"cannot serve on port {args.port}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prodconf", description="Constraint-based product configurator."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_instance_arg(p):
        p.add_argument("instance", help="instance fact file")
        p.add_argument(
            "--no-strict-mandatory",
            dest="strict_mandatory",
            action="store_false",
            help="downgrade unsatisfiable mandatory properties to warnings",
        )

    p_solve = sub.add_parser("solve", help="enumerate solutions")
    add_instance_arg(p_solve)
    p_solve.add_argument("--max-models", type=int, default=None, metavar="N")
    p_solve.add_argument("--all", action="store_true", help="enumerate all solutions")
    p_solve.add_argument(
        "--minimal", action="store_true", help="keep only subset-minimal solutions"
    )
    p_solve.add_argument("--format", choices=("text", "json"), default="text")
    p_solve.add_argument(
        "--require", action="append", metavar="LIT",
        help="extra requirement: component or component.property=value",
    )
    p_solve.add_argument(
        "--forbid", action="append", metavar="LIT",
        help="extra exclusion: component or component.property=value",
    )
    p_solve.add_argument("--node-budget", type=int, default=SolveOptions.node_budget)
    p_solve.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    p_solve.set_defaults(func=_cmd_solve)

    p_check = sub.add_parser("check", help="check a solution file against an instance")
    add_instance_arg(p_check)
    p_check.add_argument("solution", help="solution fact file (assign/3)")
    p_check.set_defaults(func=_cmd_check)

    p_ground = sub.add_parser("ground", help="print the grounded problem report")
    add_instance_arg(p_ground)
    p_ground.set_defaults(func=_cmd_ground)

    p_oracle = sub.add_parser(
        "oracle", help="enumerate all solutions by brute force (reference engine)"
    )
    add_instance_arg(p_oracle)
    p_oracle.set_defaults(func=_cmd_oracle)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static", default=None, metavar="DIR",
                         help="serve a built UI bundle from this directory")
    p_serve.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
