"""HTTP facade for interactive clients.

Uploaded instances live in a bounded in-memory LRU store; all solving state
travels with each request, so identical requests always produce identical
responses and instances never mutate after creation.

Endpoints (JSON, UTF-8):

    POST /api/instances                   {source} -> {id, warnings[]}
    GET  /api/instances/{id}              instance summary
    POST /api/instances/{id}/solve        {maxModels, minimalOnly, requirements[]}
    POST /api/instances/{id}/whatif       {requirements[], component, property}
    POST /api/instances/{id}/check        {assignments[]}

Errors come back as {code, message, position?} with a matching HTTP status.
"""

from __future__ import annotations

import threading
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass
from typing import Literal, Union

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .factlang import Diagnostic, FactBase, Target, parse_program
from .grounding import ConfigurationProblem, InstanceError, ground, validate
from .solver import (
    BudgetExceededError,
    SolveOptions,
    check,
    consistent_values,
    solve,
)
from .wire import requirement_json, requirement_target, solution_json, violation_json

DEFAULT_MAX_SOURCE_BYTES = 1 << 20
DEFAULT_STORE_CAPACITY = 256
DEFAULT_TIME_BUDGET = 5.0

Value = Union[int, str]


@dataclass
class InstanceRecord:
    id: str
    source: str
    factbase: FactBase
    problem: ConfigurationProblem
    created_at: float


class InstanceStore:
    """Thread-safe LRU map of instance id to record."""

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._records: OrderedDict[str, InstanceRecord] = OrderedDict()
        self._lock = threading.Lock()

    def put(self, record: InstanceRecord) -> None:
        with self._lock:
            self._records[record.id] = record
            self._records.move_to_end(record.id)
            while len(self._records) > self.capacity:
                self._records.popitem(last=False)

    def get(self, instance_id: str) -> InstanceRecord | None:
        with self._lock:
            record = self._records.get(instance_id)
            if record is not None:
                self._records.move_to_end(instance_id)
            return record


class CreateInstanceBody(BaseModel):
    source: str


class RequirementBody(BaseModel):
    polarity: Literal["req", "nreq"]
    component: str
    property: str | None = None
    value: Value | None = None


class SolveBody(BaseModel):
    maxModels: int = Field(default=0, ge=0)
    minimalOnly: bool = False
    requirements: list[RequirementBody] = Field(default_factory=list)


class WhatIfBody(BaseModel):
    requirements: list[RequirementBody] = Field(default_factory=list)
    component: str
    property: str


class AssignmentBody(BaseModel):
    component: str
    property: str
    value: Value


class CheckBody(BaseModel):
    assignments: list[AssignmentBody] = Field(default_factory=list)


def _error(status: int, code: str, message: str, position: dict | None = None,
           diagnostics: list[Diagnostic] | None = None) -> JSONResponse:
    body: dict = {"code": code, "message": message}
    if position:
        body["position"] = position
    if diagnostics is not None:
        body["diagnostics"] = [_diagnostic_json(d) for d in diagnostics]
    return JSONResponse(status_code=status, content=body)


def _diagnostic_json(diagnostic: Diagnostic) -> dict:
    body: dict = {
        "severity": diagnostic.severity,
        "code": diagnostic.code,
        "message": diagnostic.message,
    }
    if diagnostic.line is not None:
        body["position"] = {"line": diagnostic.line, "column": diagnostic.column}
    if diagnostic.fact is not None:
        body["fact"] = diagnostic.fact
    return body


def _requirements_to_targets(
    requirements: list[RequirementBody],
) -> tuple[tuple[str, Target], ...]:
    out = []
    for req in requirements:
        target = requirement_target(req.component, req.property, req.value)
        out.append((req.polarity, target))
    return tuple(out)


def create_app(
    static_dir: str | None = None,
    time_budget: float = DEFAULT_TIME_BUDGET,
    max_source_bytes: int = DEFAULT_MAX_SOURCE_BYTES,
    store_capacity: int = DEFAULT_STORE_CAPACITY,
) -> FastAPI:
    app = FastAPI(title="prodconf", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = InstanceStore(store_capacity)

    def lookup(instance_id: str) -> InstanceRecord | JSONResponse:
        record = store.get(instance_id)
        if record is None:
            return _error(404, "UNKNOWN_INSTANCE", f"no instance with id {instance_id!r}")
        return record

    @app.post("/api/instances")
    def create_instance(body: CreateInstanceBody):
        if len(body.source.encode("utf-8")) > max_source_bytes:
            return _error(
                413, "PAYLOAD_TOO_LARGE", f"source exceeds {max_source_bytes} bytes"
            )
        parsed = parse_program(body.source)
        if not parsed.ok:
            first = parsed.errors[0]
            position = (
                {"line": first.line, "column": first.column}
                if first.line is not None
                else None
            )
            return _error(
                422, "PARSE_ERROR", first.message, position, parsed.diagnostics
            )
        diagnostics = validate(parsed.factbase)
        try:
            problem = ground(parsed.factbase)
        except InstanceError as exc:
            first = next(d for d in exc.diagnostics if d.severity == "error")
            return _error(422, "INSTANCE_ERROR", first.message, None, exc.diagnostics)
        record = InstanceRecord(
            id=uuid.uuid4().hex,
            source=body.source,
            factbase=parsed.factbase,
            problem=problem,
            created_at=time.time(),
        )
        store.put(record)
        warnings = [
            _diagnostic_json(d)
            for d in parsed.diagnostics + diagnostics
            if d.severity == "warning"
        ]
        return {"id": record.id, "warnings": warnings}

    @app.get("/api/instances/{instance_id}")
    def get_instance(instance_id: str):
        record = lookup(instance_id)
        if isinstance(record, JSONResponse):
            return record
        problem = record.problem
        domains: dict[tuple[str, str], list] = {}
        for component, prop, value in problem.ground_domain:
            domains.setdefault((component, prop), []).append(value)
        return {
            "id": record.id,
            "components": list(problem.components),
            "domains": [
                {"component": c, "property": p, "values": vs}
                for (c, p), vs in sorted(domains.items())
            ],
            "partonomy": [
                {"whole": whole, "part": part, "kind": kind}
                for whole, part, kind in sorted(record.factbase.partonomy)
            ],
            "constraints": {
                "requireComponent": len(problem.require_component),
                "requireComponentPv": len(problem.require_component_pv),
                "requirePvComponent": len(problem.require_pv_component),
                "requirePvPv": len(problem.require_pv_pv),
                "incompatibleComponents": len(problem.incompatible_components),
                "incompatibleComponentPv": len(problem.incompatible_component_pv),
                "incompatiblePvPv": len(problem.incompatible_pv_pv),
            },
            "userRequirements": [
                requirement_json(polarity, target)
                for polarity, target in problem.user_requirements
            ],
        }

    @app.post("/api/instances/{instance_id}/solve")
    def solve_instance(instance_id: str, body: SolveBody):
        record = lookup(instance_id)
        if isinstance(record, JSONResponse):
            return record
        try:
            extra = _requirements_to_targets(body.requirements)
        except ValueError as exc:
            return _error(422, "INVALID_REQUIREMENT", str(exc))
        options = SolveOptions(
            max_models=body.maxModels,
            minimal_only=body.minimalOnly,
            extra_requirements=extra,
            time_budget=time_budget,
        )
        result = solve(record.problem, options)
        return {
            "status": result.status,
            "solutions": [solution_json(s) for s in result.solutions],
            "violations": [violation_json(v) for v in result.violations],
        }

    @app.post("/api/instances/{instance_id}/whatif")
    def whatif(instance_id: str, body: WhatIfBody):
        record = lookup(instance_id)
        if isinstance(record, JSONResponse):
            return record
        try:
            extra = _requirements_to_targets(body.requirements)
        except ValueError as exc:
            return _error(422, "INVALID_REQUIREMENT", str(exc))
        options = SolveOptions(extra_requirements=extra, time_budget=time_budget)
        try:
            result = consistent_values(record.problem, options, body.component, body.property)
        except ValueError as exc:
            return _error(422, "EMPTY_DOMAIN", str(exc))
        except BudgetExceededError as exc:
            return _error(503, "BUDGET_EXCEEDED", str(exc))
        return {
            "values": list(result.values),
            "mayBeAbsent": result.may_be_absent,
            "mustBePresent": result.must_be_present,
        }

    @app.post("/api/instances/{instance_id}/check")
    def check_solution(instance_id: str, body: CheckBody):
        record = lookup(instance_id)
        if isinstance(record, JSONResponse):
            return record
        candidate = frozenset(
            (a.component, a.property, a.value) for a in body.assignments
        )
        violations = check(record.problem, candidate)
        return {"violations": [violation_json(v) for v in violations]}

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
