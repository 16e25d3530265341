"""Product-knowledge fact language: lexer, parser, validator, canonical serializer.

Product knowledge is written as a plain-text file of ground facts, one fact
per statement, each terminated by a period. ``%`` starts a comment that runs
to the end of the line.

Grammar::

    program := { fact }
    fact    := ident "(" term { "," term } ")" "."
    term    := ident | integer | "(" term { "," term } ")"
    ident   := [a-z][a-zA-Z0-9_]*
    integer := [ "-" ] digit+

Tuples always carry at least two elements. There are no variables, rules,
strings, or directives: the language is deliberately restricted to the ground
facts a product catalog needs.

Eleven predicates form the knowledge schema:

    domain(C, type, T)                      candidate type T for component C
    property_val(T, P, V)                   predefined value V of property P of type T
    mandatory_property(C, P)                P must be assigned when C is present
    partof(C1, C2, mandatory|optional)      C2 is a part of whole C1
    incompatible_com_com(C1, C2)
    incompatible_com_pv(C1, (C2,P2,V2))
    incompatible_pv_pv((C1,P1,V1), (C2,P2,V2))
    require_com_com(C1, C2)
    require_com_pv(C1, (C2,P2,V2))          also accepts ((C1,P1,V1), C2)
    require_pv_pv((C1,P1,V1), (C2,P2,V2))
    user_com(req|nreq, C)                   also accepts a (C,P,V) target

Terms are represented as plain Python values: constants as ``str``, integers
as ``int``, tuples as ``tuple``. Parsing never raises on bad input; every
problem is reported as a :class:`Diagnostic` with a line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Union

Term = Union[str, int, tuple]
# (component, property, value) triple as used by constraints and solutions.
PropertyValue = tuple[str, str, Term]
# A user requirement targets either a component or a property value.
Target = Union[str, PropertyValue]

CONSTANT_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")

POLARITIES = ("req", "nreq")
PARTONOMY_KINDS = ("mandatory", "optional")

#: property name reserved for the component-type assignment
TYPE_PROPERTY = "type"

ERROR = "error"
WARNING = "warning"


@dataclass(frozen=True)
class Diagnostic:
    """A single parse or validation finding, pointing at its source."""

    severity: str
    code: str
    message: str
    line: int | None = None
    column: int | None = None
    fact: str | None = None

    def __str__(self) -> str:
        pos = f"{self.line}:{self.column}: " if self.line is not None else ""
        return f"{pos}{self.severity}[{self.code}]: {self.message}"


@dataclass(frozen=True)
class Fact:
    """One parsed fact with its source position."""

    predicate: str
    args: tuple[Term, ...]
    line: int = 0
    column: int = 0

    def text(self) -> str:
        return fact_text(self.predicate, self.args)


def term_text(term: Term) -> str:
    """Canonical rendering of a term."""
    if isinstance(term, tuple):
        return "(" + ",".join(term_text(t) for t in term) + ")"
    return str(term)


def fact_text(predicate: str, args: Iterable[Term]) -> str:
    return f"{predicate}({','.join(term_text(a) for a in args)})."


def term_key(term: Term):
    """Total order over terms: constants, then integers, then tuples."""
    if isinstance(term, str):
        return (0, term)
    if isinstance(term, int):
        return (1, term)
    return (2, tuple(term_key(t) for t in term))


# ---------------------------------------------------------------------------
# Fact base
# ---------------------------------------------------------------------------

_EMPTY: frozenset = frozenset()


@dataclass(frozen=True)
class FactBase:
    """The deduplicated, schema-validated content of a fact program.

    Every field is a frozenset, so fact order in the source never matters and
    duplicate facts collapse silently.
    """

    #: (component, type name) pairs from domain(C, type, T) seeds
    type_domains: frozenset[tuple[str, Term]] = _EMPTY
    #: (type name, property, value) triples
    property_values: frozenset[tuple[Term, str, Term]] = _EMPTY
    #: (component, property) pairs
    mandatory_properties: frozenset[tuple[str, str]] = _EMPTY
    #: (whole, part, kind) with kind in {mandatory, optional}
    partonomy: frozenset[tuple[str, str, str]] = _EMPTY
    incompatible_cc: frozenset[tuple[str, str]] = _EMPTY
    incompatible_cp: frozenset[tuple[str, PropertyValue]] = _EMPTY
    incompatible_pp: frozenset[tuple[PropertyValue, PropertyValue]] = _EMPTY
    require_cc: frozenset[tuple[str, str]] = _EMPTY
    #: component requires a property value
    require_cp: frozenset[tuple[str, PropertyValue]] = _EMPTY
    #: property value requires a component
    require_pc: frozenset[tuple[PropertyValue, str]] = _EMPTY
    require_pp: frozenset[tuple[PropertyValue, PropertyValue]] = _EMPTY
    #: (polarity, target) with polarity in {req, nreq}
    user_requirements: frozenset[tuple[str, Target]] = _EMPTY

    def facts(self) -> list[Fact]:
        """All facts in canonical (sorted) order."""
        out: list[Fact] = []
        out += [Fact("domain", (c, TYPE_PROPERTY, t)) for c, t in self.type_domains]
        out += [Fact("property_val", args) for args in self.property_values]
        out += [Fact("mandatory_property", args) for args in self.mandatory_properties]
        out += [Fact("partof", args) for args in self.partonomy]
        out += [Fact("incompatible_com_com", args) for args in self.incompatible_cc]
        out += [Fact("incompatible_com_pv", args) for args in self.incompatible_cp]
        out += [Fact("incompatible_pv_pv", args) for args in self.incompatible_pp]
        out += [Fact("require_com_com", args) for args in self.require_cc]
        out += [Fact("require_com_pv", args) for args in self.require_cp]
        out += [Fact("require_com_pv", args) for args in self.require_pc]
        out += [Fact("require_pv_pv", args) for args in self.require_pp]
        out += [Fact("user_com", args) for args in self.user_requirements]
        out.sort(key=lambda f: f.text())
        return out


# ---------------------------------------------------------------------------
# Lexer
# ---------------------------------------------------------------------------

_T_IDENT = "ident"
_T_INT = "int"
_T_LPAREN = "("
_T_RPAREN = ")"
_T_COMMA = ","
_T_DOT = "."
_T_EOF = "eof"


@dataclass(frozen=True)
class _Token:
    kind: str
    value: Term
    line: int
    column: int


def _tokenize(source: str) -> tuple[list[_Token], list[Diagnostic]]:
    tokens: list[_Token] = []
    diagnostics: list[Diagnostic] = []
    i, line, col = 0, 1, 1
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "%":
            while i < n and source[i] != "\n":
                i += 1
            continue
        if ch in "(),.":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        if ch.islower() and ch.isalpha() and ch.isascii():
            start, start_col = i, col
            while i < n and (source[i].isalnum() and source[i].isascii() or source[i] == "_"):
                i += 1
                col += 1
            tokens.append(_Token(_T_IDENT, source[start:i], line, start_col))
            continue
        if ch.isdigit() or (ch == "-" and i + 1 < n and source[i + 1].isdigit()):
            start, start_col = i, col
            i += 1
            col += 1
            while i < n and source[i].isdigit():
                i += 1
                col += 1
            tokens.append(_Token(_T_INT, int(source[start:i]), line, start_col))
            continue
        diagnostics.append(
            Diagnostic(ERROR, "SYNTAX", f"unexpected character {ch!r}", line, col)
        )
        i += 1
        col += 1
    tokens.append(_Token(_T_EOF, "", line, col))
    return tokens, diagnostics


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

class _UnexpectedToken(Exception):
    def __init__(self, token: _Token, expected: str):
        super().__init__(expected)
        self.token = token
        self.expected = expected


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.diagnostics: list[Diagnostic] = []

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != _T_EOF:
            self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise _UnexpectedToken(tok, expected)
        return self.advance()

    def syntax_error(self, exc: _UnexpectedToken) -> None:
        tok = exc.token
        got = "end of input" if tok.kind == _T_EOF else repr(term_text(tok.value))
        self.diagnostics.append(
            Diagnostic(
                ERROR, "SYNTAX", f"expected {exc.expected}, got {got}", tok.line, tok.column
            )
        )

    def synchronize(self) -> None:
        """Skip to just past the next '.' so later facts still get parsed."""
        while True:
            tok = self.advance()
            if tok.kind in (_T_DOT, _T_EOF):
                return

    def parse_facts(self) -> list[Fact]:
        facts: list[Fact] = []
        while self.peek().kind != _T_EOF:
            try:
                facts.append(self.parse_fact())
            except _UnexpectedToken as exc:
                self.syntax_error(exc)
                self.synchronize()
        return facts

    def parse_fact(self) -> Fact:
        name = self.expect(_T_IDENT, "a predicate name")
        self.expect(_T_LPAREN, "'('")
        args = [self.parse_term()]
        while self.peek().kind == _T_COMMA:
            self.advance()
            args.append(self.parse_term())
        self.expect(_T_RPAREN, "')' or ','")
        self.expect(_T_DOT, "'.'")
        return Fact(str(name.value), tuple(args), name.line, name.column)

    def parse_term(self) -> Term:
        tok = self.peek()
        if tok.kind in (_T_IDENT, _T_INT):
            self.advance()
            return tok.value
        if tok.kind == _T_LPAREN:
            self.advance()
            items = [self.parse_term()]
            while self.peek().kind == _T_COMMA:
                self.advance()
                items.append(self.parse_term())
            closing = self.expect(_T_RPAREN, "')' or ','")
            if len(items) < 2:
                raise _UnexpectedToken(closing, "a tuple of at least two terms")
            return tuple(items)
        raise _UnexpectedToken(tok, "a term")


# ---------------------------------------------------------------------------
# Schema validation
# ---------------------------------------------------------------------------

_ARITY = {
    "domain": 3,
    "property_val": 3,
    "mandatory_property": 2,
    "partof": 3,
    "incompatible_com_com": 2,
    "incompatible_com_pv": 2,
    "incompatible_pv_pv": 2,
    "require_com_com": 2,
    "require_com_pv": 2,
    "require_pv_pv": 2,
    "user_com": 2,
}

KNOWN_PREDICATES = frozenset(_ARITY)


def _is_constant(term: Term) -> bool:
    return isinstance(term, str)


def _is_scalar(term: Term) -> bool:
    return isinstance(term, (str, int))


def _is_pv(term: Term) -> bool:
    return (
        isinstance(term, tuple)
        and len(term) == 3
        and _is_constant(term[0])
        and _is_constant(term[1])
        and _is_scalar(term[2])
    )


class _SchemaError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _check_constant(fact: Fact, index: int, role: str) -> str:
    term = fact.args[index]
    if not _is_constant(term):
        raise _SchemaError(
            "ARGUMENT_SHAPE",
            f"{fact.predicate}: argument {index + 1} ({role}) must be a constant, "
            f"got {term_text(term)}",
        )
    return term


def _check_scalar(fact: Fact, index: int, role: str) -> Term:
    term = fact.args[index]
    if not _is_scalar(term):
        raise _SchemaError(
            "ARGUMENT_SHAPE",
            f"{fact.predicate}: argument {index + 1} ({role}) must be a constant "
            f"or integer, got {term_text(term)}",
        )
    return term


def _check_pv(fact: Fact, index: int, role: str) -> PropertyValue:
    term = fact.args[index]
    if not _is_pv(term):
        raise _SchemaError(
            "ARGUMENT_SHAPE",
            f"{fact.predicate}: argument {index + 1} ({role}) must be a "
            f"(component,property,value) triple, got {term_text(term)}",
        )
    return term  # type: ignore[return-value]


class _Collector:
    """Accumulates validated fact entries into FactBase field sets."""

    def __init__(self) -> None:
        self.fields: dict[str, set] = {
            "type_domains": set(),
            "property_values": set(),
            "mandatory_properties": set(),
            "partonomy": set(),
            "incompatible_cc": set(),
            "incompatible_cp": set(),
            "incompatible_pp": set(),
            "require_cc": set(),
            "require_cp": set(),
            "require_pc": set(),
            "require_pp": set(),
            "user_requirements": set(),
        }

    def add(self, fact: Fact) -> None:
        pred = fact.predicate
        if pred == "domain":
            component = _check_constant(fact, 0, "component")
            prop = _check_constant(fact, 1, "property")
            value = _check_scalar(fact, 2, "type name")
            if prop != TYPE_PROPERTY:
                raise _SchemaError(
                    "NON_TYPE_DOMAIN",
                    "domain: only type domains are seeded directly; property "
                    f"domains derive from property_val (got property {prop!r})",
                )
            self.fields["type_domains"].add((component, value))
        elif pred == "property_val":
            type_name = _check_scalar(fact, 0, "type name")
            prop = _check_constant(fact, 1, "property")
            value = _check_scalar(fact, 2, "value")
            self.fields["property_values"].add((type_name, prop, value))
        elif pred == "mandatory_property":
            component = _check_constant(fact, 0, "component")
            prop = _check_constant(fact, 1, "property")
            self.fields["mandatory_properties"].add((component, prop))
        elif pred == "partof":
            whole = _check_constant(fact, 0, "whole component")
            part = _check_constant(fact, 1, "part component")
            kind = fact.args[2]
            if kind not in PARTONOMY_KINDS:
                raise _SchemaError(
                    "PARTONOMY_KIND",
                    f"partof: kind must be 'mandatory' or 'optional', got {term_text(kind)}",
                )
            self.fields["partonomy"].add((whole, part, kind))
        elif pred == "incompatible_com_com":
            pair = (_check_constant(fact, 0, "component"), _check_constant(fact, 1, "component"))
            self.fields["incompatible_cc"].add(pair)
        elif pred == "incompatible_com_pv":
            component = _check_constant(fact, 0, "component")
            pv = _check_pv(fact, 1, "property value")
            self.fields["incompatible_cp"].add((component, pv))
        elif pred == "incompatible_pv_pv":
            left = _check_pv(fact, 0, "property value")
            right = _check_pv(fact, 1, "property value")
            self.fields["incompatible_pp"].add((left, right))
        elif pred == "require_com_com":
            pair = (_check_constant(fact, 0, "component"), _check_constant(fact, 1, "component"))
            self.fields["require_cc"].add(pair)
        elif pred == "require_com_pv":
            # Two shapes share this name: (component, pv) and (pv, component).
            first, second = fact.args
            if _is_constant(first) and _is_pv(second):
                self.fields["require_cp"].add((first, second))
            elif _is_pv(first) and _is_constant(second):
                self.fields["require_pc"].add((first, second))
            else:
                raise _SchemaError(
                    "ARGUMENT_SHAPE",
                    "require_com_pv: expected (component, (c,p,v)) or ((c,p,v), component), "
                    f"got ({term_text(first)}, {term_text(second)})",
                )
        elif pred == "require_pv_pv":
            left = _check_pv(fact, 0, "property value")
            right = _check_pv(fact, 1, "property value")
            self.fields["require_pp"].add((left, right))
        elif pred == "user_com":
            polarity = fact.args[0]
            if polarity not in POLARITIES:
                raise _SchemaError(
                    "POLARITY",
                    f"user_com: polarity must be 'req' or 'nreq', got {term_text(polarity)}",
                )
            target = fact.args[1]
            if not (_is_constant(target) or _is_pv(target)):
                raise _SchemaError(
                    "ARGUMENT_SHAPE",
                    "user_com: target must be a component or a (c,p,v) triple, "
                    f"got {term_text(target)}",
                )
            self.fields["user_requirements"].add((polarity, target))
        else:  # pragma: no cover - guarded by the caller
            raise AssertionError(pred)

    def factbase(self) -> FactBase:
        return FactBase(**{name: frozenset(vals) for name, vals in self.fields.items()})


# ---------------------------------------------------------------------------
# Public parsing API
# ---------------------------------------------------------------------------

@dataclass
class ParseResult:
    """Outcome of parsing a fact program: a FactBase or error diagnostics.

    ``factbase`` is None exactly when at least one error was found; warnings
    (lenient mode only) may accompany a successful parse.
    """

    factbase: FactBase | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.factbase is not None

    @property
    def errors(self) -> list[Diagnostic]:
        return [d for d in self.diagnostics if d.severity == ERROR]


@dataclass
class SolutionParseResult:
    """Outcome of parsing a solution file (assign/3 facts only)."""

    assignments: frozenset[PropertyValue] | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.assignments is not None


def parse_program(source: str, strict: bool = True) -> ParseResult:
    """Parse a fact program into a FactBase.

    In strict mode (the default) unknown predicates are errors; in lenient
    mode they are dropped with a warning. Never raises: all findings come
    back as diagnostics with positions.
    """
    tokens, diagnostics = _tokenize(source)
    parser = _Parser(tokens)
    facts = parser.parse_facts()
    diagnostics += parser.diagnostics

    collector = _Collector()
    for fact in facts:
        arity = _ARITY.get(fact.predicate)
        if arity is None:
            severity = ERROR if strict else WARNING
            diagnostics.append(
                Diagnostic(
                    severity,
                    "UNKNOWN_PREDICATE",
                    f"unknown predicate {fact.predicate}/{len(fact.args)}",
                    fact.line,
                    fact.column,
                    fact.text(),
                )
            )
            continue
        if len(fact.args) != arity:
            diagnostics.append(
                Diagnostic(
                    ERROR,
                    "ARITY",
                    f"{fact.predicate} expects {arity} arguments, got {len(fact.args)}",
                    fact.line,
                    fact.column,
                    fact.text(),
                )
            )
            continue
        try:
            collector.add(fact)
        except _SchemaError as exc:
            diagnostics.append(
                Diagnostic(ERROR, exc.code, exc.message, fact.line, fact.column, fact.text())
            )

    if any(d.severity == ERROR for d in diagnostics):
        return ParseResult(None, diagnostics)
    return ParseResult(collector.factbase(), diagnostics)


def parse_solution(source: str) -> SolutionParseResult:
    """Parse a solution file: assign(C, P, V) facts only."""
    tokens, diagnostics = _tokenize(source)
    parser = _Parser(tokens)
    facts = parser.parse_facts()
    diagnostics += parser.diagnostics

    triples: set[PropertyValue] = set()
    for fact in facts:
        if fact.predicate != "assign":
            diagnostics.append(
                Diagnostic(
                    ERROR,
                    "UNKNOWN_PREDICATE",
                    f"solution files may only contain assign/3 facts, got {fact.predicate}",
                    fact.line,
                    fact.column,
                    fact.text(),
                )
            )
            continue
        if len(fact.args) != 3:
            diagnostics.append(
                Diagnostic(
                    ERROR,
                    "ARITY",
                    f"assign expects 3 arguments, got {len(fact.args)}",
                    fact.line,
                    fact.column,
                    fact.text(),
                )
            )
            continue
        try:
            component = _check_constant(fact, 0, "component")
            prop = _check_constant(fact, 1, "property")
            value = _check_scalar(fact, 2, "value")
        except _SchemaError as exc:
            diagnostics.append(
                Diagnostic(ERROR, exc.code, exc.message, fact.line, fact.column, fact.text())
            )
            continue
        triples.add((component, prop, value))

    if any(d.severity == ERROR for d in diagnostics):
        return SolutionParseResult(None, diagnostics)
    return SolutionParseResult(frozenset(triples), diagnostics)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def serialize_factbase(factbase: FactBase) -> str:
    """Canonical text: one fact per line, sorted, comment-free.

    ``parse_program(serialize_factbase(f))`` reproduces ``f`` exactly.
    """
    return "".join(f.text() + "\n" for f in factbase.facts())


def serialize_solution(assignments: Iterable[PropertyValue]) -> str:
    """Canonical text of a solution: sorted assign/3 facts."""
    lines = sorted(fact_text("assign", triple) + "\n" for triple in assignments)
    return "".join(lines)
