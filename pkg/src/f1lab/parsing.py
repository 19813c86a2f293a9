"""Hand-written parsers for polynomial systems and loose-graph files.

Polynomial system grammar (one statement per line, '#' starts a comment,
whitespace inside a line is free):

    system := decl eqn+
    decl   := "vars" ident+
    eqn    := poly "=" poly
    poly   := ["+"|"-"] term (("+"|"-") term)*
    term   := integer? (ident ("^" nat)?)*     # implicit multiplication

Equations are normalised to "lhs - rhs = 0" sparse form.  Errors carry
1-based line/column positions; the parser never raises anything but
ParseError on malformed text, however hostile.

Loose-graph files have one record per line: ``u v`` (two endpoints),
``u -`` (one endpoint), ``- -`` (no endpoints), or ``vertex u`` for an
isolated vertex; the vertex set is otherwise inferred from endpoints.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import CountPoly
from .finitefield import IntPolySystem
from .loosegraphs import LooseGraph

EXPONENT_CAP = 10**6


@dataclass(frozen=True)
class ParseError(Exception):
    message: str
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.message}"


class _LineScanner:
    """Character scanner over one logical line."""

    def __init__(self, text: str, line_no: int):
        self.text = text
        self.line_no = line_no
        self.pos = 0

    def error(self, message: str):
        raise ParseError(message, self.line_no, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t\r":
            self.pos += 1

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self) -> str:
        ch = self.text[self.pos]
        self.pos += 1
        return ch

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or not (
            self.text[self.pos].isalpha() or self.text[self.pos] == "_"
        ):
            self.error("identifier expected")
        while self.pos < len(self.text) and (
            self.text[self.pos].isalnum() or self.text[self.pos] == "_"
        ):
            self.pos += 1
        return self.text[start : self.pos]

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("number expected")
        return int(self.text[start : self.pos])


def _logical_lines(text: str):
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        if body.strip():
            yield line_no, body


def _parse_poly(scanner: _LineScanner, variables: dict[str, int]):
    """Parse a sum of terms into {exponent tuple: coefficient}."""
    width = len(variables)
    poly: dict[tuple[int, ...], int] = {}
    sign = 1
    ch = scanner.peek()
    if ch and ch in "+-":
        scanner.take()
        sign = -1 if ch == "-" else 1
    while True:
        coeff, exps = _parse_term(scanner, variables)
        key = tuple(exps)
        poly[key] = poly.get(key, 0) + sign * coeff
        ch = scanner.peek()
        if ch and ch in "+-":
            scanner.take()
            sign = -1 if ch == "-" else 1
            continue
        break
    return {k: v for k, v in poly.items() if v} or {(0,) * width: 0}


def _parse_term(scanner: _LineScanner, variables: dict[str, int]):
    coeff = None
    exps = [0] * len(variables)
    saw_factor = False
    while True:
        ch = scanner.peek()
        if ch.isdigit() and coeff is None and not saw_factor:
            coeff = scanner.integer()
            continue
        if ch.isalpha() or ch == "_":
            name = scanner.ident()
            if name not in variables:
                scanner.error(f"undeclared identifier {name!r}")
            power = 1
            if scanner.peek() == "^":
                scanner.take()
                power = scanner.integer()
                if power > EXPONENT_CAP:
                    scanner.error(f"exponent {power} exceeds cap {EXPONENT_CAP}")
            exps[variables[name]] += power
            if exps[variables[name]] > EXPONENT_CAP:
                scanner.error("accumulated exponent exceeds cap")
            saw_factor = True
            continue
        break
    if coeff is None and not saw_factor:
        scanner.error("term expected")
    return (1 if coeff is None else coeff), exps


def parse_poly_system(text: str) -> IntPolySystem:
    """Parse a polynomial system; equations come back in 'lhs - rhs = 0'
    sparse normal form over the declared variables."""
    lines = list(_logical_lines(text))
    if not lines:
        raise ParseError("empty input: a 'vars' declaration is required", 1, 1)
    decl_no, decl = lines[0]
    scanner = _LineScanner(decl, decl_no)
    keyword = scanner.ident() if not scanner.at_end() else ""
    if keyword != "vars":
        raise ParseError("input must start with a 'vars' declaration", decl_no, 1)
    names: list[str] = []
    while not scanner.at_end():
        name = scanner.ident()
        if name in names:
            scanner.error(f"variable {name!r} declared twice")
        names.append(name)
    if not names:
        raise ParseError("at least one variable required", decl_no, len(decl) + 1)
    variables = {name: i for i, name in enumerate(names)}
    if len(lines) == 1:
        raise ParseError("at least one equation required", decl_no, len(decl) + 1)
    equations = []
    for line_no, body in lines[1:]:
        scanner = _LineScanner(body, line_no)
        lhs = _parse_poly(scanner, variables)
        if scanner.peek() != "=":
            scanner.error("'=' expected")
        scanner.take()
        rhs = _parse_poly(scanner, variables)
        if not scanner.at_end():
            scanner.error("trailing input after equation")
        normal: dict[tuple[int, ...], int] = dict(lhs)
        for exps, coeff in rhs.items():
            normal[exps] = normal.get(exps, 0) - coeff
        equations.append({k: v for k, v in normal.items() if v})
    return IntPolySystem.from_dicts(names, equations)


def format_poly(poly_terms, variables) -> str:
    """Render a sparse polynomial in the input grammar."""
    if not poly_terms:
        return "0"
    ordered = sorted(poly_terms, key=lambda t: t[1], reverse=True)
    parts: list[str] = []
    for coeff, exps in ordered:
        body_factors = []
        for name, e in zip(variables, exps):
            if e == 1:
                body_factors.append(name)
            elif e > 1:
                body_factors.append(f"{name}^{e}")
        magnitude = abs(coeff)
        if body_factors:
            body = " ".join(body_factors)
            if magnitude != 1:
                body = f"{magnitude} {body}"
        else:
            body = str(magnitude)
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(parts)


def format_poly_system(system: IntPolySystem) -> str:
    """Pretty-print a system in the input grammar; printing is idempotent
    through a parse/print round trip."""
    out = ["vars " + " ".join(system.variables)]
    for eq in system.equations:
        out.append(f"{format_poly(eq, system.variables)} = 0")
    return "\n".join(out) + "\n"


def parse_count_poly(text: str) -> CountPoly:
    """Parse a univariate integer polynomial such as 'Y^2 + Y + 1'."""
    lines = list(_logical_lines(text))
    if len(lines) != 1:
        raise ParseError("expected a single polynomial expression", 1, 1)
    line_no, body = lines[0]
    scanner = _LineScanner(body, line_no)
    names: dict[str, int] = {}

    # discover the variable name lazily: at most one identifier allowed
    probe = _LineScanner(body, line_no)
    while not probe.at_end():
        ch = probe.peek()
        if ch.isalpha() or ch == "_":
            name = probe.ident()
            if names and name not in names:
                probe.error("a counting polynomial has a single variable")
            names.setdefault(name, 0)
        else:
            probe.take()
    poly = _parse_poly(scanner, names)
    if not scanner.at_end():
        scanner.error("trailing input after polynomial")
    coeffs = [0] * (max((exps[0] for exps in poly if exps), default=0) + 1 if names else 1)
    for exps, coeff in poly.items():
        k = exps[0] if names else 0
        coeffs[k] += coeff
    return CountPoly.from_coeffs(coeffs)


def parse_loose_graph(text: str) -> LooseGraph:
    """Parse the loose-graph edge-list format."""
    vertices: list = []
    seen = set()
    edges = []

    def note(v: str):
        if v not in seen:
            seen.add(v)
            vertices.append(v)

    for line_no, body in _logical_lines(text):
        tokens = body.split()
        if tokens[0] == "vertex":
            if len(tokens) != 2 or tokens[1] == "-":
                raise ParseError("'vertex' takes one vertex label", line_no, 1)
            note(tokens[1])
            continue
        if len(tokens) != 2:
            raise ParseError(
                "edge line must be 'v1 v2', 'v1 -', or '- -'", line_no, 1
            )
        a, b = tokens
        if a == "-" and b != "-":
            raise ParseError("a one-ended edge is written 'v1 -'", line_no, 1)
        endpoints = tuple(t for t in (a, b) if t != "-")
        for v in endpoints:
            note(v)
        edges.append(endpoints)
    return LooseGraph.build(vertices, edges)


def format_loose_graph(graph: LooseGraph) -> str:
    lines = []
    covered = set()
    for edge in graph.edges:
        covered.update(edge)
        if len(edge) == 2:
            lines.append(f"{edge[0]} {edge[1]}")
        elif len(edge) == 1:
            lines.append(f"{edge[0]} -")
        else:
            lines.append("- -")
    for v in graph.vertices:
        if v not in covered:
            lines.append(f"vertex {v}")
    return "\n".join(lines) + "\n"
