"""The `.bnm` model text format: tokenizer, parser with line/column
diagnostics, and a canonical serializer closing the round trip.

Grammar:

    network <id>
    variable <id> { states: <id>, <id>, ... }
    cpt <id> [ | <id>, <id>, ... ] {
      row <state>, <state>, ... : <num>, <num>, ... ;
      ...
    }
    scenario <id> { <var> = <state>; ... }

Numbers are decimals or exact fractions `p/q`. `#` starts a comment to end
of line. CPT rows are exhaustive and in convention order (last parent
varying fastest); root nodes use a single `row :` line. Syntax errors are
reported with line/column; semantic errors are left to compile().
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .network import Cpt, Network, NetworkSpec, VariableSpec, compile_network
from .network import parent_combinations

_KEYWORDS = {"network", "variable", "cpt", "scenario", "states", "row"}
_PUNCT = set("{}|,:;=")


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error"
    line: int  # 1-based
    column: int  # 1-based
    message: str
    token: str = ""

    def __str__(self) -> str:
        return f"{self.line}:{self.column}: {self.severity}: {self.message}"


@dataclass(frozen=True)
class ProbValue:
    """A probability literal; fractions keep their source text verbatim."""

    value: float
    text: str
    is_fraction: bool

    @staticmethod
    def from_float(v: float) -> "ProbValue":
        return ProbValue(v, format(v, ".6g"), False)


@dataclass(frozen=True)
class CptRow:
    labels: tuple[str, ...]  # parent states; empty for root rows
    values: tuple[ProbValue, ...]


@dataclass(frozen=True)
class VariableDecl:
    name: str
    states: tuple[str, ...]


@dataclass(frozen=True)
class CptBlock:
    child: str
    parents: tuple[str, ...]
    rows: tuple[CptRow, ...]


@dataclass(frozen=True)
class ScenarioBlock:
    name: str
    assignments: tuple[tuple[str, str], ...]


@dataclass(frozen=True)
class ModelDocument:
    name: str
    variables: tuple[VariableDecl, ...]
    cpts: tuple[CptBlock, ...]
    scenarios: tuple[ScenarioBlock, ...]


@dataclass
class ParseResult:
    document: ModelDocument | None
    diagnostics: list[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.document is not None and not any(
            d.severity == "error" for d in self.diagnostics
        )


@dataclass(frozen=True)
class _Token:
    kind: str  # "ident", "number", "punct", "eof", "junk"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> tuple[list[_Token], list[Diagnostic]]:
    tokens: list[_Token] = []
    diags: list[Diagnostic] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        start_line, start_col = line, col
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("ident", text[i:j], start_line, start_col))
            col += j - i
            i = j
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            num = text[i:j]
            if j < n and text[j] == "/" and j + 1 < n and text[j + 1].isdigit():
                j += 1
                k = j
                while k < n and text[k].isdigit():
                    k += 1
                num = text[i:k]
                j = k
            tokens.append(_Token("number", num, start_line, start_col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(_Token("punct", ch, start_line, start_col))
            i += 1
            col += 1
            continue
        diags.append(
            Diagnostic("error", start_line, start_col, f"unexpected character {ch!r}", ch)
        )
        tokens.append(_Token("junk", ch, start_line, start_col))
        i += 1
        col += 1
    tokens.append(_Token("eof", "", line, col))
    return tokens, diags


def _parse_number(tok: _Token) -> ProbValue | None:
    if "/" in tok.text:
        num, _, den = tok.text.partition("/")
        try:
            frac = Fraction(int(num), int(den))
        except (ValueError, ZeroDivisionError):
            return None
        return ProbValue(float(frac), tok.text, True)
    try:
        v = float(tok.text)
    except ValueError:
        return None
    return ProbValue(v, format(v, ".6g"), False)


class _Parser:
    def __init__(self, tokens: list[_Token], diags: list[Diagnostic]):
        self.tokens = tokens
        self.pos = 0
        self.diags = diags

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, message: str, tok: _Token | None = None) -> None:
        tok = tok or self.cur
        self.diags.append(
            Diagnostic("error", tok.line, tok.column, message, tok.text)
        )

    def expect_punct(self, ch: str) -> bool:
        if self.cur.kind == "punct" and self.cur.text == ch:
            self.advance()
            return True
        self.error(f"expected {ch!r}")
        return False

    def expect_ident(self, what: str) -> str | None:
        if self.cur.kind == "ident":
            return self.advance().text
        self.error(f"expected {what}")
        return None

    def at_keyword(self, kw: str) -> bool:
        return self.cur.kind == "ident" and self.cur.text == kw

    def skip_to_block_end(self) -> None:
        """Recovery: skip tokens until past a `}` or before a top keyword."""
        depth = 0
        while self.cur.kind != "eof":
            if self.cur.kind == "ident" and self.cur.text in (
                "network",
                "variable",
                "cpt",
                "scenario",
            ) and depth == 0:
                return
            if self.cur.kind == "punct" and self.cur.text == "{":
                depth += 1
            elif self.cur.kind == "punct" and self.cur.text == "}":
                self.advance()
                if depth <= 1:
                    return
                depth -= 1
                continue
            self.advance()

    def parse_document(self) -> ModelDocument | None:
        name = None
        if self.at_keyword("network"):
            self.advance()
            name = self.expect_ident("network name")
        else:
            self.error("expected 'network' header")
        if name is None:
            self.skip_to_block_end()
            name = "invalid"

        variables: list[VariableDecl] = []
        cpts: list[CptBlock] = []
        scenarios: list[ScenarioBlock] = []
        while self.cur.kind != "eof":
            if self.at_keyword("variable"):
                decl = self.parse_variable()
                if decl:
                    variables.append(decl)
            elif self.at_keyword("cpt"):
                block = self.parse_cpt(variables)
                if block:
                    cpts.append(block)
            elif self.at_keyword("scenario"):
                block = self.parse_scenario()
                if block:
                    scenarios.append(block)
            else:
                self.error("expected 'variable', 'cpt' or 'scenario'")
                self.advance()
                self.skip_to_block_end()
        return ModelDocument(
            name, tuple(variables), tuple(cpts), tuple(scenarios)
        )

    def parse_variable(self) -> VariableDecl | None:
        self.advance()  # variable
        name = self.expect_ident("variable name")
        if name is None or not self.expect_punct("{"):
            self.skip_to_block_end()
            return None
        if not (self.at_keyword("states") and self.advance() and self.expect_punct(":")):
            self.error("expected 'states:'")
            self.skip_to_block_end()
            return None
        states: list[str] = []
        while True:
            s = self.expect_ident("state label")
            if s is None:
                self.skip_to_block_end()
                return None
            states.append(s)
            if self.cur.kind == "punct" and self.cur.text == ",":
                self.advance()
                continue
            break
        if not self.expect_punct("}"):
            self.skip_to_block_end()
            return None
        return VariableDecl(name, tuple(states))

    def parse_cpt(self, variables: list[VariableDecl]) -> CptBlock | None:
        self.advance()  # cpt
        child = self.expect_ident("child variable name")
        if child is None:
            self.skip_to_block_end()
            return None
        parents: list[str] = []
        if self.cur.kind == "punct" and self.cur.text == "|":
            self.advance()
            while True:
                p = self.expect_ident("parent variable name")
                if p is None:
                    self.skip_to_block_end()
                    return None
                parents.append(p)
                if self.cur.kind == "punct" and self.cur.text == ",":
                    self.advance()
                    continue
                break
        if not self.expect_punct("{"):
            self.skip_to_block_end()
            return None

        by_name = {v.name: v for v in variables}
        expected_labels: list[tuple[str, ...]] | None = None
        if all(p in by_name for p in parents):
            expected_labels = parent_combinations(
                [by_name[p].states for p in parents]
            )

        rows: list[CptRow] = []
        while self.at_keyword("row"):
            row_tok = self.advance()
            labels: list[str] = []
            while self.cur.kind == "ident":
                labels.append(self.advance().text)
                if self.cur.kind == "punct" and self.cur.text == ",":
                    self.advance()
            if not self.expect_punct(":"):
                self.skip_to_block_end()
                return None
            values: list[ProbValue] = []
            while True:
                if self.cur.kind != "number":
                    self.error("expected probability")
                    self.skip_to_block_end()
                    return None
                tok = self.advance()
                pv = _parse_number(tok)
                if pv is None:
                    self.error(f"bad number literal {tok.text!r}", tok)
                    pv = ProbValue(0.0, tok.text, False)
                values.append(pv)
                if self.cur.kind == "punct" and self.cur.text == ",":
                    self.advance()
                    continue
                break
            if not self.expect_punct(";"):
                self.skip_to_block_end()
                return None

            if expected_labels is not None and len(rows) < len(expected_labels):
                expected = expected_labels[len(rows)]
                if labels and tuple(labels) != expected:
                    self.error(
                        f"row {len(rows)} labels {', '.join(labels)!r} do not match "
                        f"expected combination {', '.join(expected)!r}",
                        row_tok,
                    )
                labels = list(expected)
            rows.append(CptRow(tuple(labels), tuple(values)))
        if not self.expect_punct("}"):
            self.skip_to_block_end()
            return None
        return CptBlock(child, tuple(parents), tuple(rows))

    def parse_scenario(self) -> ScenarioBlock | None:
        self.advance()  # scenario
        name = self.expect_ident("scenario name")
        if name is None or not self.expect_punct("{"):
            self.skip_to_block_end()
            return None
        assignments: list[tuple[str, str]] = []
        while self.cur.kind == "ident":
            var = self.advance().text
            if not self.expect_punct("="):
                self.skip_to_block_end()
                return None
            state = self.expect_ident("state label")
            if state is None:
                self.skip_to_block_end()
                return None
            assignments.append((var, state))
            if not self.expect_punct(";"):
                self.skip_to_block_end()
                return None
        if not self.expect_punct("}"):
            self.skip_to_block_end()
            return None
        return ScenarioBlock(name, tuple(assignments))


def parse(text: str) -> ParseResult:
    """Parse model text; never raises on malformed input."""
    tokens, diags = _tokenize(text)
    parser = _Parser(tokens, diags)
    doc = parser.parse_document()
    if any(d.severity == "error" for d in diags):
        return ParseResult(None, diags)
    return ParseResult(doc, diags)


def to_network_spec(doc: ModelDocument) -> NetworkSpec:
    return NetworkSpec(
        name=doc.name,
        variables=tuple(VariableSpec(v.name, v.states) for v in doc.variables),
        cpts=tuple(
            Cpt(
                c.child,
                c.parents,
                tuple(tuple(pv.value for pv in r.values) for r in c.rows),
            )
            for c in doc.cpts
        ),
    )


def serialize(doc: ModelDocument) -> str:
    """Canonical text form; parse(serialize(doc)) structurally equals doc."""
    lines: list[str] = [f"network {doc.name}", ""]
    for v in doc.variables:
        lines.append(f"variable {v.name} {{ states: {', '.join(v.states)} }}")
    for c in doc.cpts:
        head = f"cpt {c.child}"
        if c.parents:
            head += " | " + ", ".join(c.parents)
        lines.append("")
        lines.append(head + " {")
        for r in c.rows:
            label = ", ".join(r.labels)
            label = f"row {label}:" if label else "row :"
            lines.append(f"  {label} {', '.join(pv.text for pv in r.values)};")
        lines.append("}")
    for s in doc.scenarios:
        lines.append("")
        lines.append(f"scenario {s.name} {{")
        for var, state in s.assignments:
            lines.append(f"  {var} = {state};")
        lines.append("}")
    return "\n".join(lines) + "\n"


def load_model(path: str) -> tuple[Network, ModelDocument]:
    """Read, parse and compile a .bnm file."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return compile_text(text)


def compile_text(text: str) -> tuple[Network, ModelDocument]:
    from .errors import InvalidNetworkError, ValidationIssue

    result = parse(text)
    if not result.ok:
        raise InvalidNetworkError(
            [
                ValidationIssue("SyntaxError", str(d))
                for d in result.diagnostics
                if d.severity == "error"
            ]
        )
    assert result.document is not None
    return compile_network(to_network_spec(result.document)), result.document
