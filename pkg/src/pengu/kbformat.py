"""Text format for annotated KBs and Boolean queries.

Grammar (UTF-8, LF or CRLF line endings)::

    file    := line*
    line    := ws? (comment | axiom | empty) ws?
    comment := '#' anything
    axiom   := (prob ws? '::' ws?)? axbody
    prob    := digits ('.' digits)?          # must satisfy 0 < value < 1
    axbody  := 'SubClassOf(' c ',' c ')'
             | 'ClassAssertion(' c ',' name ')'
             | 'PropertyAssertion(' name ',' name ',' name ')'
    c       := name | 'Thing' | 'Nothing' | 'Not(' c ')'
             | 'And(' c (',' c)+ ')' | 'Or(' c (',' c)+ ')'
             | 'Some(' name ',' c ')' | 'All(' name ',' c ')'
    name    := [A-Za-z_][A-Za-z0-9_]*

Query strings use the same ``axbody`` grammar plus ``Consistent()``. The
operator keywords double as plain names when not followed by ``(``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import (
    DuplicateAxiomError,
    FreshAxiomPresentError,
    ParseError,
    ParseErrorKind,
)
from .model import (
    All,
    And,
    Atomic,
    Axiom,
    BOTTOM,
    Bottom,
    Concept,
    ConceptAssertion,
    Gci,
    KnowledgeBase,
    Not,
    Or,
    RoleAssertion,
    Some,
    TOP,
    Top,
)


# --------------------------------------------------------------------------
# Queries
# --------------------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class IsConsistent:
    pass


@dataclass(frozen=True, slots=True)
class ConceptAssertionQuery:
    individual: str
    concept: Concept


@dataclass(frozen=True, slots=True)
class SubsumptionQuery:
    sub: Concept
    sup: Concept


Query = Union[IsConsistent, ConceptAssertionQuery, SubsumptionQuery]


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_CONT = _NAME_START | set("0123456789")
_OPERATORS = {"Not", "And", "Or", "Some", "All"}


class _LineParser:
    """Recursive-descent parser over one line; tracks 1-based columns."""

    def __init__(self, text: str, lineno: int):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def error(self, kind: ParseErrorKind, message: str, col: Optional[int] = None):
        raise ParseError(self.lineno, (self.pos if col is None else col) + 1, kind, message)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def expect(self, token: str) -> None:
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.error(ParseErrorKind.SYNTAX, f"expected {token!r}")
        self.pos += len(token)

    def name(self, what: str = "name") -> str:
        self.skip_ws()
        start = self.pos
        if self.peek() not in _NAME_START:
            self.error(ParseErrorKind.BAD_NAME,
                       f"expected {what} ([A-Za-z_][A-Za-z0-9_]*)")
        while self.peek() in _NAME_CONT:
            self.pos += 1
        return self.text[start:self.pos]

    def probability(self) -> float:
        self.skip_ws()
        start = self.pos
        while self.peek().isdigit():
            self.pos += 1
        if self.peek() == ".":
            self.pos += 1
            if not self.peek().isdigit():
                self.error(ParseErrorKind.SYNTAX, "expected digits after decimal point")
            while self.peek().isdigit():
                self.pos += 1
        value = float(self.text[start:self.pos])
        if not (0.0 < value < 1.0):
            self.error(ParseErrorKind.BAD_PROBABILITY,
                       f"probability must satisfy 0 < p < 1, got {self.text[start:self.pos]}",
                       col=start)
        return value

    def concept(self) -> Concept:
        ident = self.name("concept")
        if ident == "Thing":
            return TOP
        if ident == "Nothing":
            return BOTTOM
        if ident in _OPERATORS and self.peek() == "(":
            return self._operator(ident)
        return Atomic(ident)

    def _operator(self, op: str) -> Concept:
        self.expect("(")
        if op == "Not":
            c = self.concept()
            self.expect(")")
            return Not(c)
        if op in ("And", "Or"):
            args = [self.concept()]
            self.expect(",")
            args.append(self.concept())
            while True:
                self.skip_ws()
                if self.peek() == ",":
                    self.pos += 1
                    args.append(self.concept())
                else:
                    break
            self.expect(")")
            return And(tuple(args)) if op == "And" else Or(tuple(args))
        # Some / All
        role = self.name("role name")
        self.expect(",")
        filler = self.concept()
        self.expect(")")
        return Some(role, filler) if op == "Some" else All(role, filler)

    def axiom_body(self) -> Axiom:
        self.skip_ws()
        start = self.pos
        keyword = self.name("axiom keyword")
        if keyword == "SubClassOf":
            self.expect("(")
            sub = self.concept()
            self.expect(",")
            sup = self.concept()
            self.expect(")")
            return Gci(sub, sup)
        if keyword == "ClassAssertion":
            self.expect("(")
            c = self.concept()
            self.expect(",")
            ind = self.name("individual name")
            self.expect(")")
            return ConceptAssertion(ind, c)
        if keyword == "PropertyAssertion":
            self.expect("(")
            role = self.name("role name")
            self.expect(",")
            subj = self.name("individual name")
            self.expect(",")
            obj = self.name("individual name")
            self.expect(")")
            return RoleAssertion(role, subj, obj)
        self.error(ParseErrorKind.SYNTAX,
                   f"expected SubClassOf, ClassAssertion or PropertyAssertion, got {keyword!r}",
                   col=start)

    def end_of_line(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            self.error(ParseErrorKind.SYNTAX, "unexpected trailing characters")


def _logical_lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [ln[:-1] if ln.endswith("\r") else ln for ln in lines]


def parse_kb(text: str) -> KnowledgeBase:
    """Parse a KB file; axiom ids follow line order, comments and blanks skipped."""
    kb = KnowledgeBase()
    id_to_line: dict[int, int] = {}
    for lineno, raw in enumerate(_logical_lines(text), start=1):
        p = _LineParser(raw, lineno)
        p.skip_ws()
        if p.pos == len(raw) or p.peek() == "#":
            continue
        prob = None
        body_start = p.pos
        if p.peek().isdigit():
            prob = p.probability()
            p.expect("::")
        axiom = p.axiom_body()
        p.end_of_line()
        try:
            aid = kb.add(axiom, prob)
        except DuplicateAxiomError as e:
            first = id_to_line.get(e.existing_id, 0)
            raise ParseError(
                lineno, body_start + 1, ParseErrorKind.DUPLICATE_AXIOM,
                f"duplicate axiom, first declared on line {first}; combine "
                "independent evidence into one annotation with p = 1-(1-p1)*(1-p2)",
            ) from None
        id_to_line[aid] = lineno
    return kb


def parse_query(text: str) -> Query:
    """Parse a query string: an axiom body or ``Consistent()``."""
    p = _LineParser(text.strip(), 1)
    p.skip_ws()
    mark = p.pos
    if p.text.startswith("Consistent", p.pos):
        p.pos += len("Consistent")
        p.skip_ws()
        if p.peek() == "(":
            p.expect("(")
            p.expect(")")
            p.end_of_line()
            return IsConsistent()
        p.pos = mark
    axiom = p.axiom_body()
    p.end_of_line()
    if isinstance(axiom, Gci):
        return SubsumptionQuery(axiom.sub, axiom.sup)
    if isinstance(axiom, ConceptAssertion):
        return ConceptAssertionQuery(axiom.individual, axiom.concept)
    raise ParseError(1, mark + 1, ParseErrorKind.SYNTAX,
                     "role assertions are not supported as queries")


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------

def serialize_concept(c: Concept) -> str:
    if isinstance(c, Atomic):
        return c.name
    if isinstance(c, Top):
        return "Thing"
    if isinstance(c, Bottom):
        return "Nothing"
    if isinstance(c, Not):
        return f"Not({serialize_concept(c.arg)})"
    if isinstance(c, And):
        return f"And({', '.join(serialize_concept(a) for a in c.args)})"
    if isinstance(c, Or):
        return f"Or({', '.join(serialize_concept(a) for a in c.args)})"
    if isinstance(c, Some):
        return f"Some({c.role}, {serialize_concept(c.filler)})"
    if isinstance(c, All):
        return f"All({c.role}, {serialize_concept(c.filler)})"
    raise TypeError(f"not a concept: {c!r}")


def serialize_axiom(axiom: Axiom) -> str:
    if isinstance(axiom, Gci):
        return f"SubClassOf({serialize_concept(axiom.sub)}, {serialize_concept(axiom.sup)})"
    if isinstance(axiom, ConceptAssertion):
        return f"ClassAssertion({serialize_concept(axiom.concept)}, {axiom.individual})"
    if isinstance(axiom, RoleAssertion):
        return f"PropertyAssertion({axiom.role}, {axiom.subject}, {axiom.object})"
    raise TypeError(f"not an axiom: {axiom!r}")


def serialize_query(q: Query) -> str:
    if isinstance(q, IsConsistent):
        return "Consistent()"
    if isinstance(q, ConceptAssertionQuery):
        return f"ClassAssertion({serialize_concept(q.concept)}, {q.individual})"
    if isinstance(q, SubsumptionQuery):
        return f"SubClassOf({serialize_concept(q.sub)}, {serialize_concept(q.sup)})"
    raise TypeError(f"not a query: {q!r}")


def format_probability(p: float) -> str:
    """Shortest decimal that round-trips; always plain (the grammar has no exponent)."""
    s = repr(p)
    if "e" not in s and "E" not in s:
        return s
    for precision in range(1, 30):
        s = f"{p:.{precision}f}"
        if float(s) == p:
            return s
    return f"{p:.30f}"


def serialize_kb(kb: KnowledgeBase) -> str:
    """One axiom per line in id order; probabilities use shortest round-trip decimals."""
    if kb.fresh_ids:
        raise FreshAxiomPresentError(
            "cannot serialize a KB containing injected query axioms"
        )
    lines = []
    for ann in kb:
        body = serialize_axiom(ann.axiom)
        if ann.probability is not None:
            body = f"{format_probability(ann.probability)} :: {body}"
        lines.append(body)
    return "".join(line + "\n" for line in lines)
