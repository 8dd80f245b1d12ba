"""Parser for ring documents and polynomials.

Document grammar (statements end with ``;``)::

    char 32003;
    vars x, y, z, w;
    rel x*z, x*w, y*z, y*w;
    ideal Q = x + z, y + w;

Polynomials use integer coefficients, ``*``, ``^`` and parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .algebra import DEFAULT_CHARACTERISTIC, Polynomial, is_prime
from .errors import InputError, ParseError
from .groebner import Ideal, Ring

_TOKEN = re.compile(
    r"(?P<ws>[ \t\r]+)|(?P<nl>\n)|(?P<comment>#[^\n]*)"
    r"|(?P<int>\d+)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*^(),;=])"
)


@dataclass
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    line: int
    column: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind in ("int", "name", "op"):
            tokens.append(Token(kind, m.group(), line, col))
        pos = m.end()
    tokens.append(Token("end", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: List[Token], ring: Optional[Ring] = None):
        self.tokens = tokens
        self.i = 0
        self.ring = ring

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            got = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, got {got!r}")

    # polynomial grammar
    def expr(self) -> Polynomial:
        neg = False
        if self.accept("-"):
            neg = True
        elif self.accept("+"):
            pass
        result = self.term()
        if neg:
            result = -result
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self.accept("*"):
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        if self.accept("-"):
            return -self.factor()
        base = self.atom()
        if self.accept("^"):
            tok = self.tok
            if tok.kind == "op" and tok.text == "-":
                raise self.error("negative exponent")
            if tok.kind != "int":
                raise self.error("exponent must be a non-negative integer")
            self.advance()
            base = base ** int(tok.text)
        return base

    def atom(self) -> Polynomial:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return Polynomial.constant(self.ring, int(tok.text))
        if tok.kind == "name":
            self.advance()
            if tok.text not in self.ring.variables:
                raise self.error(f"unknown variable {tok.text!r}", tok)
            return Polynomial.variable(self.ring, self.ring.variables.index(tok.text))
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        got = tok.text or "end of input"
        raise self.error(f"malformed token {got!r}")

    def poly_list(self) -> List[Polynomial]:
        out = []
        if self.tok.kind == "op" and self.tok.text == ";":
            return out
        out.append(self.expr())
        while self.accept(","):
            out.append(self.expr())
        return out


def parse_poly(text: str, ring: Ring) -> Polynomial:
    """Parse one polynomial; coefficients are reduced mod the ring characteristic."""
    p = _Parser(tokenize(text), ring)
    f = p.expr()
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r} after polynomial")
    return f


def parse_poly_list(text: str, ring: Ring) -> List[Polynomial]:
    """Comma-separated polynomials, e.g. an inline ideal ``"x+z, y+w"``."""
    p = _Parser(tokenize(text), ring)
    out = [p.expr()]
    while p.accept(","):
        out.append(p.expr())
    if p.tok.kind != "end":
        raise p.error(f"unexpected {p.tok.text!r}")
    return out


@dataclass
class RingDocument:
    """A parsed ring document: the ring plus its named ideals."""

    ring: Ring
    ideals: Dict[str, Ideal] = field(default_factory=dict)
    source: str = ""

    def ideal(self, spec: str) -> Ideal:
        """Resolve a name, the alias ``m``, or an inline generator list."""
        spec = spec.strip()
        if spec in self.ideals:
            return self.ideals[spec]
        if spec == "m":
            return self.ring.maximal_ideal
        return self.ring.ideal(parse_poly_list(spec, self.ring))


def parse_ring(text: str, characteristic: int | None = None, default: int | None = None) -> RingDocument:
    """Parse a ring document.

    ``characteristic`` overrides a ``char`` statement; ``default`` applies
    only when the document has none, and falls back to 32003.
    """
    tokens = tokenize(text)
    p = _Parser(tokens)
    char_tok: Token | None = None
    char_value: int | None = None
    variables: List[str] | None = None
    rel_start: int | None = None
    ideal_specs: List[Tuple[str, int, Token]] = []

    # first pass: collect statement positions (relations need the ring first)
    while p.tok.kind != "end":
        head = p.tok
        if head.kind != "name":
            raise p.error(f"expected a statement keyword, got {head.text!r}")
        p.advance()
        if head.text == "char":
            tok = p.tok
            if tok.kind != "int":
                raise p.error("char expects an integer")
            p.advance()
            char_tok, char_value = tok, int(tok.text)
            p.expect(";")
        elif head.text == "vars":
            if variables is not None:
                raise p.error("vars declared twice", head)
            variables = []
            while True:
                tok = p.tok
                if tok.kind != "name":
                    raise p.error("expected a variable name")
                if tok.text in variables:
                    raise p.error(f"duplicate variable {tok.text!r}", tok)
                variables.append(tok.text)
                p.advance()
                if not p.accept(","):
                    break
            p.expect(";")
        elif head.text in ("rel", "ideal"):
            if head.text == "rel":
                if rel_start is not None:
                    raise p.error("rel declared twice", head)
                rel_start = p.i
            else:
                name_tok = p.tok
                if name_tok.kind != "name":
                    raise p.error("expected an ideal name")
                p.advance()
                p.expect("=")
                ideal_specs.append((name_tok.text, p.i, name_tok))
            # skip to the terminating ';' at depth zero
            depth = 0
            while not (p.tok.kind == "op" and p.tok.text == ";" and depth == 0):
                if p.tok.kind == "end":
                    raise p.error("missing ';'")
                if p.tok.text == "(":
                    depth += 1
                elif p.tok.text == ")":
                    depth -= 1
                p.advance()
            p.advance()
        else:
            raise p.error(f"unknown statement {head.text!r}", head)

    if variables is None:
        raise ParseError("missing vars statement", tokens[-1].line, tokens[-1].column)
    if characteristic is not None:
        char_value = characteristic
    if char_value is None:
        char_value = default if default is not None else DEFAULT_CHARACTERISTIC
    if not is_prime(char_value):
        where = char_tok or tokens[0]
        raise ParseError(f"characteristic {char_value} is not prime", where.line, where.column)

    ring = Ring(variables, char_value)
    relations: List[Polynomial] = []
    if rel_start is not None:
        q = _Parser(tokens, ring)
        q.i = rel_start
        relations = q.poly_list()
        q.expect(";")
    ring.relations = tuple(r for r in relations if r)

    ideals: Dict[str, Ideal] = {}
    for name, start, tok in ideal_specs:
        if name in ideals:
            raise ParseError(f"ideal {name!r} declared twice", tok.line, tok.column)
        q = _Parser(tokens, ring)
        q.i = start
        gens = q.poly_list()
        q.expect(";")
        ideals[name] = ring.ideal(gens)
    return RingDocument(ring, ideals, text)


def format_ring(doc: RingDocument) -> str:
    ring = doc.ring
    lines = [f"char {ring.characteristic};", f"vars {', '.join(ring.variables)};"]
    lines.append("rel " + ", ".join(str(r) for r in ring.relations) + ";")
    for name, ideal in doc.ideals.items():
        lines.append(f"ideal {name} = " + ", ".join(str(g) for g in ideal.generators) + ";")
    return "\n".join(lines) + "\n"
