"""Text format for adjunct representations (``.adl`` files).

Grammar::

    document   := "lattice" IDENT "{" chainStmt adjoinStmt* "}"
    chainStmt  := "chain" IDENT+ ";"
    adjoinStmt := "adjoin" "(" IDENT "," IDENT ")" ":" IDENT+ ";"

``#`` starts a comment running to end of line.  IDENT is
``[A-Za-z_][A-Za-z0-9_]*`` or the reserved root symbol ``⊤``; the token ``0``
names the bottom and is permitted only as the first element of the chain
statement and as the first component of a pair.  The keywords ``lattice``,
``chain`` and ``adjoin`` are reserved and cannot name elements.  Files are
UTF-8 and newline-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DslSyntaxError, DuplicateElement, PairNotAdjunctable, UnknownElement
from .lattice import Adjunction, AdjunctExpr, Lattice, adjunct, chain_lattice

_KEYWORDS = {"lattice", "chain", "adjoin"}
_IDENT_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_IDENT_CONT = _IDENT_START | set("0123456789")


@dataclass(frozen=True)
class _Token:
    kind: str  # IDENT ZERO LBRACE RBRACE LPAREN RPAREN COMMA COLON SEMI EOF
    text: str
    line: int
    col: int


_PUNCT = {"{": "LBRACE", "}": "RBRACE", "(": "LPAREN", ")": "RPAREN", ",": "COMMA", ":": "COLON", ";": "SEMI"}


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
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
        if ch in _PUNCT:
            tokens.append(_Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        if ch == "⊤":
            tokens.append(_Token("IDENT", ch, line, col))
            i += 1
            col += 1
            continue
        if ch in _IDENT_START:
            start = i
            while i < n and text[i] in _IDENT_CONT:
                i += 1
            word = text[start:i]
            tokens.append(_Token("IDENT", word, line, col))
            col += i - start
            continue
        if ch == "0" and not (i + 1 < n and text[i + 1] in _IDENT_CONT):
            tokens.append(_Token("ZERO", "0", line, col))
            i += 1
            col += 1
            continue
        raise DslSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("EOF", "", line, col))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> _Token:
        tok = self.next()
        if tok.kind != kind:
            raise DslSyntaxError(f"expected {what}, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        return tok

    def keyword(self, word: str) -> None:
        tok = self.next()
        if tok.kind != "IDENT" or tok.text != word:
            raise DslSyntaxError(f"expected {word!r}, found {tok.text or 'end of input'!r}", tok.line, tok.col)

    def element(self, defined: dict[str, _Token], declare: bool, allow_zero: bool) -> str:
        tok = self.next()
        if tok.kind == "ZERO":
            if not allow_zero:
                raise DslSyntaxError("'0' is only allowed as the bottom of the chain or first in a pair", tok.line, tok.col)
            name = "0"
        elif tok.kind == "IDENT":
            if tok.text in _KEYWORDS:
                raise DslSyntaxError(f"{tok.text!r} is a reserved word", tok.line, tok.col)
            name = tok.text
        else:
            raise DslSyntaxError(f"expected an element name, found {tok.text or 'end of input'!r}", tok.line, tok.col)
        if declare:
            if name in defined:
                raise DuplicateElement(f"element {name!r} already defined", tok.line, tok.col)
            defined[name] = tok
        else:
            if name not in defined:
                raise UnknownElement(f"unknown element {name!r} in pair", tok.line, tok.col)
        return name

    def document(self) -> AdjunctExpr:
        self.keyword("lattice")
        name_tok = self.expect("IDENT", "a lattice name")
        if name_tok.text in _KEYWORDS:
            raise DslSyntaxError(f"{name_tok.text!r} is a reserved word", name_tok.line, name_tok.col)
        self.expect("LBRACE", "'{'")

        defined: dict[str, _Token] = {}
        self.keyword("chain")
        base = [self.element(defined, declare=True, allow_zero=True)]
        while self.peek().kind in ("IDENT", "ZERO"):
            base.append(self.element(defined, declare=True, allow_zero=False))
        self.expect("SEMI", "';'")

        adjunctions: list[Adjunction] = []
        while self.peek().kind == "IDENT" and self.peek().text == "adjoin":
            self.next()
            self.expect("LPAREN", "'('")
            a = self.element(defined, declare=False, allow_zero=True)
            self.expect("COMMA", "','")
            b = self.element(defined, declare=False, allow_zero=False)
            self.expect("RPAREN", "')'")
            self.expect("COLON", "':'")
            chain = [self.element(defined, declare=True, allow_zero=False)]
            while self.peek().kind in ("IDENT", "ZERO"):
                chain.append(self.element(defined, declare=True, allow_zero=False))
            self.expect("SEMI", "';'")
            adjunctions.append(Adjunction(pair=(a, b), chain=tuple(chain)))

        self.expect("RBRACE", "'}'")
        self.expect("EOF", "end of input")
        return AdjunctExpr(base=tuple(base), adjunctions=tuple(adjunctions), name=name_tok.text)


def parse(text: str) -> AdjunctExpr:
    """Parse ``.adl`` source into an AdjunctExpr.

    Scoping is checked here (each element defined exactly once, pairs
    reference known elements); the order conditions on a pair are checked by
    :func:`elaborate`.
    """
    return _Parser(text).document()


def serialize(expr: AdjunctExpr) -> str:
    """Render an AdjunctExpr in canonical whitespace; parse(serialize(E)) == E."""
    lines = [f"lattice {expr.name} {{"]
    lines.append("  chain " + " ".join(expr.base) + ";")
    for adj in expr.adjunctions:
        a, b = adj.pair
        lines.append(f"  adjoin ({a}, {b}): " + " ".join(adj.chain) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"


def elaborate(expr: AdjunctExpr) -> Lattice:
    """Build the lattice an AdjunctExpr denotes, applying adjunctions
    left-to-right.  Raises PairNotAdjunctable when a pair violates the
    operation's preconditions at the moment of its adjunction."""
    lat = chain_lattice(expr.base)
    for adj in expr.adjunctions:
        a, b = adj.pair
        if a not in lat.labels or b not in lat.labels:
            missing = a if a not in lat.labels else b
            raise PairNotAdjunctable(f"pair references element {missing!r} not yet introduced")
        lat = adjunct(lat, chain_lattice(adj.chain), a, b)
    return lat


def parse_file(path: str) -> AdjunctExpr:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())
