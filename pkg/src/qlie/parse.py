"""Text expressions for scalars and noncommutative polynomials.

Grammar (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := atom ('^' uint)?
    atom   := letter | param | uint | '(' expr ')' | '[' expr ',' expr ']'

Letters are ``A``, ``B``, ``C`` and ``I`` (the empty word); parameters are
``q``, ``r``, ``s``, ``alpha``, ``beta``.  Juxtaposition is not
multiplication, and the right operand of ``/`` must be a nonzero scalar.
Rational literals are written as quotients, e.g. ``3/4``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .coeffs import VARIABLES, RatFunc
from .freealg import EMPTY, THREE_LETTERS, Alphabet, AlphabetMismatch, NCPoly, bracket


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"at position {position}: {message}")


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")
_LETTERS = ("A", "B", "C", "I")
_SYMBOLS = set("+-*/^()[],")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    for m in _TOKEN.finditer(text):
        pos = m.start()
        if m.group(1):
            tokens.append(Token("int", m.group(1), pos))
        elif m.group(2):
            name = m.group(2)
            if name not in _LETTERS and name not in VARIABLES:
                raise ParseError(f"unknown identifier {name!r}", pos, text)
            tokens.append(Token("name", name, pos))
        else:
            if m.group(3) not in _SYMBOLS:
                raise ParseError(f"unexpected character {m.group(3)!r}", pos, text)
            tokens.append(Token("op", m.group(3), pos))
    tokens.append(Token("end", "", len(text)))
    return tokens


# AST


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Param:
    name: str
    pos: int


@dataclass(frozen=True)
class Letter:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    arg: "ExprAST"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str  # + - * /
    left: "ExprAST"
    right: "ExprAST"
    pos: int


@dataclass(frozen=True)
class Power:
    base: "ExprAST"
    exponent: int
    pos: int


@dataclass(frozen=True)
class Bracket:
    left: "ExprAST"
    right: "ExprAST"
    pos: int


ExprAST = Union[Num, Param, Letter, Neg, BinOp, Power, Bracket]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.tok
        return ParseError(message, tok.pos, self.text)

    def take(self, value: str) -> Token:
        if self.tok.kind != "op" or self.tok.value != value:
            found = self.tok.value or "end of input"
            raise self.error(f"expected {value!r}, found {found!r}")
        tok = self.tok
        self.i += 1
        return tok

    def at(self, *values: str) -> bool:
        return self.tok.kind == "op" and self.tok.value in values

    def parse(self) -> ExprAST:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.value!r}")
        return node

    def expr(self) -> ExprAST:
        if self.at("+", "-"):
            tok = self.tok
            self.i += 1
            node = self.term()
            if tok.value == "-":
                node = Neg(node, tok.pos)
        else:
            node = self.term()
        while self.at("+", "-"):
            tok = self.tok
            self.i += 1
            node = BinOp(tok.value, node, self.term(), tok.pos)
        return node

    def term(self) -> ExprAST:
        node = self.factor()
        while self.at("*", "/"):
            tok = self.tok
            self.i += 1
            node = BinOp(tok.value, node, self.factor(), tok.pos)
        return node

    def factor(self) -> ExprAST:
        node = self.atom()
        if self.at("^"):
            tok = self.tok
            self.i += 1
            if self.tok.kind != "int":
                raise self.error("exponent must be a nonnegative integer")
            node = Power(node, int(self.tok.value), tok.pos)
            self.i += 1
        return node

    def atom(self) -> ExprAST:
        tok = self.tok
        if tok.kind == "int":
            self.i += 1
            return Num(int(tok.value), tok.pos)
        if tok.kind == "name":
            self.i += 1
            if tok.value in _LETTERS:
                return Letter(tok.value, tok.pos)
            return Param(tok.value, tok.pos)
        if self.at("("):
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        if self.at("["):
            self.i += 1
            left = self.expr()
            self.take(",")
            right = self.expr()
            self.take("]")
            return Bracket(left, right, tok.pos)
        found = tok.value or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse_expression(text: str) -> ExprAST:
    return _Parser(text).parse()


def lower(node: ExprAST, alphabet: Alphabet = THREE_LETTERS, text: str = "") -> NCPoly:
    """Evaluate an AST to a polynomial over ``alphabet``."""
    if isinstance(node, Num):
        return NCPoly.scalar(alphabet, node.value)
    if isinstance(node, Param):
        return NCPoly.scalar(alphabet, RatFunc.var(node.name))
    if isinstance(node, Letter):
        if node.name == "I":
            return NCPoly.one(alphabet)
        if node.name not in alphabet:
            raise ParseError(f"letter {node.name} is not in alphabet {{{','.join(alphabet.letters)}}}",
                             node.pos, text)
        return NCPoly.word(alphabet, node.name)
    if isinstance(node, Neg):
        return -lower(node.arg, alphabet, text)
    if isinstance(node, Power):
        return lower(node.base, alphabet, text) ** node.exponent
    if isinstance(node, Bracket):
        return bracket(lower(node.left, alphabet, text), lower(node.right, alphabet, text))
    left = lower(node.left, alphabet, text)
    right = lower(node.right, alphabet, text)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if not right.is_scalar():
        raise ParseError("divisor must be a scalar", node.pos, text)
    c = right.scalar_value()
    if not c:
        raise ParseError("division by zero", node.pos, text)
    return left / c


def parse_poly(text: str, alphabet: Alphabet = THREE_LETTERS) -> NCPoly:
    try:
        return lower(parse_expression(text), alphabet, text)
    except AlphabetMismatch as exc:
        raise ParseError(str(exc), 0, text) from exc


def parse_scalar(text: str) -> RatFunc:
    p = parse_poly(text)
    if not p.is_scalar():
        raise ParseError("expected a scalar expression", 0, text)
    return p.terms.get(EMPTY, RatFunc(0))


def parse_word(text: str, alphabet: Alphabet = THREE_LETTERS):
    """Parse a monomial such as ``B*C^3*A`` and return its word."""
    p = parse_poly(text, alphabet)
    if len(p) != 1:
        raise ParseError("expected a single word", 0, text)
    (w, c), = p.terms.items()
    if not c.is_one():
        raise ParseError("expected a word with coefficient 1", 0, text)
    return w
