"""Hamiltonian expressions: tokenizer, precedence-climbing parser, printer, lowering.

Grammar (whitespace insensitive)::

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/")? unary)*        # juxtaposition multiplies
    unary   := ("-" | "+") unary | power
    power   := atom ("^" INT)?
    atom    := INT | "i" | X | P | G | NAME | "(" expr ")"
             | "{" expr "," expr "}" | "S" "(" INT "," INT ")"

``X``/``P``/``G`` may also be written in lower case.  Any other identifier is
a named rational parameter supplied at lowering time.  Decimal literals are
rejected: coefficients stay exact.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple, Union

from .algebra import I, GaussianRational, HamiltonianSplit, PhasePoly, poly_mul
from .ordering import OperatorPoly, op_mul, symmetric_product, weyl_symbol


class ExprSyntaxError(SyntaxError):
    """Parse failure with a 1-based line/column and the tokens that would fit."""

    def __init__(self, message: str, text: str, offset: int, expected: Tuple[str, ...] = ()):
        line = text.count("\n", 0, offset) + 1
        column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        detail = f"{message} at line {line}, column {column}"
        if expected:
            detail += f"; expected one of: {', '.join(expected)}"
        super().__init__(detail)
        self.line = line
        self.column = column
        self.expected = expected
        self.source = text


class LoweringError(ValueError):
    pass


# ---------------------------------------------------------------------------
# AST

Span = Tuple[int, int]


@dataclass(frozen=True)
class Num:
    value: Fraction
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Imag:
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Sym:
    name: str  # "X", "P" or "G"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Param:
    name: str
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str  # "+", "-", "*", "/"
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Anti:
    left: "Node"
    right: "Node"
    span: Span = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class SymS:
    m: int
    n: int
    span: Span = field(default=(0, 0), compare=False)


Node = Union[Num, Imag, Sym, Param, Neg, BinOp, Pow, Anti, SymS]


# ---------------------------------------------------------------------------
# tokenizer

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<dec>\d+\.\d*|\.\d+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(){},])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # int, name, op, eof
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind == "dec":
            raise ExprSyntaxError("decimal literals are not allowed, write a fraction p/q", text, pos)
        if kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("eof", "", len(text)))
    return out


_SYMBOLS = {"X": "X", "x": "X", "P": "P", "p": "P", "G": "G", "g": "G"}
_ATOM_START = ("INT", "NAME", "(", "{", "i", "S(m,n)")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.k = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.k]

    def advance(self) -> Token:
        t = self.tokens[self.k]
        self.k += 1
        return t

    def fail(self, message: str, expected: Tuple[str, ...] = ()):
        raise ExprSyntaxError(message, self.text, self.tok.pos, expected)

    def expect(self, text: str) -> Token:
        if self.tok.kind == "op" and self.tok.text == text:
            return self.advance()
        self.fail(f"unexpected {self._describe()}", (repr(text),))

    def _describe(self) -> str:
        return "end of input" if self.tok.kind == "eof" else f"token {self.tok.text!r}"

    def _starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("int", "name") or (t.kind == "op" and t.text in "({")

    def parse(self) -> Node:
        if self.tok.kind == "eof":
            self.fail("empty expression", _ATOM_START)
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail(f"unexpected {self._describe()}", ("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            node = BinOp(op, node, right, (node.span[0], right.span[1]))
        return node

    def term(self) -> Node:
        node = self.unary()
        while True:
            t = self.tok
            if t.kind == "op" and t.text in "*/":
                self.advance()
                right = self.unary()
                node = BinOp(t.text, node, right, (node.span[0], right.span[1]))
            elif self._starts_atom():
                right = self.power()
                node = BinOp("*", node, right, (node.span[0], right.span[1]))
            else:
                return node

    def unary(self) -> Node:
        t = self.tok
        if t.kind == "op" and t.text in "+-":
            self.advance()
            operand = self.unary()
            if t.text == "+":
                return operand
            return Neg(operand, (t.pos, operand.span[1]))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            if self.tok.kind != "int":
                self.fail("exponent must be a nonnegative integer literal", ("INT",))
            t = self.advance()
            return Pow(base, int(t.text), (base.span[0], t.pos + len(t.text)))
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "int":
            self.advance()
            return Num(Fraction(int(t.text)), (t.pos, t.pos + len(t.text)))
        if t.kind == "name":
            self.advance()
            end = t.pos + len(t.text)
            if t.text == "i":
                return Imag((t.pos, end))
            if t.text == "S" and self.tok.kind == "op" and self.tok.text == "(":
                self.advance()
                m = self._int()
                self.expect(",")
                n = self._int()
                close = self.expect(")")
                return SymS(m, n, (t.pos, close.pos + 1))
            if t.text in _SYMBOLS:
                return Sym(_SYMBOLS[t.text], (t.pos, end))
            return Param(t.text, (t.pos, end))
        if t.kind == "op" and t.text == "(":
            self.advance()
            inner = self.expr()
            self.expect(")")
            return inner
        if t.kind == "op" and t.text == "{":
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            close = self.expect("}")
            return Anti(left, right, (t.pos, close.pos + 1))
        self.fail(f"unexpected {self._describe()}", _ATOM_START)

    def _int(self) -> int:
        if self.tok.kind != "int":
            self.fail(f"unexpected {self._describe()}", ("INT",))
        return int(self.advance().text)


def parse(text: str, symbol_mode: bool = False) -> Node:
    """Parse ``text`` into an AST.  ``symbol_mode`` only affects lowering."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def to_text(node: Node) -> str:
    """Canonical text; ``parse(to_text(t))`` reproduces ``t`` structurally."""
    return _text(node, 0)


def _text(node: Node, ctx: int) -> str:
    if isinstance(node, Num):
        if node.value.denominator == 1:
            return str(node.value.numerator)
        s = f"{node.value.numerator}/{node.value.denominator}"
        return f"({s})" if ctx > 1 else s
    if isinstance(node, Imag):
        return "i"
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Param):
        return node.name
    if isinstance(node, SymS):
        return f"S({node.m},{node.n})"
    if isinstance(node, Anti):
        return "{" + _text(node.left, 0) + ", " + _text(node.right, 0) + "}"
    if isinstance(node, Pow):
        base = _text(node.base, 4)
        if isinstance(node.base, Pow):
            base = f"({base})"
        return f"{base}^{node.exponent}"
    if isinstance(node, Neg):
        s = "-" + _text(node.operand, 3)
        return f"({s})" if ctx > 1 else s
    if isinstance(node, BinOp):
        p = _PREC[node.op]
        left = _text(node.left, p)
        # left-associative: the right operand needs strictly higher precedence
        right = _text(node.right, p + 1)
        sep = f" {node.op} " if p == 1 else node.op
        s = f"{left}{sep}{right}"
        return f"({s})" if p < ctx else s
    raise TypeError(node)


# ---------------------------------------------------------------------------
# lowering

GPoly = Dict[int, object]  # power of G -> OperatorPoly | PhasePoly


class _Lowering:
    def __init__(self, params: Mapping[str, Fraction], symbol_mode: bool):
        self.params = {k: Fraction(v) for k, v in params.items()}
        self.symbol_mode = symbol_mode

    def zero(self):
        return PhasePoly() if self.symbol_mode else OperatorPoly()

    def const(self, c) -> GPoly:
        c = GaussianRational.coerce(c)
        if not c:
            return {}
        return {0: PhasePoly.constant(c) if self.symbol_mode else OperatorPoly.constant(c)}

    def mul1(self, a, b):
        return poly_mul(a, b) if self.symbol_mode else op_mul(a, b)

    def add(self, a: GPoly, b: GPoly) -> GPoly:
        out = dict(a)
        for k, v in b.items():
            s = out[k] + v if k in out else v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return out

    def scale(self, a: GPoly, c) -> GPoly:
        return {k: v.scale(c) for k, v in a.items() if v.scale(c)}

    def mul(self, a: GPoly, b: GPoly) -> GPoly:
        out: GPoly = {}
        for ka, va in a.items():
            for kb, vb in b.items():
                out = self.add(out, {ka + kb: self.mul1(va, vb)})
        return out

    def scalar_of(self, a: GPoly, node: Node) -> GaussianRational:
        if not a:
            raise LoweringError(f"division by zero in {to_text(node)!r}")
        if set(a) != {0}:
            raise LoweringError(f"can only divide by a constant, got {to_text(node)!r}")
        v = a[0]
        if any(tuple(k) != (0, 0) for k, _ in v.items()):
            raise LoweringError(f"can only divide by a constant, got {to_text(node)!r}")
        return v[(0, 0)]

    def lower(self, node: Node) -> GPoly:
        if isinstance(node, Num):
            return self.const(node.value)
        if isinstance(node, Imag):
            return self.const(I)
        if isinstance(node, Param):
            if node.name not in self.params:
                raise LoweringError(f"no value given for parameter {node.name!r}; pass --param {node.name}=<rational>")
            return self.const(self.params[node.name])
        if isinstance(node, Sym):
            if node.name == "G":
                return {1: PhasePoly.constant(1) if self.symbol_mode else OperatorPoly.constant(1)}
            if self.symbol_mode:
                return {0: PhasePoly.x() if node.name == "X" else PhasePoly.p()}
            return {0: OperatorPoly.X() if node.name == "X" else OperatorPoly.P()}
        if isinstance(node, SymS):
            if self.symbol_mode:
                return {0: PhasePoly.monomial(node.n, node.m)}
            return {0: symmetric_product(node.m, node.n)}
        if isinstance(node, Neg):
            return self.scale(self.lower(node.operand), -1)
        if isinstance(node, Pow):
            base = self.lower(node.base)
            out = self.const(1)
            for _ in range(node.exponent):
                out = self.mul(out, base)
            return out
        if isinstance(node, Anti):
            a, b = self.lower(node.left), self.lower(node.right)
            return self.add(self.mul(a, b), self.mul(b, a))
        if isinstance(node, BinOp):
            left = self.lower(node.left)
            right = self.lower(node.right)
            if node.op == "+":
                return self.add(left, right)
            if node.op == "-":
                return self.add(left, self.scale(right, -1))
            if node.op == "*":
                return self.mul(left, right)
            c = self.scalar_of(right, node.right)
            return self.scale(left, c.inverse())
        raise TypeError(node)


def _as_list(g: GPoly, zero) -> list:
    if not g:
        return []
    top = max(g)
    return [g.get(k, zero) for k in range(top + 1)]


def lower_operator(node: Node, params: Mapping[str, Fraction]) -> List[OperatorPoly]:
    """Coefficients of ``G^0, G^1, ...`` as normal-ordered operators."""
    lw = _Lowering(params, symbol_mode=False)
    return _as_list(lw.lower(node), OperatorPoly())


def lower_symbol(node: Node, params: Mapping[str, Fraction]) -> List[PhasePoly]:
    """Coefficients of ``g^0, g^1, ...`` with x, p commuting."""
    lw = _Lowering(params, symbol_mode=True)
    return _as_list(lw.lower(node), PhasePoly())


def to_hamiltonian(text: str, params: Optional[Mapping[str, Fraction]] = None, mode: str = "operator") -> HamiltonianSplit:
    """Parse ``text`` and split it as ``h0 + i*g*h1`` with real Weyl symbols.

    In ``operator`` mode X and P do not commute and the lowered operator is
    converted to its Weyl symbol; in ``symbol`` mode the input is taken as the
    Weyl symbol directly.
    """
    params = {k: Fraction(v) for k, v in (params or {}).items()}
    node = parse(text)
    if mode == "operator":
        parts = [weyl_symbol(a) for a in lower_operator(node, params)]
    elif mode == "symbol":
        parts = lower_symbol(node, params)
    else:
        raise ValueError(f"unknown input mode {mode!r}")
    if len(parts) > 2:
        raise LoweringError("the Hamiltonian must be at most linear in G (H = h0 + i*G*h1)")
    h0 = parts[0] if parts else PhasePoly()
    ih1 = parts[1] if len(parts) > 1 else PhasePoly()
    h1 = ih1.scale(-I)
    if not h0.is_real():
        raise LoweringError(f"G-independent part is not Hermitian: {h0}")
    if not h1.is_real():
        raise LoweringError(f"G-linear part is not i times a Hermitian operator: {ih1}")
    return HamiltonianSplit(h0, h1, params)
