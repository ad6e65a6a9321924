"""Multivector expression language.

Grammar (all three products share one precedence level, left associative)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '^' | '|') factor)*
    factor := '-' factor | atom
    atom   := NUMBER | 'i' | GEN | '(' expr ')' | '{' expr ',' expr '}'
            | '[' expr ',' expr ']' | 'exp' '(' expr ')'
    GEN    := ('e' | 'theta' | 'd') DIGITS
    NUMBER := DIGITS ['.' DIGITS] ['i'] | '.' DIGITS ['i']

``*`` is the geometric (or matrix) product, ``^`` the wedge, ``|`` the left
contraction (general multivector form); ``{a, b}`` is the anticommutator and ``[a, b]`` the commutator.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from gk.blades import Multivector, format_real, popcount, wedge
from gk.clifford import (
    CliffordElement,
    Signature,
    anticommutator,
    commutator,
    left_contraction,
)
from gk.errors import DomainError, UnsupportedError
from gk.matrices import (
    build_clifford_generators,
    build_fermion_rep,
    exp_series,
    identity,
    max_abs,
    rep_map,
    rep_unmap,
)


class ParseError(DomainError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"offset {offset}: {message}")
        self.offset = offset


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: float
    imag: bool = False


@dataclass(frozen=True)
class Gen:
    kind: str  # "e", "theta" or "d"
    index: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * ^ |
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Bracket:
    kind: str  # "commutator" or "anticommutator"
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


@dataclass(frozen=True)
class Group:
    inner: "Node"


Node = Union[Num, Gen, Neg, BinOp, Bracket, Call, Group]


# -- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+(?:\.\d+)?|\.\d+)i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*^|(){}\[\],])
    """,
    re.VERBOSE,
)
_GEN = re.compile(r"(e|theta|d)(\d+)")


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "gen", "i", "exp", "op", "end"
    text: str
    offset: int  # 1-based


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:
            raise ParseError(f"unknown token {src[pos]!r}", pos + 1)
        kind, text = m.lastgroup, m.group()
        if kind == "name":
            if text == "i":
                kind = "i"
            elif text == "exp":
                kind = "exp"
            elif _GEN.fullmatch(text):
                kind = "gen"
            else:
                raise ParseError(f"unknown token {text!r}", pos + 1)
        if kind != "ws":
            tokens.append(Token(kind, text, pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(src) + 1))
    return tokens


# -- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, src: str):
        self.tokens = tokenize(src)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def fail(self, expected: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ParseError(f"expected {expected}, found {found}", t.offset)

    def expect(self, text: str) -> None:
        if self.tok.kind == "op" and self.tok.text == text:
            self.advance()
        else:
            self.fail(repr(text))

    def at(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            self.fail("an operator or end of input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.at("*", "^", "|"):
            op = self.advance().text
            node = BinOp(op, node, self.factor())
        return node

    def factor(self) -> Node:
        if self.at("-"):
            self.advance()
            return Neg(self.factor())
        return self.atom()

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            imag = t.text.endswith("i")
            return Num(float(t.text.rstrip("i")), imag)
        if t.kind == "i":
            self.advance()
            return Num(1.0, True)
        if t.kind == "gen":
            self.advance()
            kind, digits = _GEN.fullmatch(t.text).groups()
            index = int(digits)
            if index < 1:
                raise ParseError(f"generator index must be >= 1 in {t.text!r}", t.offset)
            return Gen(kind, index)
        if t.kind == "exp":
            self.advance()
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call("exp", arg)
        if self.at("("):
            self.advance()
            inner = self.expr()
            self.expect(")")
            return Group(inner)
        if self.at("{", "["):
            close = "}" if t.text == "{" else "]"
            self.advance()
            left = self.expr()
            self.expect(",")
            right = self.expr()
            self.expect(close)
            kind = "anticommutator" if close == "}" else "commutator"
            return Bracket(kind, left, right)
        self.fail("a number, generator, '(', '{', '[' or 'exp'")


def parse(src: str) -> Node:
    return _Parser(src).parse()


def to_source(node: Node) -> str:
    """Render an AST back to text that parses to the same tree."""
    if isinstance(node, Num):
        return format_real(node.value) + ("i" if node.imag else "")
    if isinstance(node, Gen):
        return f"{node.kind}{node.index}"
    if isinstance(node, Neg):
        return "-" + to_source(node.operand)
    if isinstance(node, BinOp):
        return f"{to_source(node.left)} {node.op} {to_source(node.right)}"
    if isinstance(node, Bracket):
        o, c = ("{", "}") if node.kind == "anticommutator" else ("[", "]")
        return f"{o}{to_source(node.left)}, {to_source(node.right)}{c}"
    if isinstance(node, Call):
        return f"{node.name}({to_source(node.arg)})"
    if isinstance(node, Group):
        return f"({to_source(node.inner)})"
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation --------------------------------------------------------------


@dataclass(frozen=True)
class EvalContext:
    """Where generators live: the blade algebra of ``sig`` or its matrix image.

    The matrix backend uses ``modes`` fermionic modes with ``sig.n == 2 * modes``.
    """

    sig: Signature
    backend: str = "blades"
    modes: int | None = None

    def __post_init__(self) -> None:
        if self.backend not in ("blades", "matrix"):
            raise DomainError(f"unknown backend {self.backend!r}")
        if self.backend == "matrix":
            modes = self.modes
            if modes is None:
                if self.sig.n % 2:
                    raise DomainError(f"matrix backend needs an even generator count, {self.sig} has {self.sig.n}")
                modes = self.sig.n // 2
                object.__setattr__(self, "modes", modes)
            if self.sig.n != 2 * modes:
                raise DomainError(f"{self.sig} does not match {modes} modes (need p+q = {2 * modes})")

    @classmethod
    def matrix(cls, modes: int, sig: Signature | None = None) -> EvalContext:
        return cls(sig or Signature(2 * modes, 0), "matrix", modes)

    @cached_property
    def rep(self):
        return build_fermion_rep(self.modes)

    @cached_property
    def gens(self) -> list[np.ndarray]:
        return build_clifford_generators(self.rep, self.sig)

    @property
    def dim(self) -> int:
        return 1 << self.modes


Value = Union[CliffordElement, np.ndarray]


def _scalar(c: complex, ctx: EvalContext) -> Value:
    if ctx.backend == "matrix":
        return c * identity(ctx.dim)
    return CliffordElement.scalar(ctx.sig, c)


def _generator(g: Gen, ctx: EvalContext) -> Value:
    if g.kind == "e":
        if g.index > ctx.sig.n:
            raise DomainError(f"e{g.index} exceeds the {ctx.sig.n} generators of {ctx.sig}")
        if ctx.backend == "matrix":
            return ctx.gens[g.index - 1]
        return CliffordElement.generator(ctx.sig, g.index)
    if ctx.backend != "matrix":
        raise DomainError(f"{g.kind}{g.index} is an operator; use the matrix backend")
    if g.index > ctx.modes:
        raise DomainError(f"{g.kind}{g.index} exceeds the {ctx.modes} modes")
    source = ctx.rep.theta if g.kind == "theta" else ctx.rep.dels
    return source[g.index - 1]


def _exp_blade(a: CliffordElement) -> CliffordElement:
    """Closed-form exponential of a scaled 2-blade whose square is ``-s^2``."""
    if a.is_zero():
        return CliffordElement.scalar(a.sig, 1)
    if len(a.terms) != 1 or popcount(next(iter(a.terms))) != 2:
        raise UnsupportedError("unsupported exponent: blade backend only exponentiates a scaled 2-blade")
    sq = (a * a).scalar_part()
    if abs(sq.imag) > 1e-12 * max(1.0, abs(sq)) or sq.real >= 0:
        raise UnsupportedError("unsupported exponent: the 2-blade must square to a negative real")
    s = math.sqrt(-sq.real)
    return math.cos(s) + a * (math.sin(s) / s)


def _wedge_or_contract(op: str, a: Value, b: Value, ctx: EvalContext) -> Value:
    if ctx.backend == "blades":
        if op == "^":
            return CliffordElement(ctx.sig, wedge(a.mv, b.mv))
        return left_contraction(a, b)
    # Pull matrices back to the algebra; the representation is faithful.
    ea = rep_unmap(a, ctx.gens, ctx.sig)
    eb = rep_unmap(b, ctx.gens, ctx.sig)
    if op == "^":
        out = CliffordElement(ctx.sig, wedge(ea.mv, eb.mv))
    else:
        out = left_contraction(ea, eb)
    return rep_map(out, ctx.gens)


def evaluate(node: Node, ctx: EvalContext) -> Value:
    if isinstance(node, Num):
        return _scalar(complex(0, node.value) if node.imag else complex(node.value), ctx)
    if isinstance(node, Gen):
        return _generator(node, ctx)
    if isinstance(node, Group):
        return evaluate(node.inner, ctx)
    if isinstance(node, Neg):
        return -evaluate(node.operand, ctx)
    if isinstance(node, BinOp):
        a = evaluate(node.left, ctx)
        b = evaluate(node.right, ctx)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a - b
        if node.op == "*":
            return a @ b if ctx.backend == "matrix" else a * b
        return _wedge_or_contract(node.op, a, b, ctx)
    if isinstance(node, Bracket):
        a = evaluate(node.left, ctx)
        b = evaluate(node.right, ctx)
        return anticommutator(a, b) if node.kind == "anticommutator" else commutator(a, b)
    if isinstance(node, Call):
        arg = evaluate(node.arg, ctx)
        if ctx.backend == "matrix":
            return exp_series(arg)
        return _exp_blade(arg)
    raise TypeError(f"not an expression node: {node!r}")


def eval_expr(src: str | Node, ctx: EvalContext) -> Value:
    return evaluate(parse(src) if isinstance(src, str) else src, ctx)


@dataclass(frozen=True)
class Verdict:
    passed: bool
    residual: float


def residual(a: Value, b: Value) -> float:
    if isinstance(a, np.ndarray) != isinstance(b, np.ndarray):
        raise DomainError("cannot compare an algebra element with a matrix")
    if isinstance(a, np.ndarray):
        if a.shape != b.shape:
            raise DomainError(f"matrix shapes differ: {a.shape} vs {b.shape}")
        return max_abs(a - b)
    return (a - b).max_abs()


def check(lhs: str | Node, rhs: str | Node, ctx: EvalContext, tol: float = 1e-9) -> Verdict:
    r = residual(eval_expr(lhs, ctx), eval_expr(rhs, ctx))
    return Verdict(r <= tol, r)


def parse_identity(text: str) -> tuple[Node, Node]:
    """Parse ``"lhs == rhs"``; error offsets refer to the whole text."""
    first = text.find("==")
    if first < 0:
        raise ParseError("an identity needs '=='", len(text) + 1)
    second = text.find("==", first + 2)
    if second >= 0:
        raise ParseError("an identity needs exactly one '=='", second + 1)
    lhs = parse(text[:first])
    try:
        rhs = parse(text[first + 2 :])
    except ParseError as exc:
        raise ParseError(str(exc).split(": ", 1)[1], exc.offset + first + 2) from None
    return lhs, rhs


def multivector_from_text(text: str, sig: Signature) -> Multivector:
    """Read the shared text form (e.g. ``1 + 2*e1^e2``) back into a multivector."""
    value = eval_expr(text, EvalContext(sig))
    return value.mv
