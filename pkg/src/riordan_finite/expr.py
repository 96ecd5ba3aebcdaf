"""Text syntax for series: integers, ``x``, ``w`` (the root of unity), ``+ - * / ^``,
parentheses, and the functions inv, sqrt, root, log, exp, comp, compinv.

    >>> from riordan_finite.scalar import field
    >>> str(parse_series("1/(1-x)", field(1), 4))
    '1 + x + x^2 + x^3 + x^4'
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import DomainError, ParseError, RiordanError
from .fps import (
    Series,
    comp_inverse,
    compose,
    exp_pos,
    inv,
    log_unit,
    nth_root_unit,
)
from .scalar import FieldContext, Scalar

MAX_DEPTH = 100
MAX_POWER_BITS = 1 << 22

FUNCTIONS = {
    "inv": 1, "sqrt": 1, "root": 2, "log": 1, "exp": 1, "comp": 2, "compinv": 1,
}


# -- AST ---------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    pos: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Sym:
    name: str
    pos: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object
    pos: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int
    pos: int = dc_field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    pos: int = dc_field(default=0, compare=False)


# -- tokenizer -----------------------------------------------------------------

@dataclass
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and text[j].isascii() and text[j].isdigit():
                j += 1
            toks.append(Token("num", text[i:j], i))
            i = j
        elif ch.isascii() and ch.isalpha():
            j = i
            while j < n and text[j].isascii() and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("name", text[i:j], i))
            i = j
        elif ch in "+-*/^(),":
            toks.append(Token("op", ch, i))
            i += 1
        elif ch == "−":  # typographic minus
            toks.append(Token("op", "-", i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", _byte_offset(text, i), text)
    toks.append(Token("end", "", n))
    return toks


# -- parser --------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.depth = 0

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, _byte_offset(self.text, tok.pos), self.text)

    def peek(self) -> Token:
        return self.toks[self.i]

    def next(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text):
        t = self.peek()
        if t.kind != "op" or t.text != text:
            found = t.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return self.next()

    def _int(self, tok):
        try:
            return int(tok.text)
        except ValueError:
            raise self.error("integer literal too long", tok) from None

    def enter(self):
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise self.error("expression nested too deeply")

    def leave(self):
        self.depth -= 1

    def parse(self):
        if self.peek().kind == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.peek().kind != "end":
            raise self.error(f"unexpected {self.peek().text!r}")
        return node

    def expr(self):
        self.enter()
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            t = self.next()
            node = Bin(t.text, node, self.term(), t.pos)
        self.leave()
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            t = self.next()
            node = Bin(t.text, node, self.unary(), t.pos)
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.next()
            self.enter()
            operand = self.unary()
            self.leave()
            return operand if t.text == "+" else Neg(operand, t.pos)
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text == "^":
            self.next()
            sign = 1
            if self.peek().kind == "op" and self.peek().text in "+-":
                sign = -1 if self.next().text == "-" else 1
            e = self.peek()
            if e.kind != "num":
                raise self.error("exponent must be an integer literal")
            self.next()
            base = Pow(base, sign * self._int(e), t.pos)
            nt = self.peek()
            if nt.kind == "op" and nt.text == "^":
                raise self.error("chained exponents need parentheses")
        return base

    def atom(self):
        t = self.peek()
        if t.kind == "num":
            self.next()
            return Num(self._int(t), t.pos)
        if t.kind == "name":
            self.next()
            if t.text in ("x", "w"):
                return Sym(t.text, t.pos)
            if t.text in FUNCTIONS:
                self.expect("(")
                args = [self.expr()]
                while self.peek().kind == "op" and self.peek().text == ",":
                    self.next()
                    args.append(self.expr())
                self.expect(")")
                if len(args) != FUNCTIONS[t.text]:
                    raise self.error(
                        f"{t.text} takes {FUNCTIONS[t.text]} argument(s), got {len(args)}", t)
                return Call(t.text, tuple(args), t.pos)
            raise self.error(f"unknown name {t.text!r}", t)
        if t.kind == "op" and t.text == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        found = t.text or "end of input"
        raise self.error(f"unexpected {found!r}")


def parse(text: str):
    """Parse to an AST; raises ParseError carrying a byte offset."""
    return _Parser(text).parse()


# -- printer -------------------------------------------------------------------

def _level(node) -> int:
    if isinstance(node, Bin):
        return 1 if node.op in "+-" else 2
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_text(node) -> str:
    """Canonical text; parse(to_text(t)) == t."""

    def wrap(n, min_level):
        s = to_text(n)
        return f"({s})" if _level(n) < min_level else s

    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Neg):
        return "-" + wrap(node.operand, 3)
    if isinstance(node, Bin):
        if node.op in "+-":
            return f"{wrap(node.left, 1)} {node.op} {wrap(node.right, 2)}"
        return f"{wrap(node.left, 2)}{node.op}{wrap(node.right, 3)}"
    if isinstance(node, Pow):
        return f"{wrap(node.base, 5)}^{node.exponent}"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_text(a) for a in node.args)})"
    raise TypeError(node)


# -- evaluation ----------------------------------------------------------------

class _Evaluator:
    def __init__(self, text, ctx: FieldContext, N: int):
        self.text = text
        self.ctx = ctx
        self.N = N

    def fail(self, node, msg):
        return DomainError(f"{msg} in {to_text(node)!r}", _byte_offset(self.text, node.pos), self.text)

    def ev(self, node) -> Series:
        try:
            return self._ev(node)
        except (DomainError, ParseError):
            raise
        except (RiordanError, ZeroDivisionError) as exc:
            raise self.fail(node, str(exc)) from exc

    def _ev(self, node) -> Series:
        ctx, N = self.ctx, self.N
        if isinstance(node, Num):
            return Series.constant(node.value, ctx, N)
        if isinstance(node, Sym):
            if node.name == "x":
                return Series.x(ctx, N)
            return Series.constant(ctx.gen, ctx, N)
        if isinstance(node, Neg):
            return -self.ev(node.operand)
        if isinstance(node, Bin):
            a = self.ev(node.left)
            b = self.ev(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if not any(b.c[0]):
                raise self.fail(node, "denominator has zero constant term")
            return a / b
        if isinstance(node, Pow):
            base = self.ev(node.base)
            e = node.exponent
            if e < 0 and not any(base.c[0]):
                raise self.fail(node, "negative power of a non-unit")
            v = base.valuation()
            if e > 0 and (v is None or v * e > N):
                return Series(ctx, [], N)
            bits = max(max(abs(q.numerator).bit_length(), q.denominator.bit_length())
                       for vec in base.c for q in vec)
            if bits > 1 and bits * abs(e) > MAX_POWER_BITS:
                raise self.fail(node, "power would produce oversized coefficients")
            return base ** e
        if isinstance(node, Call):
            return self.call(node)
        raise TypeError(node)

    def call(self, node: Call) -> Series:
        name = node.name
        if name == "root":
            b = node.args[1]
            if not isinstance(b, Num) or b.value < 1:
                raise self.fail(node, "root index must be a positive integer literal")
            return nth_root_unit(self.ev(node.args[0]), b.value)
        args = [self.ev(a) for a in node.args]
        if name == "inv":
            return inv(args[0])
        if name == "sqrt":
            return nth_root_unit(args[0], 2)
        if name == "log":
            return log_unit(args[0])
        if name == "exp":
            return exp_pos(args[0])
        if name == "comp":
            return compose(args[0], args[1])
        if name == "compinv":
            return comp_inverse(args[0])
        raise TypeError(name)


def evaluate(node, ctx: FieldContext, N: int, text: str = "") -> Series:
    return _Evaluator(text or to_text(node), ctx, N).ev(node)


def parse_series(text: str, ctx: FieldContext, N: int) -> Series:
    return evaluate(parse(text), ctx, N, text)


def _mentions_x(node) -> bool:
    if isinstance(node, Sym):
        return node.name == "x"
    if isinstance(node, Neg):
        return _mentions_x(node.operand)
    if isinstance(node, Bin):
        return _mentions_x(node.left) or _mentions_x(node.right)
    if isinstance(node, Pow):
        return _mentions_x(node.base)
    if isinstance(node, Call):
        return any(_mentions_x(a) for a in node.args)
    return False


def parse_scalar(text: str, ctx: FieldContext) -> Scalar:
    """A constant expression such as ``3/2*w - 1``."""
    node = parse(text)
    if _mentions_x(node):
        raise DomainError("scalar expression may not contain x", 0, text)
    return evaluate(node, ctx, 0, text)[0]
