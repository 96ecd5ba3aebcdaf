"""Exact arithmetic in the cyclotomic field Q(zeta_m).

An element is stored as its coefficient vector in the power basis
1, w, ..., w^(d-1) where w = zeta_m and d = phi(m); products are reduced
modulo the m-th cyclotomic polynomial.  Rationals are ``gmpy2.mpq``.

Hot loops elsewhere in the package work directly on these raw coefficient
tuples through the :class:`FieldContext` methods; :class:`Scalar` is the
user-facing wrapper.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

from gmpy2 import mpq

from .errors import ContextMismatch, DivisionByZero, ZeroScalar

ZERO = mpq(0)
ONE = mpq(1)


def _poly_mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_exact_div_int(num, den):
    """Exact quotient of integer polynomials, ``den`` monic (low-to-high)."""
    num = list(num)
    dd = len(den) - 1
    q = [0] * (len(num) - dd)
    for k in range(len(q) - 1, -1, -1):
        c = num[k + dd]
        q[k] = c
        if c:
            for i, dc in enumerate(den):
                num[k + i] -= c * dc
    assert not any(num), "inexact cyclotomic division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients (low degree first) of the m-th cyclotomic polynomial."""
    if m < 1:
        raise ValueError("conductor must be a positive integer")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _poly_exact_div_int(num, cyclotomic_polynomial(d))
    return tuple(num)


def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _strip(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    """Quotient and remainder over Q, polynomials as mpq lists low-to-high."""
    a = list(a)
    q = [ZERO] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    return _strip(q), _strip(a[: len(b) - 1])


class FieldContext:
    """The field Q(zeta_m).  Obtain instances through :func:`field`."""

    def __init__(self, m: int):
        self.conductor = m
        self.modulus = cyclotomic_polynomial(m)
        self.degree = d = len(self.modulus) - 1
        # red[k] = reduced coordinates of w^k for d <= k <= 2d - 2
        table = {}
        cur = [mpq(-c) for c in self.modulus[:d]]
        for k in range(d, 2 * d - 1):
            table[k] = tuple(cur)
            top = cur[-1]
            cur = [ZERO] + cur[:-1]
            if top:
                for i in range(d):
                    cur[i] -= top * self.modulus[i]
        self._red = [(k, table[k]) for k in range(d, 2 * d - 1)]
        self.zero_vec = (ZERO,) * d
        self.one_vec = (ONE,) + (ZERO,) * (d - 1)

    def __repr__(self):
        return f"field({self.conductor})"

    def __reduce__(self):
        return field, (self.conductor,)

    # raw vector operations -------------------------------------------------
    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, a, q):
        return tuple(x * q for x in a)

    def mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [ZERO] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        conv[i + j] += x * y
        for k, r in self._red:
            c = conv[k]
            if c:
                for i, rc in enumerate(r):
                    if rc:
                        conv[i] += c * rc
        return tuple(conv[:d])

    def fold(self, conv):
        """Reduce an unreduced product-length vector (length 2d - 1)."""
        d = self.degree
        for k, r in self._red:
            c = conv[k]
            if c:
                for i, rc in enumerate(r):
                    if rc:
                        conv[i] += c * rc
        return tuple(conv[:d])

    def inv(self, a):
        if not any(a):
            raise DivisionByZero("inverse of zero scalar")
        if self.degree == 1:
            return (ONE / a[0],)
        # extended Euclid: s*a + t*Phi = gcd (a nonzero constant)
        r0 = [mpq(c) for c in self.modulus]
        r1 = _strip(list(a))
        s0, s1 = [], [ONE]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            prod = _poly_mul_q(q, s1)
            s2 = _poly_sub(s0, prod)
            r0, r1 = r1, r
            s0, s1 = s1, s2
            if not r1:
                raise AssertionError("cyclotomic modulus is not irreducible")
        c = r1[0]
        out = [x / c for x in s1] + [ZERO] * self.degree
        # s1 may have degree >= d only transiently; reduce to be safe
        return self._reduce_long(out)

    def _reduce_long(self, p):
        p = list(p)
        d = self.degree
        lead_poly = self.modulus
        for k in range(len(p) - 1, d - 1, -1):
            c = p[k]
            if c:
                for i, mc in enumerate(lead_poly):
                    p[k - d + i] -= c * mc
        return tuple(p[:d])

    def power(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        result = self.one_vec
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def coerce_vec(self, value):
        """Raw vector for an int / rational / Scalar of this field."""
        if isinstance(value, Scalar):
            if value.ctx is not self:
                raise ContextMismatch(f"scalar from {value.ctx} used in {self}")
            return value.c
        if isinstance(value, (int, Rational)) or type(value) is type(ONE):
            return (mpq(value),) + (ZERO,) * (self.degree - 1)
        raise TypeError(f"cannot convert {value!r} to an element of {self}")

    # user-facing constructors ------------------------------------------------
    def __call__(self, value) -> "Scalar":
        if isinstance(value, (list, tuple)):
            vals = [mpq(v) for v in value] + [ZERO] * self.degree
            return Scalar(self, self._reduce_long(vals))
        return Scalar(self, self.coerce_vec(value))

    @property
    def zero(self) -> "Scalar":
        return Scalar(self, self.zero_vec)

    @property
    def one(self) -> "Scalar":
        return Scalar(self, self.one_vec)

    @property
    def gen(self) -> "Scalar":
        """zeta_m, a primitive m-th root of unity."""
        return self.root_of_unity(1)

    def root_of_unity(self, k: int) -> "Scalar":
        w = self._reduce_long([ZERO, ONE] + [ZERO] * self.degree)
        return Scalar(self, self.power(w, k))

    @property
    def unit_group_order(self) -> int:
        """Number of roots of unity in Q(zeta_m)."""
        m = self.conductor
        return m * 2 // gcd(m, 2)


@lru_cache(maxsize=None)
def field(m: int = 1) -> FieldContext:
    """The shared context for Q(zeta_m); m = 1 (and m = 2) give Q."""
    return FieldContext(m)


def _poly_mul_q(a, b):
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _strip(out)


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [ZERO] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _strip(out)


def format_rational(q) -> str:
    q = mpq(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_vec(c) -> str:
    """Canonical text: descending powers of w, lowest-terms rationals."""
    parts = []
    for k in range(len(c) - 1, -1, -1):
        q = c[k]
        if not q:
            continue
        neg = q < 0
        a = -q if neg else q
        if k == 0:
            body = format_rational(a)
        else:
            mono = "w" if k == 1 else f"w^{k}"
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts) if parts else "0"


class Scalar:
    """Immutable element of Q(zeta_m)."""

    __slots__ = ("ctx", "c")

    def __init__(self, ctx: FieldContext, c):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "c", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def coeffs(self):
        return self.c

    def _other(self, other):
        if isinstance(other, Scalar):
            if other.ctx is not self.ctx:
                raise ContextMismatch(f"{self.ctx} vs {other.ctx}")
            return other.c
        try:
            return self.ctx.coerce_vec(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.add(self.c, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.sub(self.c, o))

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.sub(o, self.c))

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.mul(self.c, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.mul(self.c, self.ctx.inv(o)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return Scalar(self.ctx, self.ctx.mul(o, self.ctx.inv(self.c)))

    def __neg__(self):
        return Scalar(self.ctx, self.ctx.neg(self.c))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return Scalar(self.ctx, self.ctx.power(self.c, n))

    def inverse(self) -> "Scalar":
        return Scalar(self.ctx, self.ctx.inv(self.c))

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return other.ctx is self.ctx and other.c == self.c
        try:
            return self.c == self.ctx.coerce_vec(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if all(not x for x in self.c[1:]):
            return hash(Fraction(int(self.c[0].numerator), int(self.c[0].denominator)))
        return hash((self.ctx.conductor, self.c))

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        q = self.c[0]
        return Fraction(int(q.numerator), int(q.denominator))

    def __str__(self):
        return format_vec(self.c)

    def __repr__(self):
        return f"Scalar({str(self)!r}, m={self.ctx.conductor})"


def scalar_order(a: Scalar):
    """Multiplicative order of ``a``, or ``None`` if it is infinite.

    Only divisors of the number of roots of unity in the field can occur.
    """
    if not a:
        raise ZeroScalar("order of zero is undefined")
    ctx = a.ctx
    for d in divisors(ctx.unit_group_order):
        if ctx.power(a.c, d) == ctx.one_vec:
            return d
    return None
