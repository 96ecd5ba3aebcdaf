"""Truncated formal power series over Q(zeta_m).

A :class:`Series` holds coefficients of x^0..x^N; all identities in the package
are "equal to precision N", i.e. coefficient-wise on those indices.
"""
from __future__ import annotations

from gmpy2 import mpq

from .errors import (
    ContextMismatch,
    InnerNotPositiveOrder,
    NotAUnit,
    NotInvertible,
    NotPositiveOrder,
    NotUnitNormalized,
)
from .scalar import ZERO, FieldContext, Scalar, format_vec

DEFAULT_PRECISION = 32


# --------------------------------------------------------------------------
# raw kernels: sequences of coefficient vectors, length N + 1
# --------------------------------------------------------------------------

def _sparse(ctx, A):
    return [(k, [(i, x) for i, x in enumerate(v) if x]) for k, v in enumerate(A) if any(v)]


def _mul_raw(ctx: FieldContext, A, B, N):
    d = ctx.degree
    if d == 1:
        a = [v[0] for v in A]
        b = [v[0] for v in B]
        ib = [(j, y) for j, y in enumerate(b) if y]
        out = [ZERO] * (N + 1)
        for k, x in enumerate(a):
            if not x:
                continue
            for j, y in ib:
                n = k + j
                if n > N:
                    break
                out[n] += x * y
        return [(v,) for v in out]
    sa = _sparse(ctx, A)
    sb = _sparse(ctx, B)
    width = 2 * d - 1
    acc = [[ZERO] * width for _ in range(N + 1)]
    for k, ta in sa:
        for j, tb in sb:
            n = k + j
            if n > N:
                break
            row = acc[n]
            for i, x in ta:
                for l, y in tb:
                    row[i + l] += x * y
    return [ctx.fold(r) for r in acc]


def _scale_raw(ctx, A, s):
    if s == ctx.one_vec:
        return list(A)
    return [ctx.mul(v, s) for v in A]


def _inv_raw(ctx, A, N):
    if not any(A[0]):
        raise NotAUnit("series with zero constant term has no multiplicative inverse")
    c0 = ctx.inv(A[0])
    nz = [(k, A[k]) for k in range(1, N + 1) if any(A[k])]
    C = [c0]
    for n in range(1, N + 1):
        s = ctx.zero_vec
        for k, a in nz:
            if k > n:
                break
            s = ctx.add(s, ctx.mul(a, C[n - k]))
        C.append(ctx.neg(ctx.mul(c0, s)))
    return C


def _compose_raw(ctx, O, I, N):
    if any(I[0]):
        raise InnerNotPositiveOrder("inner series must have zero constant term")
    out = [ctx.zero_vec] * (N + 1)
    out[0] = O[0]
    last = max((k for k in range(N + 1) if any(O[k])), default=0)
    if last == 0:
        return out
    start = next((k for k in range(1, N + 1) if any(I[k])), None)
    if start is None:
        return out
    if all(not any(I[k]) for k in range(start + 1, N + 1)) and start == 1:
        # linear inner c*x: coefficient n is O_n c^n
        c = I[1]
        p = ctx.one_vec
        for n in range(1, N + 1):
            p = ctx.mul(p, c)
            if any(O[n]):
                out[n] = ctx.mul(O[n], p)
        return out
    out = list(out)
    P = list(I)
    for k in range(1, last + 1):
        if k * start > N:
            break
        if any(O[k]):
            ok = O[k]
            for n in range(k * start, N + 1):
                if any(P[n]):
                    out[n] = ctx.add(out[n], ctx.mul(ok, P[n]))
        if k < last:
            P = _mul_raw(ctx, P, I, N)
    return out


def _comp_inverse_raw(ctx, F, N):
    if N < 1 or any(F[0]) or not any(F[1]):
        raise NotInvertible("compositional inverse needs F0 = 0 and F1 != 0")
    f1inv = ctx.inv(F[1])
    zero = ctx.zero_vec
    G = [zero] * (N + 1)
    # pw[k][n] = [x^n] G^k
    pw = [None] + [[zero] * (N + 1) for _ in range(N)]
    pw[1] = G
    for n in range(1, N + 1):
        s = zero
        for k in range(2, n + 1):
            prev = pw[k - 1]
            acc = zero
            for i in range(1, n - k + 2):
                gi = G[i]
                if any(gi):
                    pv = prev[n - i]
                    if any(pv):
                        acc = ctx.add(acc, ctx.mul(gi, pv))
            pw[k][n] = acc
            if any(F[k]) and any(acc):
                s = ctx.add(s, ctx.mul(F[k], acc))
        target = ctx.one_vec if n == 1 else zero
        G[n] = ctx.mul(ctx.sub(target, s), f1inv)
    return G


def _power_unit_raw(ctx, A, alpha, N):
    """A^alpha for A_0 = 1 and rational alpha."""
    P = [ctx.one_vec]
    nz = [(k, A[k]) for k in range(1, N + 1) if any(A[k])]
    a1 = alpha + 1
    for n in range(1, N + 1):
        s = ctx.zero_vec
        for k, a in nz:
            if k > n:
                break
            w = (a1 * k - n) / n
            if w:
                s = ctx.add(s, ctx.scale(ctx.mul(a, P[n - k]), w))
        P.append(s)
    return P


def _log_raw(ctx, A, N):
    L = [ctx.zero_vec]
    for n in range(1, N + 1):
        s = ctx.zero_vec
        for k in range(1, n):
            if any(L[k]) and any(A[n - k]):
                s = ctx.add(s, ctx.scale(ctx.mul(L[k], A[n - k]), mpq(k)))
        L.append(ctx.sub(A[n], ctx.scale(s, mpq(1, n))))
    return L


def _exp_raw(ctx, K, N):
    E = [ctx.one_vec]
    nz = [(k, K[k]) for k in range(1, N + 1) if any(K[k])]
    for n in range(1, N + 1):
        s = ctx.zero_vec
        for k, c in nz:
            if k > n:
                break
            s = ctx.add(s, ctx.scale(ctx.mul(c, E[n - k]), mpq(k)))
        E.append(ctx.scale(s, mpq(1, n)))
    return E


# --------------------------------------------------------------------------
# Series value type
# --------------------------------------------------------------------------

class Series:
    """Immutable truncated power series sum_{n<=N} c_n x^n."""

    __slots__ = ("ctx", "N", "c")

    def __init__(self, ctx: FieldContext, coeffs=(), N: int = DEFAULT_PRECISION):
        if N < 0:
            raise ValueError("precision must be non-negative")
        vecs = [ctx.coerce_vec(v) for v in list(coeffs)[: N + 1]]
        vecs += [ctx.zero_vec] * (N + 1 - len(vecs))
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "c", tuple(vecs))

    @classmethod
    def _raw(cls, ctx, N, vecs) -> "Series":
        s = object.__new__(cls)
        object.__setattr__(s, "ctx", ctx)
        object.__setattr__(s, "N", N)
        object.__setattr__(s, "c", tuple(vecs))
        return s

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # constructors
    @classmethod
    def constant(cls, value, ctx, N=DEFAULT_PRECISION) -> "Series":
        return cls(ctx, [value], N)

    @classmethod
    def one(cls, ctx, N=DEFAULT_PRECISION) -> "Series":
        return cls(ctx, [1], N)

    @classmethod
    def x(cls, ctx, N=DEFAULT_PRECISION) -> "Series":
        return cls(ctx, [0, 1], N)

    @classmethod
    def monomial(cls, coef, k, ctx, N=DEFAULT_PRECISION) -> "Series":
        vecs = [ctx.zero_vec] * (N + 1)
        if k <= N:
            vecs[k] = ctx.coerce_vec(coef)
        return cls._raw(ctx, N, vecs)

    # access
    def __getitem__(self, i: int) -> Scalar:
        if i < 0:
            raise IndexError("negative coefficient index")
        if i > self.N:
            raise IndexError(f"index {i} beyond precision {self.N}")
        return Scalar(self.ctx, self.c[i])

    def __len__(self):
        return self.N + 1

    @property
    def coeffs(self) -> list[Scalar]:
        return [Scalar(self.ctx, v) for v in self.c]

    def valuation(self):
        """Index of the first nonzero coefficient, None for the zero series."""
        return next((k for k, v in enumerate(self.c) if any(v)), None)

    def is_zero(self) -> bool:
        return self.valuation() is None

    def is_constant(self) -> bool:
        return all(not any(v) for v in self.c[1:])

    def truncate(self, M: int) -> "Series":
        """Same series viewed at a lower precision M <= N."""
        if M > self.N:
            raise ValueError("cannot raise precision of a truncated series")
        return Series._raw(self.ctx, M, self.c[: M + 1])

    def _check(self, other: "Series"):
        if other.ctx is not self.ctx or other.N != self.N:
            raise ContextMismatch(
                f"series at ({self.ctx}, N={self.N}) vs ({other.ctx}, N={other.N})")

    def __eq__(self, other):
        if isinstance(other, Series):
            return other.ctx is self.ctx and other.N == self.N and other.c == self.c
        if isinstance(other, (int, Scalar)) or hasattr(other, "denominator"):
            try:
                return self == Series.constant(other, self.ctx, self.N)
            except (TypeError, ContextMismatch):
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.conductor, self.N, self.c))

    # ring operations
    def __add__(self, other):
        if not isinstance(other, Series):
            try:
                other = Series.constant(other, self.ctx, self.N)
            except TypeError:
                return NotImplemented
        self._check(other)
        ctx = self.ctx
        return Series._raw(ctx, self.N, [ctx.add(a, b) for a, b in zip(self.c, other.c)])

    __radd__ = __add__

    def __neg__(self):
        ctx = self.ctx
        return Series._raw(ctx, self.N, [ctx.neg(a) for a in self.c])

    def __sub__(self, other):
        if not isinstance(other, Series):
            try:
                other = Series.constant(other, self.ctx, self.N)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            return mul(self, other)
        try:
            s = self.ctx.coerce_vec(other)
        except TypeError:
            return NotImplemented
        return Series._raw(self.ctx, self.N, _scale_raw(self.ctx, self.c, s))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return mul(self, inv(other))
        try:
            s = self.ctx.coerce_vec(other)
        except TypeError:
            return NotImplemented
        return Series._raw(self.ctx, self.N, _scale_raw(self.ctx, self.c, self.ctx.inv(s)))

    def __rtruediv__(self, other):
        return Series.constant(other, self.ctx, self.N) * inv(self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = inv(self) if n < 0 else self
        n = abs(n)
        result = Series.one(self.ctx, self.N)
        while n:
            if n & 1:
                result = mul(result, base)
            n >>= 1
            if n:
                base = mul(base, base)
        return result

    def __call__(self, inner: "Series") -> "Series":
        return compose(self, inner)

    def __str__(self):
        return format_series(self)

    def __repr__(self):
        return f"Series({format_series(self)!r}, N={self.N}, m={self.ctx.conductor})"

    def scalar_strings(self) -> list[str]:
        return [format_vec(v) for v in self.c]


def format_series(s: Series) -> str:
    """Polynomial text of the truncation; re-parses to an equal series."""
    parts = []
    for k, v in enumerate(s.c):
        if not any(v):
            continue
        coef = format_vec(v)
        compound = " + " in coef or " - " in coef
        if k == 0:
            term = coef
        else:
            mono = "x" if k == 1 else f"x^{k}"
            if coef == "1":
                term = mono
            elif coef == "-1":
                term = f"-{mono}"
            elif compound:
                term = f"({coef})*{mono}"
            else:
                term = f"{coef}*{mono}"
        parts.append(term)
    if not parts:
        return "0"
    text = parts[0]
    for p in parts[1:]:
        text += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return text


# --------------------------------------------------------------------------
# group operations
# --------------------------------------------------------------------------

def mul(a: Series, b: Series) -> Series:
    """Cauchy product truncated at N."""
    a._check(b)
    return Series._raw(a.ctx, a.N, _mul_raw(a.ctx, a.c, b.c, a.N))


def inv(a: Series) -> Series:
    """Multiplicative inverse; requires a nonzero constant term."""
    return Series._raw(a.ctx, a.N, _inv_raw(a.ctx, a.c, a.N))


def compose(outer: Series, inner: Series) -> Series:
    """outer(inner(x)); ``inner`` must have zero constant term."""
    outer._check(inner)
    return Series._raw(outer.ctx, outer.N, _compose_raw(outer.ctx, outer.c, inner.c, outer.N))


def comp_inverse(F: Series) -> Series:
    """The series G with F(G(x)) = G(F(x)) = x, solved degree by degree."""
    return Series._raw(F.ctx, F.N, _comp_inverse_raw(F.ctx, F.c, F.N))


def compose_pow(F: Series, n: int) -> Series:
    """n-fold compositional power; n = 0 gives x, n < 0 uses the inverse."""
    if any(F.c[0]) or (F.N >= 1 and not any(F.c[1])):
        raise NotInvertible("F must satisfy F0 = 0 and F1 != 0")
    result = Series.x(F.ctx, F.N)
    if n == 0:
        return result
    base = comp_inverse(F) if n < 0 else F
    n = abs(n)
    while n:
        if n & 1:
            result = compose(result, base)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def power_unit(a: Series, alpha) -> Series:
    """a^alpha for unit-normalized a (a0 = 1) and rational alpha."""
    if a.c[0] != a.ctx.one_vec:
        raise NotUnitNormalized("fractional powers need constant term 1")
    return Series._raw(a.ctx, a.N, _power_unit_raw(a.ctx, a.c, mpq(alpha), a.N))


def nth_root_unit(a: Series, b: int) -> Series:
    """The unique b-th root of a with constant term 1."""
    if not isinstance(b, int) or b < 1:
        raise ValueError("root index must be a positive integer")
    return power_unit(a, mpq(1, b))


def log_unit(a: Series) -> Series:
    """ln(a) = G - G^2/2 + G^3/3 - ... where a = 1 + G."""
    if a.c[0] != a.ctx.one_vec:
        raise NotUnitNormalized("logarithm needs constant term 1")
    return Series._raw(a.ctx, a.N, _log_raw(a.ctx, a.c, a.N))


def exp_pos(K: Series) -> Series:
    """exp(K) for K with zero constant term."""
    if any(K.c[0]):
        raise NotPositiveOrder("exponential needs zero constant term")
    return Series._raw(K.ctx, K.N, _exp_raw(K.ctx, K.c, K.N))


__all__ = [
    "DEFAULT_PRECISION", "Series", "mul", "inv", "compose", "comp_inverse",
    "compose_pow", "power_unit", "nth_root_unit", "log_unit", "exp_pos",
    "format_series",
]
