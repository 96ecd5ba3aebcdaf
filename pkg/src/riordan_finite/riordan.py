"""Riordan pairs (g, F), their product, and the lower-triangular matrices they define."""
from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ContextMismatch, NotAUnit, NotInvertible, RowsExceedPrecision
from .fps import Series, comp_inverse, compose, inv, mul
from .scalar import Scalar


@dataclass(frozen=True)
class RiordanPair:
    """(g, F) with g0 != 0, F0 = 0, F1 != 0."""

    g: Series
    F: Series

    def __post_init__(self):
        if self.g.ctx is not self.F.ctx or self.g.N != self.F.N:
            raise ContextMismatch("g and F must share field and precision")
        if not any(self.g.c[0]):
            raise NotAUnit("g must have a nonzero constant term")
        if any(self.F.c[0]) or self.F.N < 1 or not any(self.F.c[1]):
            raise NotInvertible("F must have F0 = 0 and F1 != 0")

    @classmethod
    def identity(cls, ctx, N) -> "RiordanPair":
        return cls(Series.one(ctx, N), Series.x(ctx, N))

    @classmethod
    def diagonal(cls, g0, omega, ctx, N) -> "RiordanPair":
        """(g0, omega*x)."""
        return cls(Series.constant(g0, ctx, N), Series.monomial(omega, 1, ctx, N))

    @property
    def ctx(self):
        return self.g.ctx

    @property
    def N(self):
        return self.g.N

    @property
    def g0(self) -> Scalar:
        return self.g[0]

    @property
    def f1(self) -> Scalar:
        return self.F[1]

    def is_identity(self) -> bool:
        return self.g == 1 and self.F == Series.x(self.ctx, self.N)

    def __mul__(self, other: "RiordanPair") -> "RiordanPair":
        return rmul(self, other)

    def __pow__(self, n: int) -> "RiordanPair":
        return rpow(self, n)

    def __call__(self, h: Series) -> Series:
        return apply(self, h)

    def __str__(self):
        return f"({self.g}, {self.F})"

    def to_json(self) -> dict:
        return {"g": self.g.scalar_strings(), "F": self.F.scalar_strings()}


def rmul(p: RiordanPair, q: RiordanPair) -> RiordanPair:
    """(g, F)(h, K) = (g * h(F), K(F))."""
    return RiordanPair(mul(p.g, compose(q.g, p.F)), compose(q.F, p.F))


def rinv(p: RiordanPair) -> RiordanPair:
    Fbar = comp_inverse(p.F)
    return RiordanPair(inv(compose(p.g, Fbar)), Fbar)


def rpow(p: RiordanPair, n: int) -> RiordanPair:
    result = RiordanPair.identity(p.ctx, p.N)
    base = rinv(p) if n < 0 else p
    n = abs(n)
    while n:
        if n & 1:
            result = rmul(result, base)
        n >>= 1
        if n:
            base = rmul(base, base)
    return result


def apply(p: RiordanPair, h: Series) -> Series:
    """Matrix of p times the column vector of h, i.e. g * h(F)."""
    return mul(p.g, compose(h, p.F))


@dataclass(frozen=True)
class RiordanMatrix:
    """Snapshot of rows 0..rows-1; entries[n][j] = [x^n] g F^j, zero above the diagonal."""

    rows: int
    entries: tuple

    def __getitem__(self, ij) -> Scalar:
        n, j = ij
        return self.entries[n][j]

    def __matmul__(self, other: "RiordanMatrix") -> "RiordanMatrix":
        r = min(self.rows, other.rows)
        ctx = self.entries[0][0].ctx
        out = []
        for n in range(r):
            row = []
            for j in range(r):
                s = ctx.zero
                for k in range(j, n + 1):
                    s = s + self.entries[n][k] * other.entries[k][j]
                row.append(s)
            out.append(tuple(row))
        return RiordanMatrix(r, tuple(out))

    def matvec(self, coeffs) -> list[Scalar]:
        return [sum((self.entries[n][k] * coeffs[k] for k in range(n + 1)),
                    self.entries[0][0].ctx.zero) for n in range(self.rows)]

    def to_strings(self) -> list[list[str]]:
        """Row n holds the n + 1 entries on or below the diagonal."""
        return [[str(e) for e in self.entries[n][: n + 1]] for n in range(self.rows)]

    def to_json(self) -> str:
        return json.dumps({"rows": self.to_strings()})

    def to_text(self) -> str:
        cells = self.to_strings()
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)


def expand_matrix(p: RiordanPair, rows: int) -> RiordanMatrix:
    if rows > p.N + 1:
        raise RowsExceedPrecision(f"{rows} rows need precision >= {rows - 1}, have {p.N}")
    ctx = p.ctx
    cols = []
    col = p.g
    for j in range(rows):
        cols.append(col)
        if j + 1 < rows:
            col = mul(col, p.F)
    entries = tuple(
        tuple(Scalar(ctx, cols[j].c[n]) if j <= n else ctx.zero for j in range(rows))
        for n in range(rows)
    )
    return RiordanMatrix(rows, entries)


def matrix_from_json(text: str, ctx) -> list[list[Scalar]]:
    from .expr import parse_scalar

    return [[parse_scalar(s, ctx) for s in row] for row in json.loads(text)["rows"]]


__all__ = [
    "RiordanPair", "RiordanMatrix", "rmul", "rinv", "rpow", "apply",
    "expand_matrix", "matrix_from_json",
]
