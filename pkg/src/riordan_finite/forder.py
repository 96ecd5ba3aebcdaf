"""Finite-order Riordan elements: orders, completion, factorization and normal form."""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import NamedTuple

from .errors import BadResidue, NotARootOfUnity, NotComposable, NotFiniteOrder
from .fps import Series, compose, compose_pow, mul, nth_root_unit
from .riordan import RiordanPair, rpow
from .scalar import Scalar, divisors, scalar_order


@dataclass(frozen=True)
class OrderReport:
    """Order of a series or pair, certified on coefficients 0..verified_to.

    For pairs, ``g0_order`` and ``F_order`` are the two factors whose lcm is
    the order.
    """

    order: int | None
    verified_to: int
    g0_order: int | None = None
    F_order: int | None = None

    @property
    def finite(self) -> bool:
        return self.order is not None

    def to_json(self) -> dict:
        witness = None
        if self.finite and self.g0_order is not None:
            witness = {"g0_order": self.g0_order, "F_order": self.F_order}
        return {
            "order": self.order if self.finite else "infinite",
            "verified_to": self.verified_to,
            "lcm_witness": witness,
        }

    def __str__(self):
        if not self.finite:
            return f"order infinite (verified to precision {self.verified_to})"
        s = f"order {self.order} (verified to precision {self.verified_to})"
        if self.g0_order is not None:
            s += f" = lcm({self.g0_order}, {self.F_order})"
        return s


def _check_composable(F: Series):
    if any(F.c[0]) or F.N < 1 or not any(F.c[1]):
        raise NotComposable("F must have F0 = 0 and F1 != 0")


def _f_order(F: Series) -> int | None:
    _check_composable(F)
    b = scalar_order(F[1])
    if b is None:
        return None
    # the only possible compositional order is the order of the linear coefficient
    if compose_pow(F, b) == Series.x(F.ctx, F.N):
        return b
    return None


def series_order(F: Series) -> OrderReport:
    return OrderReport(_f_order(F), F.N)


def orbit_product(g: Series, F: Series, b: int) -> Series:
    """g(x) g(F(x)) ... g(F^(b-1)(x))."""
    out = g
    Fi = F
    for _ in range(1, b):
        out = mul(out, compose(g, Fi))
        Fi = compose(F, Fi)
    return out


def pair_order(p: RiordanPair, cross_check: bool = True) -> OrderReport:
    """Order of (g, F): lcm(ord g0, ord F) when finite.

    Finite exactly when both factors are finite and the orbit product of g
    over one period of F is the constant g0^b.
    """
    _check_composable(p.F)
    N = p.N
    a = scalar_order(p.g0)
    b = _f_order(p.F)
    if a is None or b is None:
        return OrderReport(None, N, a, b)
    prod = orbit_product(p.g, p.F, b)
    if prod != Series.constant(p.g0 ** b, p.ctx, N):
        return OrderReport(None, N, a, b)
    n = lcm(a, b)
    if cross_check and not rpow(p, n).is_identity():
        raise ArithmeticError(f"pair passed the order-{n} test but its {n}-th power is not (1, x)")
    return OrderReport(n, N, a, b)


def _require_finite(p: RiordanPair) -> OrderReport:
    rep = pair_order(p, cross_check=False)
    if not rep.finite:
        raise NotFiniteOrder(f"pair has infinite order to precision {p.N}")
    return rep


def complete_to_order(omega: Scalar, prescribed: dict, N: int) -> Series:
    """Return F = omega*x + sum a_k x^k of compositional order ord(omega).

    ``prescribed`` fixes a_k for indices k >= 2 with k != 1 mod n (missing ones
    are zero); the remaining coefficients a_{nj+1} are solved for one degree at
    a time.  At such a degree d, [x^d] F^(n) is affine in a_d with slope
    sum_i omega^(n-1-i) omega^(i d), which is n omega^(n-1) and never zero.
    """
    ctx = omega.ctx
    n = scalar_order(omega) if omega else None
    if n is None:
        raise NotARootOfUnity(f"{omega} is not a root of unity")
    if n < 2:
        raise BadResidue("omega = 1 leaves no free coefficients (only F = x has order 1)")
    coeffs = [ctx.zero] * (N + 1)
    coeffs[1] = omega
    for k, v in prescribed.items():
        if k < 2 or k > N:
            raise BadResidue(f"index {k} outside 2..{N}")
        if k % n == 1:
            raise BadResidue(f"index {k} is 1 mod {n}; that coefficient is determined, not free")
        coeffs[k] = v if isinstance(v, Scalar) else ctx(v)
    for d in range(n + 1, N + 1, n):
        coeffs[d] = ctx.zero
        Fd = Series(ctx, coeffs[: d + 1], d)
        r = compose_pow(Fd, n)[d]
        slope = sum((omega ** (n - 1 - i) * omega ** (i * d) for i in range(n)), ctx.zero)
        assert slope, "degenerate multiplier for a free coefficient"
        coeffs[d] = -r / slope
    F = Series(ctx, coeffs, N)
    if compose_pow(F, n) != Series.x(ctx, N):
        raise ArithmeticError("completed series does not have the requested order")
    return F


def build_h(p: RiordanPair) -> Series:
    """h with h0 = 1 and g = g0 h / h(F).

    With k the unit b-th root of g/g0, h = k^(b-1) k(F)^(b-2) ... k(F^(b-2)).
    """
    rep = _require_finite(p)
    b = rep.F_order
    ctx, N = p.ctx, p.N
    if b == 1:
        return Series.one(ctx, N)
    k = nth_root_unit(p.g / p.g0, b)
    h = Series.one(ctx, N)
    Fi = Series.x(ctx, N)
    for i in range(b - 1):
        h = mul(h, compose(k, Fi) ** (b - 1 - i))
        Fi = compose(p.F, Fi)
    return h


def sigma_F(F: Series) -> Series:
    """(1/b) sum_{j=1..b} omega^j F^(b-j): conjugates F to omega*x."""
    b = _f_order(F)
    if b is None:
        raise NotFiniteOrder("F has infinite compositional order")
    ctx, N = F.ctx, F.N
    omega = F[1]
    total = Series(ctx, [], N)
    iterates = [Series.x(ctx, N)]
    for _ in range(1, b):
        iterates.append(compose(F, iterates[-1]))
    for j in range(1, b + 1):
        total = total + iterates[b - j] * omega ** j
    return total / ctx(b)


class Normalization(NamedTuple):
    conjugator: RiordanPair
    normal: RiordanPair


def normalize(p: RiordanPair) -> Normalization:
    """Conjugator C = (h, sigma_F) with C^-1 p C = (g0, omega x)."""
    _require_finite(p)
    C = RiordanPair(build_h(p), sigma_F(p.F))
    normal = RiordanPair.diagonal(p.g0, p.f1, p.ctx, p.N)
    return Normalization(C, normal)


def is_conjugate(p: RiordanPair, q: RiordanPair) -> bool:
    """Finite-order pairs are conjugate iff their g0 and f1 agree."""
    _require_finite(p)
    _require_finite(q)
    return p.g0 == q.g0 and p.f1 == q.f1


def proper_divisors(n: int) -> list[int]:
    return [d for d in divisors(n) if d < n]
