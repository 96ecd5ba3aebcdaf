"""Eigenvectors of finite-order Riordan arrays and the row identities they give."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import RowsExceedPrecision, SpecPeriodMismatch, ThetaLeadingZero
from .forder import _f_order, _require_finite, build_h, sigma_F
from .fps import Series, compose, mul
from .riordan import RiordanPair, apply, expand_matrix
from .scalar import Scalar


@dataclass(frozen=True)
class EigenSpec:
    """Free data of an eigenvector: theta = sum_j theta[j] x^(k + j b), theta[0] != 0."""

    k: int
    b: int
    theta: tuple = field(default=(1,))

    def __post_init__(self):
        if self.k < 0 or self.b < 1:
            raise ValueError("need k >= 0 and b >= 1")
        if not self.theta or self.theta[0] == 0:
            raise ThetaLeadingZero("the leading free coefficient theta_k must be nonzero")
        object.__setattr__(self, "theta", tuple(self.theta))

    def theta_series(self, ctx, N) -> Series:
        coeffs = [0] * (N + 1)
        for j, t in enumerate(self.theta):
            idx = self.k + j * self.b
            if idx <= N:
                coeffs[idx] = t
        return Series(ctx, coeffs, N)

    def to_json(self) -> dict:
        return {"k": self.k, "b": self.b, "theta": [str(t) for t in self.theta]}


def eigenvector(p: RiordanPair, spec: EigenSpec) -> tuple[Series, Scalar]:
    """v = h * theta(sigma_F) and its eigenvalue g0 omega^k."""
    _require_finite(p)
    b = _f_order(p.F)
    if b != spec.b:
        raise SpecPeriodMismatch(f"spec period {spec.b} but F has order {b}")
    if b < 2:
        raise SpecPeriodMismatch("eigenvector formula needs F of order at least 2")
    h = build_h(p)
    theta = spec.theta_series(p.ctx, p.N)
    v = mul(h, compose(theta, sigma_F(p.F)))
    lam = p.g0 * p.f1 ** spec.k
    return v, lam


def eigen_check(p: RiordanPair, v: Series, lam) -> bool:
    """True iff g * v(F) = lam * v to precision N (never divides by v)."""
    return apply(p, v) == v * lam


def eigenvalue_of(p: RiordanPair, v: Series):
    """The eigenvalue of v if v is an eigenvector of p, else None.

    Any eigenvalue must equal the ratio at the lowest nonzero index of v, so
    this single candidate settles the question for every lambda.
    """
    m = v.valuation()
    if m is None:
        return None
    image = apply(p, v)
    lam = image[m] / v[m]
    return lam if image == v * lam else None


@dataclass(frozen=True)
class IdentityRecord:
    """sum_{k<=n} d[n,k] v_k = lambda v_n for one row n."""

    n: int
    lhs: Scalar
    rhs: Scalar
    pair: RiordanPair
    spec: EigenSpec
    terms: tuple = ()

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
            "pair": self.pair.to_json(),
            "spec": self.spec.to_json(),
        }

    def to_text(self) -> str:
        body = " + ".join(f"({d})*({v})" for d, v in self.terms) or "0"
        rel = "=" if self.equal else "!="
        return (f"row {self.n}: sum_k d[{self.n},k]*v[k] = {body}\n"
                f"  = {self.lhs} {rel} lambda*v[{self.n}] = {self.rhs}")


def row_identity(p: RiordanPair, spec: EigenSpec, n: int, v: Series | None = None,
                 lam: Scalar | None = None) -> IdentityRecord:
    if n > p.N:
        raise RowsExceedPrecision(f"row {n} needs precision >= {n}, have {p.N}")
    if v is None or lam is None:
        v, lam = eigenvector(p, spec)
    M = expand_matrix(p, n + 1)
    terms = tuple((M[n, k], v[k]) for k in range(n + 1))
    lhs = sum((d * vk for d, vk in terms), p.ctx.zero)
    return IdentityRecord(n, lhs, lam * v[n], p, spec, terms)
