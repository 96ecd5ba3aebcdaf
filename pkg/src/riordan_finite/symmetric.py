"""Logarithmic constructions for finite-order pairs.

* an antisymmetric two-variable series Phi(x, z) = 1/2 ln(g^(x) / g^(z)) with
  g = g0 exp(Phi(x, F(x))) for involutions,
* its k-variable cyclic generalization, which reconstructs g from the orbit
  x, F, ..., F^(k-1) of an order-k pair with g0 = 1,
* the closed formula for the unique involution partner F of a bi-invertible g.

Multivariate series are never built.  Each construction is evaluated at
univariate substitution arguments with zero constant term, which is enough
to check the defining identities coefficient-wise.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import (
    ArityMismatch,
    BadLeadingScalar,
    NotBiInvertible,
    SubstitutionNotPositiveOrder,
)
from .fps import Series, comp_inverse, compose, log_unit


def _unit_part(g: Series) -> Series:
    return g / g[0]


def _check_args(args):
    for a in args:
        if any(a.c[0]):
            raise SubstitutionNotPositiveOrder("substitution arguments need zero constant term")


def phi2_eval(g: Series, A: Series, B: Series) -> Series:
    """1/2 (ln g^(A) - ln g^(B)) with g^ = g / g0."""
    _check_args((A, B))
    gh = _unit_part(g)
    return (log_unit(compose(gh, A)) - log_unit(compose(gh, B))) * mpq(1, 2)


@dataclass(frozen=True)
class CyclicSeriesEvaluator:
    """phi(x1..xk) = (1/k) ln(g(x1)^(k-1) / (g(x2) ... g(xk))) for g0 = 1."""

    g: Series
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ArityMismatch("arity must be positive")
        if self.g[0] != 1:
            raise BadLeadingScalar("cyclic form is defined here only for g0 = 1")

    def __call__(self, args) -> Series:
        return phik_eval(self, args)


def phik_eval(e: CyclicSeriesEvaluator, args) -> Series:
    args = list(args)
    if len(args) != e.k:
        raise ArityMismatch(f"expected {e.k} arguments, got {len(args)}")
    _check_args(args)
    logs = [log_unit(compose(e.g, a)) for a in args]
    total = logs[0] * (e.k - 1)
    for L in logs[1:]:
        total = total - L
    return total * mpq(1, e.k)


def cyclic_sum(e: CyclicSeriesEvaluator, args) -> Series:
    """Sum of phi over all k cyclic rotations of ``args``; zero by construction."""
    args = list(args)
    total = Series(e.g.ctx, [], e.g.N)
    for r in range(len(args)):
        total = total + phik_eval(e, args[r:] + args[:r])
    return total


def marshall_F(g: Series) -> Series:
    """The unique F making (g, F) an involution: Gbar(-g0 G / g), G = g - g0."""
    if not any(g.c[0]) or g.N < 1 or not any(g.c[1]):
        raise NotBiInvertible("g needs g0 != 0 and g1 != 0")
    g0 = g[0]
    if g0 != 1 and g0 != -1:
        raise BadLeadingScalar("an involution forces g0 = 1 or g0 = -1")
    G = g - g0
    return compose(comp_inverse(G), -(G * g0) / g)
