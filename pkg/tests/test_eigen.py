import random
from fractions import Fraction
from math import comb

import pytest

from riordan_finite import (
    EigenSpec,
    RiordanPair,
    Series,
    apply,
    eigen_check,
    eigenvalue_of,
    eigenvector,
    expand_matrix,
    inv,
    mul,
    nth_root_unit,
    row_identity,
)
from riordan_finite.errors import NotFiniteOrder, RowsExceedPrecision, SpecPeriodMismatch, ThetaLeadingZero
from riordan_finite.scalar import field

import oracles
from factories import synth_pair

Q = field(1)
N = 30


def S(*coeffs, ctx=Q, n=N):
    return Series(ctx, coeffs, n)


def p_star(n=N):
    g = inv(S(1, -1, n=n))
    return RiordanPair(g, -mul(S(0, 1, n=n), g))


def central(k):
    return Fraction(comb(2 * k, k), 4 ** k)


def test_diagonal_k0():
    ctx = field(6)
    g0 = ctx.root_of_unity(5)
    p = RiordanPair.diagonal(g0, ctx.gen, ctx, N)
    v, lam = eigenvector(p, EigenSpec(0, 6))
    assert v == S(1, ctx=ctx) and lam == g0


def test_p_star_eigenvectors():
    p = p_star()
    v, lam = eigenvector(p, EigenSpec(0, 2))
    assert lam == 1
    assert [v[k] for k in range(N + 1)] == [central(k) for k in range(N + 1)]
    v1, lam1 = eigenvector(p, EigenSpec(1, 2))
    assert lam1 == -1
    assert v1 == mul(v, (S(0, 1) - p.F) / Q(2))
    assert apply(p, v1) == -v1
    assert v1[1] == 1  # leading term h0 theta_k x^k


def test_eigen_check_examples():
    ctx = field(5)
    e = RiordanPair.identity(ctx, N)
    assert eigen_check(e, S(1, ctx.gen, 0, 7, ctx=ctx), 1)
    v = nth_root_unit(inv(S(1, -1)), 2)
    assert eigen_check(p_star(), v, Q(1))
    assert not eigen_check(p_star(), v, Q(-1))


def test_spec_validation():
    with pytest.raises(ThetaLeadingZero):
        EigenSpec(0, 2, (0, 1))
    with pytest.raises(SpecPeriodMismatch):
        eigenvector(p_star(), EigenSpec(0, 3))
    with pytest.raises(NotFiniteOrder):
        eigenvector(RiordanPair(S(1), S(0, 1, 1)), EigenSpec(0, 1))
    with pytest.raises(SpecPeriodMismatch):
        eigenvector(RiordanPair.identity(Q, N), EigenSpec(0, 1))


@pytest.mark.parametrize("order", [2, 3, 4, 6])
def test_generated_eigenvectors(order):
    rng = random.Random(order)
    p, _ = synth_pair(rng, order, 20)
    ctx = p.ctx
    for k in range(order):
        for theta in ((1,), (ctx.gen, -2, 1)):
            spec = EigenSpec(k, order, theta)
            v, lam = eigenvector(p, spec)
            assert lam == p.g0 * p.f1 ** k
            assert eigen_check(p, v, lam)
            assert eigenvalue_of(p, v) == lam
            assert v.valuation() == k and v[k] == theta[0]


def test_bad_support_is_never_an_eigenvector():
    ctx = field(6)
    w = ctx.gen
    g0 = ctx.root_of_unity(2)
    p = RiordanPair.diagonal(g0, w, ctx, 12)
    for k in range(4):
        for m in range(k + 1, 12):
            v = Series.monomial(1, k, ctx, 12) + Series.monomial(ctx(2), m, ctx, 12)
            if (m - k) % 6 == 0:
                assert eigenvalue_of(p, v) == g0 * w ** k
                continue
            assert eigenvalue_of(p, v) is None
            for j in range(6):
                assert not eigen_check(p, v, g0 * w ** j)


def test_bad_support_against_generated_pair():
    rng = random.Random(7)
    p, _ = synth_pair(rng, 3, 12)
    v0, _ = eigenvector(p, EigenSpec(0, 3))
    v1, _ = eigenvector(p, EigenSpec(1, 3))
    # mixing two residue classes gives no eigenvector at all
    assert eigenvalue_of(p, v0 + v1) is None
    assert eigenvalue_of(p, Series(p.ctx, [], 12)) is None


def test_p_star_row_identity_and_partial_sums():
    p = p_star()
    v, lam = eigenvector(p, EigenSpec(0, 2))
    M = expand_matrix(p, N + 1)
    for n in range(N + 1):
        terms = [M[n, k] * v[k] for k in range(n + 1)]
        assert sum(terms, Q.zero) == central(n)
        partial = sum(terms[:-1], Q.zero)
        assert partial == (0 if n % 2 == 0 else 2 * central(n))
    for n in (0, 7):
        full, part = oracles.central_binomial_identity(n)
        assert row_identity(p, EigenSpec(0, 2), n).lhs == Fraction(int(full.p), int(full.q))


def test_row_identity_record():
    rec = row_identity(p_star(), EigenSpec(0, 2), 7)
    assert rec.equal and str(rec.lhs) == str(rec.rhs) == "429/2048"
    js = rec.to_json()
    assert set(js) == {"n", "lhs", "rhs", "equal", "pair", "spec"}
    assert js["lhs"] == "429/2048" and js["equal"] is True
    assert "row 7" in rec.to_text()
    with pytest.raises(RowsExceedPrecision):
        row_identity(p_star(10), EigenSpec(0, 2), 11)


def test_diagonal_row_identity():
    ctx = field(6)
    g0, w = ctx.gen, ctx.gen
    p = RiordanPair.diagonal(g0, w, ctx, 12)
    for k in range(6):
        rec = row_identity(p, EigenSpec(k, 6), k)
        assert rec.lhs == rec.rhs == g0 * w ** k


@pytest.mark.parametrize("order", [3, 6])
def test_row_identities_up_to_30(order):
    rng = random.Random(100 + order)
    p, _ = synth_pair(rng, order, N)
    M = expand_matrix(p, N + 1)
    for k in (0, 1):
        v, lam = eigenvector(p, EigenSpec(k, order, (1, 1)))
        for n in range(N + 1):
            assert sum((M[n, j] * v[j] for j in range(n + 1)), p.ctx.zero) == lam * v[n]


@pytest.mark.parametrize("g0", [1, -1])
def test_involution_parity(g0):
    from riordan_finite import marshall_F

    g = S(g0, 1, 2, n=16)
    p = RiordanPair(g, marshall_F(g))
    even, lam_e = eigenvector(p, EigenSpec(0, 2, (1, 3, -1)))
    odd, lam_o = eigenvector(p, EigenSpec(1, 2, (2, 1)))
    assert lam_e == g0 and lam_o == -g0
    assert eigen_check(p, even, lam_e) and eigen_check(p, odd, lam_o)
