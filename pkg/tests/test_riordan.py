import random
from fractions import Fraction
from math import comb

import pytest

from riordan_finite import (
    RiordanPair,
    Series,
    apply,
    expand_matrix,
    inv,
    mul,
    nth_root_unit,
    rinv,
    rmul,
    rpow,
)
from riordan_finite.errors import NotInvertible, RowsExceedPrecision
from riordan_finite.riordan import matrix_from_json
from riordan_finite.scalar import field

from factories import rand_positive, rand_unit

Q = field(1)
N = 12


def S(*coeffs, ctx=Q, n=N):
    return Series(ctx, coeffs, n)


def pascal(n=N):
    g = inv(S(1, -1, n=n))
    return RiordanPair(g, mul(S(0, 1, n=n), g))


def p_star(n=N):
    g = inv(S(1, -1, n=n))
    return RiordanPair(g, -mul(S(0, 1, n=n), g))


def test_pair_validation():
    with pytest.raises(ValueError):
        RiordanPair(S(0, 1), S(0, 1))
    with pytest.raises(NotInvertible):
        RiordanPair(S(1), S(1, 1))
    with pytest.raises(NotInvertible):
        RiordanPair(S(1), S(0, 0, 1))


def test_diagonal_product():
    ctx = field(5)
    a, b, c, d = ctx(2), ctx.gen, 1 + ctx.gen, ctx.gen ** 3
    p = RiordanPair.diagonal(a, b, ctx, N)
    q = RiordanPair.diagonal(c, d, ctx, N)
    assert rmul(p, q) == RiordanPair.diagonal(a * c, d * b, ctx, N)


def test_identity_element():
    p = pascal()
    e = RiordanPair.identity(Q, N)
    assert rmul(p, e) == p and rmul(e, p) == p


def test_pascal_squared():
    p = pascal()
    sq = rmul(p, p)
    g2 = inv(S(1, -2))
    assert sq == RiordanPair(g2, mul(S(0, 1), g2))
    M = expand_matrix(p, 8)
    M2 = expand_matrix(sq, 8)
    assert M @ M == M2
    for n in range(8):
        for j in range(n + 1):
            assert M2[n, j] == comb(n, j) * 2 ** (n - j)


def test_rinv_examples():
    e = RiordanPair.identity(Q, N)
    assert rinv(e) == e
    p = pascal()
    pi = rinv(p)
    h = inv(S(1, 1))
    assert pi == RiordanPair(h, mul(S(0, 1), h))
    assert rmul(p, pi).is_identity() and rmul(pi, p).is_identity()
    ctx = field(6)
    g0, w = ctx(3), ctx.gen
    d = RiordanPair.diagonal(g0, w, ctx, N)
    assert rinv(d) == RiordanPair.diagonal(1 / g0, 1 / w, ctx, N)


def test_rpow_examples():
    assert rpow(pascal(), 0).is_identity()
    assert rpow(p_star(), 2).is_identity()
    ctx = field(6)
    z3 = ctx.root_of_unity(2)
    q = RiordanPair(Series.constant(z3, ctx, N), S(0, -1, ctx=ctx))
    assert rpow(q, 6).is_identity()
    assert not any(rpow(q, n).is_identity() for n in range(1, 6))
    assert rpow(pascal(), -2) == rinv(rmul(pascal(), pascal()))
    assert pascal() ** 3 == pascal() * pascal() * pascal()


def test_expand_matrix_examples():
    M = expand_matrix(pascal(), 10)
    assert all(M[n, j] == comb(n, j) for n in range(10) for j in range(n + 1))
    assert all(M[n, j] == 0 for n in range(10) for j in range(n + 1, 10))
    ctx = field(8)
    g0, w = 1 + ctx.gen, ctx.gen
    D = expand_matrix(RiordanPair.diagonal(g0, w, ctx, N), 9)
    for n in range(9):
        for j in range(9):
            assert D[n, j] == (g0 * w ** n if n == j else 0)
    P = expand_matrix(p_star(), 10)
    assert all(P[n, j] == (-1) ** j * comb(n, j) for n in range(10) for j in range(n + 1))


def test_rows_exceed_precision():
    with pytest.raises(RowsExceedPrecision):
        expand_matrix(pascal(5), 7)
    assert expand_matrix(pascal(5), 6).rows == 6


def test_apply_examples():
    ctx = field(3)
    rng = random.Random(1)
    h = rand_unit(rng, ctx, N)
    assert apply(RiordanPair.identity(ctx, N), h) == h
    geo = inv(S(1, -1))
    out = apply(pascal(), geo)
    assert out == inv(S(1, -2))
    M = expand_matrix(pascal(), 8)
    assert M.matvec(geo.coeffs) == [2 ** n for n in range(8)]
    v = nth_root_unit(geo, 2)
    assert apply(p_star(), v) == v
    assert p_star()(v) == v


def random_pair(rng, ctx, n=N):
    return RiordanPair(rand_unit(rng, ctx, n), rand_positive(rng, ctx, n))


@pytest.mark.parametrize("m", [1, 3, 4])
def test_matrix_is_homomorphism(m):
    ctx = field(m)
    rng = random.Random(m)
    rows = N + 1
    for _ in range(3):
        p, q = random_pair(rng, ctx), random_pair(rng, ctx)
        assert expand_matrix(rmul(p, q), rows) == expand_matrix(p, rows) @ expand_matrix(q, rows)


@pytest.mark.parametrize("m", [1, 6])
def test_apply_matches_matvec_and_diagonal(m):
    ctx = field(m)
    rng = random.Random(10 + m)
    for _ in range(3):
        p = random_pair(rng, ctx)
        h = rand_unit(rng, ctx, N)
        M = expand_matrix(p, N + 1)
        assert apply(p, h).coeffs == M.matvec(h.coeffs)
        for n in range(N + 1):
            assert M[n, n] == p.g0 * p.f1 ** n


def test_inverse_both_sides_random():
    ctx = field(4)
    rng = random.Random(12)
    for _ in range(5):
        p = random_pair(rng, ctx)
        assert rmul(p, rinv(p)).is_identity()
        assert rmul(rinv(p), p).is_identity()


def test_associativity_random():
    ctx = field(3)
    rng = random.Random(13)
    p, q, r = (random_pair(rng, ctx) for _ in range(3))
    assert rmul(rmul(p, q), r) == rmul(p, rmul(q, r))


def test_matrix_json_round_trip():
    ctx = field(6)
    rng = random.Random(14)
    M = expand_matrix(random_pair(rng, ctx, 8), 7)
    back = matrix_from_json(M.to_json(), ctx)
    assert back == [list(M.entries[n][: n + 1]) for n in range(7)]
    text = expand_matrix(pascal(), 4).to_text().splitlines()
    assert text == ["1", "1 1", "1 2 1", "1 3 3 1"]
