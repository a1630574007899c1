"""Tests for the exact ring: constants, monomial order, ring axioms, JSON."""
from __future__ import annotations

import random
from fractions import Fraction

import mpmath
import pytest
from mpmath import mp, mpf

from tornheim.errors import DivergenceError, DomainError
from tornheim.exact import (
    SignedIndex,
    ZetaExpression,
    ZetaMonomial,
    bernoulli,
    canonicalize,
    expr_numeric,
    expression_from_json,
    expression_to_json,
    zeta_const,
    zeta_even_as_pi,
)

F = Fraction


# ---------------------------------------------------------------- constants

@pytest.mark.parametrize(
    "n, expected",
    [
        (0, F(1)),
        (1, F(-1, 2)),
        (2, F(1, 6)),
        (3, F(0)),
        (4, F(-1, 30)),
        (8, F(-1, 30)),
        (12, F(-691, 2730)),
        (20, F(-174611, 330)),
    ],
)
def test_bernoulli_table(n, expected):
    assert bernoulli(n) == expected


def test_bernoulli_defining_recurrence():
    # sum_{k=0}^{n} C(n+1,k) B_k = 0 for n >= 1
    from math import comb

    for n in range(1, 40):
        assert sum(comb(n + 1, k) * bernoulli(k) for k in range(n + 1)) == 0


def test_bernoulli_rejects_negative():
    with pytest.raises(DomainError):
        bernoulli(-1)


@pytest.mark.parametrize(
    "k, coeff",
    [(2, F(1, 6)), (4, F(1, 90)), (6, F(1, 945)), (8, F(1, 9450))],
)
def test_zeta_even_as_pi_small(k, coeff):
    expr = zeta_even_as_pi(k)
    assert expr.terms() == [(ZetaMonomial(pi_exponent=k), coeff)]


def test_zeta_even_as_pi_matches_mpmath_oracle():
    mp.dps = 40
    for k in range(2, 22, 2):
        expr = zeta_even_as_pi(k)
        ((mono, coeff),) = expr.terms()
        approx = mpf(coeff.numerator) / coeff.denominator * mp.pi ** mono.pi_exponent
        assert abs(approx - mpmath.zeta(k)) < mpf(10) ** -35


@pytest.mark.parametrize("k", [1, 3, 5])
def test_zeta_even_as_pi_rejects_odd(k):
    with pytest.raises(DomainError):
        zeta_even_as_pi(k)


def test_zeta_const_one_diverges():
    with pytest.raises(DivergenceError):
        zeta_const(1, 1)


def test_zeta_const_signed_values():
    # zeta(1;-1) = -log 2
    assert zeta_const(1, -1).terms() == [(ZetaMonomial(log2_exponent=1), F(-1))]
    # zeta(2;-1) = -pi^2/12
    assert zeta_const(2, -1).terms() == [(ZetaMonomial(pi_exponent=2), F(-1, 12))]
    # zeta(3;-1) = -(3/4) zeta(3)
    assert zeta_const(3, -1).terms() == [(ZetaMonomial(odd_zeta_factors=(3,)), F(-3, 4))]
    # zeta(3;+1) is the atom itself
    assert zeta_const(3).terms() == [(ZetaMonomial(odd_zeta_factors=(3,)), F(1))]


def test_zeta_const_signed_matches_mpmath_oracle():
    mp.dps = 40
    for k in range(2, 12):
        val = expr_numeric(zeta_const(k, -1))
        oracle = (2 ** (1 - mpf(k)) - 1) * mpmath.zeta(k)
        assert abs(val - oracle) < mpf(10) ** -30


# ---------------------------------------------------------------- SignedIndex

def test_signed_index_parse_render_roundtrip():
    for text in ["1", "2-", "5/2", "7/2-", "10"]:
        si = SignedIndex.parse(text)
        assert str(si) == text
        assert SignedIndex.from_json(si.to_json()) == si


def test_signed_index_validation():
    with pytest.raises(DomainError):
        SignedIndex(2, 0)
    with pytest.raises(DomainError):
        SignedIndex.parse("abc")


# ---------------------------------------------------------------- monomials

def test_monomial_normalizes_factor_order():
    a = ZetaMonomial(odd_zeta_factors=(5, 3, 3))
    b = ZetaMonomial(odd_zeta_factors=(3, 5, 3))
    assert a == b
    assert a.odd_zeta_factors == (3, 3, 5)


def test_monomial_rejects_even_zeta_factor():
    with pytest.raises(DomainError):
        ZetaMonomial(odd_zeta_factors=(4,))


def test_monomial_weight_and_order():
    m1 = ZetaMonomial(pi_exponent=2, odd_zeta_factors=(3,))  # weight 5
    m2 = ZetaMonomial(odd_zeta_factors=(5,))  # weight 5
    m3 = ZetaMonomial(odd_zeta_factors=(3,))  # weight 3
    assert m1.weight == 5 and m2.weight == 5 and m3.weight == 3
    # lower weight first; at equal weight, higher pi exponent sorts later
    assert sorted([m1, m2, m3], key=lambda m: m.sort_key) == [m3, m2, m1]


# ---------------------------------------------------------------- ring axioms

def _random_expr(rng: random.Random) -> ZetaExpression:
    terms = {}
    for _ in range(rng.randint(0, 4)):
        mono = ZetaMonomial(
            pi_exponent=rng.randint(0, 3),
            log2_exponent=rng.randint(0, 2),
            odd_zeta_factors=tuple(rng.choice([3, 5, 7]) for _ in range(rng.randint(0, 2))),
        )
        terms[mono] = F(rng.randint(-9, 9), rng.randint(1, 9))
    return ZetaExpression(terms)


def test_ring_axioms_seeded_sweep():
    rng = random.Random(20260816)
    zero = ZetaExpression.zero()
    one = ZetaExpression.one()
    for _ in range(200):
        a, b, c = _random_expr(rng), _random_expr(rng), _random_expr(rng)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a + zero == a
        assert a - a == zero
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)
        assert a * one == a
        assert a * (b + c) == a * b + a * c
        assert a * F(3, 7) == F(3, 7) * a


def test_constructor_drops_zeros_and_merges():
    m = ZetaMonomial(odd_zeta_factors=(3,))
    e = ZetaExpression({m: F(0)})
    assert e.is_zero()
    # duplicate monomials merge via differing-but-equal key objects
    e2 = ZetaExpression({m: F(1, 2)}) + ZetaExpression({ZetaMonomial(odd_zeta_factors=(3,)): F(1, 2)})
    assert e2.terms() == [(m, F(1))]


def test_canonicalize_idempotent():
    rng = random.Random(7)
    for _ in range(50):
        e = _random_expr(rng)
        assert canonicalize(e) == e
        assert canonicalize(canonicalize(e)) == canonicalize(e)


# ---------------------------------------------------------------- rendering

def test_render_golden():
    e = ZetaExpression(
        {
            ZetaMonomial(odd_zeta_factors=(3,)): F(-5, 8),
            ZetaMonomial(pi_exponent=2, odd_zeta_factors=(3,)): F(1, 16),
            ZetaMonomial(odd_zeta_factors=(5,)): F(-27, 32),
        }
    )
    assert e.render() == "-(5/8)*zeta(3) - (27/32)*zeta(5) + (1/16)*pi^2*zeta(3)"
    assert ZetaExpression.zero().render() == "0"
    assert zeta_const(1, -1).render() == "-log2"
    assert ZetaExpression.constant(F(3, 4)).render() == "3/4"
    sq = zeta_const(3) * zeta_const(3)
    assert sq.render() == "zeta(3)^2"


# ---------------------------------------------------------------- JSON

def test_json_roundtrip_seeded_sweep():
    rng = random.Random(99)
    for _ in range(100):
        e = _random_expr(rng)
        assert expression_from_json(expression_to_json(e)) == e


def test_json_golden_shape():
    e = ZetaExpression(
        {
            ZetaMonomial(odd_zeta_factors=(3,)): F(-5, 8),
            ZetaMonomial(pi_exponent=2, log2_exponent=1): F(7, 2),
        }
    )
    assert expression_to_json(e) == [
        {"coeff": "-5/8", "pi": 0, "log2": 0, "zeta": [3]},
        {"coeff": "7/2", "pi": 2, "log2": 1, "zeta": []},
    ]


# ---------------------------------------------------------------- numerics

def test_expr_numeric_against_mpmath_oracle():
    mp.dps = 40
    # -(5/8) zeta(3)
    e = ZetaExpression({ZetaMonomial(odd_zeta_factors=(3,)): F(-5, 8)})
    assert abs(expr_numeric(e) - (-F(5, 8).numerator / mpf(8) * mpmath.zeta(3))) < mpf(10) ** -28
    # pi^2/6 == zeta(2)
    e2 = zeta_even_as_pi(2)
    assert abs(expr_numeric(e2) - mpmath.zeta(2)) < mpf(10) ** -28
    # mixed monomial pi^2 * log2 * zeta(3)^2
    e3 = ZetaExpression({ZetaMonomial(2, 1, (3, 3)): F(1)})
    oracle = mp.pi ** 2 * mp.log(2) * mpmath.zeta(3) ** 2
    assert abs(expr_numeric(e3) - oracle) < mpf(10) ** -28


def test_expr_numeric_is_linear():
    rng = random.Random(5)
    for _ in range(10):
        a, b = _random_expr(rng), _random_expr(rng)
        lhs = expr_numeric(a + b)
        rhs = expr_numeric(a) + expr_numeric(b)
        assert abs(lhs - rhs) < mpf(10) ** -25


def test_expr_numeric_zero():
    assert expr_numeric(ZetaExpression.zero()) == 0
