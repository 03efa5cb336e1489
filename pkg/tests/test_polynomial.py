from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from parabolic_r.polynomial import (
    ONE,
    ZERO,
    DualityDegreeError,
    IntPolynomial,
    add,
    eval_at_integer,
    mul,
    reverse,
)
from oracles import expand_sympy

polys = st.lists(st.integers(-50, 50), max_size=8).map(IntPolynomial)
big = st.lists(st.integers(-(10**30), 10**30), max_size=5).map(IntPolynomial)

P = IntPolynomial
one_minus_q = P([1, -1])


def test_add_examples():
    assert add(one_minus_q, P([-1, 1])) == ZERO
    assert add(one_minus_q, ZERO) == one_minus_q
    assert add(one_minus_q, P([0, 0, 1])) == P([1, -1, 1])


def test_mul_examples():
    assert mul(one_minus_q, P([1, 1])) == P([1, 0, -1])
    assert mul(one_minus_q, ZERO) == ZERO


def test_mul_product_matches_sympy():
    prod = one_minus_q * one_minus_q * one_minus_q * P([1, 0, -1]) * P([1, -1, 1])
    assert prod.degree == 7
    assert prod.to_json() == expand_sympy(1, [[1, -1]] * 3 + [[1, 0, -1], [1, -1, 1]])


def test_reverse_examples():
    assert reverse(one_minus_q, 2) == P([0, -1, 1])
    assert reverse(ZERO, 3) == ZERO
    assert reverse(ONE, 0) == ONE
    with pytest.raises(DualityDegreeError):
        reverse(P([1, 0, 0, 1]), 2)


def test_eval_examples():
    assert eval_at_integer(one_minus_q, 2) == -1
    assert eval_at_integer(P([7, 3, 2]), 0) == 7
    assert eval_at_integer(P([1, -1, 1]), 1) == 1


def test_zero_degree_is_none():
    assert ZERO.degree is None
    assert ONE.degree == 0
    assert P([0, 0, 0]) == ZERO and P([0, 0, 0]).coeffs == ()


@pytest.mark.parametrize("coeffs, text", [
    ([], "0"),
    ([1, -2, 0, 1], "1 - 2*q + q^3"),
    ([0, -1, 1], "-q + q^2"),
    ([-3], "-3"),
    ([1, -3, 2], "1 - 3*q + 2*q^2"),
])
def test_text_rendering(coeffs, text):
    assert P(coeffs).to_text() == text


def test_json_roundtrip():
    p = P([1, -2, 0, 1])
    assert p.to_json() == [1, -2, 0, 1]
    assert IntPolynomial.from_json(p.to_json()) == p


def test_arbitrary_precision():
    p = P([2**70, 1])
    assert (p * p)[0] == 2**140


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO


@given(big, big, st.integers(-5, 5))
def test_eval_is_multiplicative(a, b, q0):
    assert (a * b)(q0) == a(q0) * b(q0)
    assert (a + b)(q0) == a(q0) + b(q0)


@given(polys, polys)
def test_canonical_form_preserved(a, b):
    for r in (a + b, a * b, a - b, -a, a.scale(3), a.shift(2)):
        assert not r.coeffs or r.coeffs[-1] != 0


@given(polys, st.integers(0, 4))
def test_reverse_involution(p, extra):
    L = (p.degree or 0) + extra
    assert p.reverse(L).reverse(L) == p
    # reflecting then evaluating matches q^L p(1/q) at q = 2, exactly
    if not p.is_zero():
        direct = Fraction(2) ** L * sum(Fraction(c) / 2**d for d, c in enumerate(p.coeffs))
        assert p.reverse(L)(2) == direct
