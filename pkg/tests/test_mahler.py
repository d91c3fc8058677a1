import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from padicdiff.errors import DomainError, PrecisionError
from padicdiff.mahler import (MahlerSeries, analytic_norm_pair, antiderivative, basis_norm_J,
                              derivative, difference_quotient, evaluate, grid_norm,
                              is_analytic, mahler_coeffs, norm_Ct)
from padicdiff.padic import INF, PadicNumber, Val, vp

p, N = 3, 16


def S(coeffs, tail=Val(INF)):
    return MahlerSeries.from_values(coeffs, p, N, tail)


def as_fracs(s):
    return [c.to_fraction() for c in s.coeffs]


def same(pads, values):
    """Elementwise p-adic equality against rationals (zeros may be absent)."""
    n = max(len(pads), len(values))
    pads = list(pads) + [PadicNumber.zero(p)] * (n - len(pads))
    values = list(values) + [0] * (n - len(values))
    return all(a == b for a, b in zip(pads, values))


def test_identity_coefficients():
    assert as_fracs(mahler_coeffs(lambda k: k, 4, p, N)) == [0, 1, 0, 0, 0]


def test_square_coefficients():
    # forward differences of 0, 1, 4, 9 at 0
    assert as_fracs(mahler_coeffs(lambda k: k * k, 3, p, N)) == [0, 1, 2, 0]


def test_constant_coefficients():
    assert as_fracs(mahler_coeffs(lambda k: 5, 3, p, N)) == [5, 0, 0, 0]


def test_short_table_rejected():
    with pytest.raises(DomainError):
        mahler_coeffs([1, 2], 4, p, N)


def test_evaluate_examples():
    assert evaluate(S([0, 1]), 5) == 5
    assert evaluate(S([0, 1, 2]), 4) == 16
    assert evaluate(S([7]), 123) == 7
    assert evaluate(S([0, 1, 2]), PadicNumber.from_rational(Fraction(1, 2), p, N)) == Fraction(1, 4)


def test_evaluate_outside_disc():
    with pytest.raises(DomainError):
        evaluate(S([0, 1]), PadicNumber.from_rational(Fraction(1, 3), p, N))


def test_difference_quotient_examples():
    ident = lambda x: x
    square = lambda x: x * x
    assert difference_quotient(ident, 1, 4, [9], [2]) == 9
    x, h, z = 5, 9, 2
    assert difference_quotient(square, 1, x, [h], [z]) == 2 * x * h + z * h * h
    assert difference_quotient(square, 2, x, [h, 27], [z, 4]) == 2 * h * 27
    with pytest.raises(DomainError):
        difference_quotient(square, 1, x, [0], [1])


def test_norm_examples():
    assert norm_Ct(S([0, 1]), 1, 3).value == Val(0)
    assert norm_Ct(S([]), 0, 3).value == Val(INF)
    assert norm_Ct(S([0, 9]), 0, 3).value == Val(2)


def test_basis_norm_t0():
    assert all(basis_norm_J(0, m, p) == Val(0) for m in range(12))


def brute_C1_norm(f, p, level):
    """Independent C(1) oracle: sup over x, y mod p^level of |f(x)|, |f(y)-f(x)|/|y-x|."""
    q = p**level
    best = min(vp(f(x), p) for x in range(q))
    for x in range(q):
        for y in range(x + 1, x + q):
            d = f(y) - f(x)
            if d:
                best = min(best, vp(d, p) - vp(y - x, p))
    return Val(best)


def test_basis_norm_t1_m2_against_brute_force():
    f = lambda k: comb(k, 2)
    expected = brute_C1_norm(f, p, 3)
    assert basis_norm_J(1, 2, p, 3) == expected
    rep = grid_norm(f, p, 1, 4)
    assert rep.value == expected and rep.stabilized


@pytest.mark.parametrize("m", range(1, 12))
def test_basis_norm_t1_brute_force(m):
    assert basis_norm_J(1, m, p, 3) == brute_C1_norm(lambda k: comb(k, m), p, 3)


def test_is_analytic_examples():
    assert is_analytic(S([1, 2, 3]))[0]
    assert not is_analytic(S([1] * 20, Val(0)))[0]
    assert is_analytic(S([p**m for m in range(20)], Val(20)))[0]


def test_analytic_norm_pair_examples():
    assert analytic_norm_pair(S([0, 1])) == (Val(0), Val(0))
    assert same(S([0, 0, 1]).monomial(), [0, Fraction(-1, 2), Fraction(1, 2)])
    assert analytic_norm_pair(S([0, 9])) == (Val(2), Val(2))
    with pytest.raises(DomainError):
        analytic_norm_pair(S([1] * 20, Val(0)))


def test_antiderivative_examples():
    assert as_fracs(antiderivative(S([]))) == []
    assert as_fracs(antiderivative(S([1]))) == [0, 1]
    # Mahler (0, 2, 2) is 2x + (x^2 - x) = x^2 + x, so S = x^3/3 + x^2/2
    s = antiderivative(S([0, 2, 2]))
    assert same(s.monomial(), [0, 0, Fraction(1, 2), Fraction(1, 3)])


def test_antiderivative_precision_error():
    s = MahlerSeries.from_values([PadicNumber.from_rational(1, p, 2)] * 30, p, 2)
    with pytest.raises(PrecisionError):
        antiderivative(s, min_absprec=1)


def test_derivative_of_antiderivative():
    s = S([1, 3, 9, 27])
    d = derivative(antiderivative(s))
    assert as_fracs(d)[:4] == as_fracs(s)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_round_trip_polynomial(coeffs):
    f = lambda x: sum(c * x**i for i, c in enumerate(coeffs))
    D = len(coeffs) - 1
    s = mahler_coeffs(f, D, p, N)
    for x in range(p**3):
        assert evaluate(s, x) == f(x)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-50, 50), min_size=1, max_size=8))
def test_sup_norm_is_max_coefficient(coeffs):
    s = S(coeffs)
    expected = max((Val(vp(c, p)) for c in coeffs), default=Val(INF))
    assert s.sup_norm() == expected
    assert norm_Ct(s, 0, 2).value == expected


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-50, 50), max_size=6), st.lists(st.integers(-50, 50), max_size=6))
def test_coefficients_are_linear(a, b):
    fa = lambda x: sum(c * comb(x, i) for i, c in enumerate(a))
    fb = lambda x: sum(c * comb(x, i) for i, c in enumerate(b))
    D = max(len(a), len(b))
    lhs = mahler_coeffs(lambda x: fa(x) + fb(x), D, p, N)
    rhs = mahler_coeffs(fa, D, p, N) + mahler_coeffs(fb, D, p, N)
    assert same(lhs.coeffs, rhs.coeffs)


def test_json_round_trip():
    s = S([1, Fraction(2, 3), 9], Val(5))
    t = MahlerSeries.from_json(s.to_json())
    assert as_fracs(t) == as_fracs(s) and t.tail_val == Val(5)


def test_random_value_table_round_trip():
    rng = random.Random(1)
    vals = [rng.randrange(-100, 100) for _ in range(12)]
    s = mahler_coeffs(vals, 11, p, N)
    assert same([evaluate(s, k) for k in range(12)], vals)
