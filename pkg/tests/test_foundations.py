from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wittorbit.foundations import (
    DualNumber,
    EvalAtPole,
    Jet,
    LaurentPoly,
    NotDivisible,
    NotInvertible,
    divide_exact,
    jet_inverse,
    laurent_derivative,
    laurent_residue,
    matrix_inverse,
    matrix_rank,
    nullspace,
    taylor_coefficient,
)

from oracles import T, from_sympy, to_sympy

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
laurent = st.dictionaries(st.integers(-4, 4), fractions, max_size=5).map(LaurentPoly)
polys = st.dictionaries(st.integers(0, 5), fractions, max_size=5).map(LaurentPoly)


def test_rationals_are_reduced():
    p = LaurentPoly({1: Fraction(6, 4)})
    assert p.coeff(1) == Fraction(3, 2)
    assert LaurentPoly({2: 0}).is_zero()


@pytest.mark.parametrize(
    "p, expected",
    [
        (LaurentPoly.monomial(2), LaurentPoly.monomial(1, 2)),
        (LaurentPoly.monomial(-1), LaurentPoly.monomial(-2, -1)),
        (LaurentPoly.const(5), LaurentPoly()),
    ],
)
def test_derivative_examples(p, expected):
    assert laurent_derivative(p) == expected


def test_residue_examples():
    assert laurent_residue(LaurentPoly({-1: 3, 2: 1})) == 3
    assert laurent_residue(LaurentPoly.monomial(-2)) == 0
    assert laurent_residue(LaurentPoly()) == 0


def test_taylor_examples():
    assert taylor_coefficient(LaurentPoly.monomial(2), 1, 1) == 2
    assert taylor_coefficient(LaurentPoly.monomial(-1), 1, 2) == 1
    assert taylor_coefficient(LaurentPoly.t_minus(2, 3), 2, 3) == 1
    with pytest.raises(EvalAtPole):
        taylor_coefficient(LaurentPoly.monomial(-1), 0, 0)


def test_divide_exact_examples():
    assert divide_exact(LaurentPoly({2: 1, 0: -1}), 1) == LaurentPoly({1: 1, 0: 1})
    assert divide_exact(LaurentPoly({-1: 1, 0: -1}), 1) == LaurentPoly({-1: -1})
    with pytest.raises(NotDivisible):
        divide_exact(LaurentPoly.monomial(2), 1)


def test_divide_exact_at_zero_keeps_lowest_term():
    assert divide_exact(LaurentPoly.monomial(1), 0) == LaurentPoly.const(1)
    assert divide_exact(LaurentPoly({3: 2, 1: 5}), 0) == LaurentPoly({2: 2, 0: 5})


def test_jet_inverse_examples():
    assert jet_inverse(Jet([1, 1], 3)) == Jet([1, -1, 1], 3)
    assert jet_inverse(Jet([2], 2)) == Jet([Fraction(1, 2)], 2)
    with pytest.raises(NotInvertible):
        jet_inverse(Jet([0, 1], 2))


@given(laurent, laurent)
def test_leibniz(p, q):
    assert (p * q).derivative() == p.derivative() * q + p * q.derivative()


@given(laurent)
def test_residue_of_derivative_vanishes(p):
    assert laurent_residue(p.derivative()) == 0


@given(laurent, laurent)
def test_product_matches_sympy(p, q):
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0


@given(laurent, st.integers(0, 4), fractions.filter(lambda x: x != 0))
def test_taylor_matches_sympy(p, k, x):
    expected = sympy.diff(to_sympy(p), T, k).subs(T, sympy.Rational(x.numerator, x.denominator)) / sympy.factorial(k)
    assert p.taylor_coefficient(x, k) == from_sympy(expected)


@given(polys, st.integers(0, 4))
def test_taylor_at_zero_matches_sympy(p, k):
    expected = sympy.diff(to_sympy(p), T, k).subs(T, 0) / sympy.factorial(k)
    assert p.taylor_coefficient(0, k) == from_sympy(expected)


@given(laurent, fractions)
def test_divide_exact_inverts_multiplication(q, x):
    if x == 0 and not q.is_polynomial():
        return
    assert divide_exact(LaurentPoly.t_minus(x, 1) * q, x) == q


@settings(max_examples=50)
@given(st.lists(fractions, min_size=1, max_size=6).filter(lambda c: c[0] != 0))
def test_jet_inverse_property(coeffs):
    s = Jet(coeffs, len(coeffs))
    one = Jet([1], len(coeffs))
    assert s * jet_inverse(s) == one


@given(fractions, fractions, fractions, fractions)
def test_dual_number_product_rule(a, da, b, db):
    u, v = DualNumber(a, da), DualNumber(b, db)
    w = u * v
    assert w.value == a * b
    assert w.derivative == a * db + da * b


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_linear_algebra_matches_sympy(rows):
    assert matrix_rank(rows) == sympy.Matrix(rows).rank()
    for v in nullspace(rows, 4):
        assert all(sum(Fraction(r[i]) * v[i] for i in range(4)) == 0 for r in rows)
    assert len(nullspace(rows, 4)) == 4 - sympy.Matrix(rows).rank()


def test_matrix_inverse():
    M = [[2, 1], [1, 1]]
    assert matrix_inverse(M) == [[1, -1], [-1, 2]]
