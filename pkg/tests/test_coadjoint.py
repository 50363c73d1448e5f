from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wittorbit.coadjoint import (
    GroupElement,
    act_on_dual,
    act_on_gn,
    act_transpose,
    closure_leq,
    group_matrix,
    orbit_dimension,
    orbit_equal,
    orbit_reduce,
    tangent_check,
)
from wittorbit.foundations import NotInvertible, SizeMismatch, TopCoefficientZero
from wittorbit.lie import GnElement, gn_bracket

from oracles import from_sympy

A = sympy.Symbol("a")
nonzero = st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool)
fractions = st.fractions(min_value=-3, max_value=3, max_denominator=3)


def group(n):
    return st.tuples(nonzero, st.lists(fractions, min_size=n - 1, max_size=n - 1)).map(
        lambda p: GroupElement(n, (p[0], *p[1]))
    )


def covector(n):
    return st.tuples(st.lists(fractions, min_size=n - 1, max_size=n - 1), nonzero).map(lambda p: (*p[0], p[1]))


def sympy_matrix(g: GroupElement):
    """Column i: coefficients of s^(i+1) / s' at a^1..a^n, by series expansion."""
    n = g.n
    s = sum(sympy.Rational(c.numerator, c.denominator) * A ** (k + 1) for k, c in enumerate(g.coeffs))
    cols = []
    for i in range(n):
        ser = sympy.series(s ** (i + 1) / sympy.diff(s, A), A, 0, n + 1).removeO()
        cols.append([from_sympy(ser.coeff(A, k + 1)) for k in range(n)])
    return [[cols[i][k] for i in range(n)] for k in range(n)]


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(group))
def test_matrix_matches_series_oracle(g):
    assert group_matrix(g) == sympy_matrix(g)


def test_matrix_examples():
    c1, c2 = Fraction(3), Fraction(5)
    assert group_matrix(GroupElement(2, (c1, c2))) == [[1, 0], [-c2 / c1, c1]]
    for n in range(1, 6):
        ident = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        assert group_matrix(GroupElement.identity(n)) == ident
    assert group_matrix(GroupElement(1, (7,))) == [[1]]
    with pytest.raises(NotInvertible):
        GroupElement(2, (0, 1))


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(group(n), group(n))))
def test_matrix_is_multiplicative(pair):
    g, h = pair
    assert group_matrix(g.then(h)) == matmul(group_matrix(g), group_matrix(h))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(group(n), st.lists(fractions, min_size=n, max_size=n), st.lists(fractions, min_size=n, max_size=n))))
def test_matrix_preserves_brackets(data):
    g, x, y = data
    n = g.n
    a, b = GnElement(n, tuple(x)), GnElement(n, tuple(y))
    lhs = act_on_gn(g, gn_bracket(a, b).coeffs)
    rhs = gn_bracket(GnElement(n, act_on_gn(g, a.coeffs)), GnElement(n, act_on_gn(g, b.coeffs))).coeffs
    assert lhs == rhs


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 6).flatmap(group))
def test_leading_block_is_the_truncated_jet(g):
    big = group_matrix(g)
    small = group_matrix(GroupElement(g.n - 1, g.coeffs[:-1]))
    assert [row[: g.n - 1] for row in big[: g.n - 1]] == small


def test_dual_actions_pin_the_displayed_formulas():
    n, alpha, zeta = 6, Fraction(2), Fraction(3)
    for j in range(1, n):
        g = GroupElement.unipotent(n, j, alpha)
        for i in range(j, n):
            xi = [0] * n
            xi[i] = 1
            out = act_transpose(g, xi)
            # transpose action: v*_i -> v*_i + alpha (i - 2j) v*_{i-j} + lower terms
            assert out[i] == 1 and out[i - j] == alpha * (i - 2 * j)
            assert all(out[k] == 0 for k in range(i + 1, n))
            assert all(out[k] == 0 for k in range(i - j + 1, i))
    dil = GroupElement.dilation(n, zeta)
    for i in range(n):
        xi = [0] * n
        xi[i] = 1
        assert act_transpose(dil, xi)[i] == zeta**i
        assert act_on_dual(dil, xi)[i] == zeta ** (-i)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(group(n), group(n), st.lists(fractions, min_size=n, max_size=n))))
def test_dual_action_is_contragredient(data):
    g, h, xi = data
    x = [Fraction(1)] + [Fraction(0)] * (g.n - 1)
    # pairing is invariant: (g.xi)(g.x) = xi(x)
    pair = lambda f, v: sum(a * b for a, b in zip(f, v))  # noqa: E731
    for k in range(g.n):
        x = [Fraction(int(i == k)) for i in range(g.n)]
        assert pair(act_on_dual(g, xi), act_on_gn(g, x)) == pair(xi, x)
    assert act_on_dual(g, act_on_dual(h, xi)) == act_on_dual(g.then(h), xi)
    assert act_on_dual(GroupElement.identity(g.n), xi) == tuple(Fraction(v) for v in xi)


def test_reduce_examples():
    assert orbit_reduce((5, 3))[0] == (0, 3)
    assert orbit_reduce((0, 0, 1))[0] == (0, 0, 1)
    assert orbit_reduce((Fraction(7),))[0] == (7,)
    with pytest.raises(TopCoefficientZero):
        orbit_reduce((1, 0))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6).flatmap(covector))
def test_reduce_witness_and_fixed_point(xi):
    red, witness = orbit_reduce(xi)
    cur = tuple(Fraction(x) for x in xi)
    for g in witness:
        cur = act_on_dual(g, cur)
    assert cur == red
    assert orbit_reduce(red)[0] == red
    n = len(xi)
    keep = {n - 1} | ({(n - 1) // 2} if n % 2 == 1 else set()) if n > 1 else {0}
    assert all(red[k] == 0 for k in range(n) if k not in keep)


def test_equality_examples():
    assert orbit_equal((5, 3), (0, 1))
    assert not orbit_equal((2,), (3,))
    assert orbit_equal((0, 2, 1), (0, -2, 1))
    assert orbit_equal((0, 0, 1), (0, 0, 2))
    assert not orbit_equal((0, 1, 1), (0, 0, 1))
    with pytest.raises(SizeMismatch):
        orbit_equal((1, 1), (1, 1, 1))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.tuples(covector(n), covector(n), group(n))))
def test_equality_is_orbit_invariant(data):
    xi, eta, g = data
    assert orbit_equal(act_on_dual(g, xi), eta) == orbit_equal(xi, eta)
    assert orbit_equal(xi, act_on_dual(g, xi))
    assert orbit_dimension(act_on_dual(g, xi)) == orbit_dimension(xi)


def test_dimension_examples():
    assert orbit_dimension((0, 1)) == 2
    assert orbit_dimension((0, 0, 1)) == 2
    assert orbit_dimension((5,)) == 0


@given(st.integers(1, 8).flatmap(covector))
def test_dimension_by_parity_and_sympy_rank(xi):
    n = len(xi)
    expected = 0 if n == 1 else (n if n % 2 == 0 else n - 1)
    assert orbit_dimension(xi) == expected
    form = sympy.Matrix(n, n, lambda i, j: (j - i) * sympy.Rational(xi[i + j]) if i + j < n else 0)
    assert orbit_dimension(xi) == form.rank()


def test_closure_examples():
    assert closure_leq((0, 1), (1, 0))
    assert closure_leq((0, 0, 1), (0, 0, 3))
    assert not closure_leq((0, 0, 1), (0, 1, 1))


def test_tangent_examples():
    assert tangent_check(3, [0, 0, 1])
    assert tangent_check(2, [0, 1])
    assert tangent_check(4, [0])


@pytest.mark.parametrize("n", range(1, 9))
def test_tangent_monomials(n):
    for j in range(1, n):
        s = [0] * (j + 2)
        s[j + 1] = 1
        assert tangent_check(n, s)
