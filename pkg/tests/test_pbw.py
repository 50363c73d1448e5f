from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from wittorbit.foundations import AlgebraMismatch, NegativeExponent, NotPoisson
from wittorbit.pbw import (
    Element,
    associated_graded_symbol,
    enveloping_gbold,
    enveloping_witt,
    multiply,
    normal_order,
    poisson_bracket,
    s_algebra,
    symmetric_witt,
    weyl_plain,
    weyl_slots,
)

from oracles import rewrite_witt_word, weyl_operator

UW = enveloping_witt("W")
UVir = enveloping_witt("Vir")
fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def e(i, alg=UW):
    return alg.gen(("e", i))


def as_index_dict(el: Element) -> dict:
    out = {}
    for mono, c in el.terms.items():
        word = []
        for g, k in mono:
            word += ["z" if g == ("z",) else g[1]] * k
        out[tuple(word)] = c
    return out


def test_enveloping_examples():
    assert normal_order(UW, [(("e", 1), 1), (("e", 0), 1)]) == e(0) * e(1) - e(1)
    assert e(0) * e(0) == UW.gen(("e", 0), 2)
    assert UW.unit() * e(3) == e(3)


def test_weyl_examples():
    A = weyl_plain(1)
    s, d = A.gen(("x", 0)), A.gen(("d", 0))
    assert normal_order(A, [(("d", 0), 1), (("x", 0), 1)]) == s * d + A.unit()
    assert (s * d) * s == A.gen(("x", 0), 2) * d + s
    At = weyl_slots(1, True)
    t_inv, dt = At.gen(("x", 0), -1), At.gen(("d", 0))
    assert dt * t_inv == t_inv * dt - At.gen(("x", 0), -2)


def test_negative_power_needs_localization():
    with pytest.raises(NegativeExponent):
        weyl_plain(1).gen(("x", 0), -1)


def test_mixed_algebras_rejected():
    with pytest.raises(AlgebraMismatch):
        multiply(e(0), weyl_plain(1).unit())


def test_poisson_examples():
    S = s_algebra(None)
    assert poisson_bracket(S.gen(("y", 1)), S.gen(("y", 2))) == S.gen(("y", 2))
    assert poisson_bracket(S.gen(("y", 0)), S.gen(("t",))) == S.unit()
    SW = symmetric_witt("W")
    assert poisson_bracket(SW.gen(("e", 0)), SW.gen(("e", 0))).is_zero()
    with pytest.raises(NotPoisson):
        poisson_bracket(weyl_plain(1).unit(), weyl_plain(1).unit())


def test_symbol_examples():
    SW = symmetric_witt("W")
    assert associated_graded_symbol(e(0) * e(1) - e(1)) == SW.gen(("e", 0)) * SW.gen(("e", 1))
    assert associated_graded_symbol(UW.scalar(Fraction(3, 2))) == SW.scalar(Fraction(3, 2))


words = st.lists(st.integers(-4, 4), min_size=0, max_size=6)


@given(words)
def test_normal_order_matches_naive_rewriting(word):
    got = normal_order(UW, [(("e", i), 1) for i in word])
    assert as_index_dict(got) == rewrite_witt_word(word)


@given(st.lists(st.one_of(st.integers(-3, 3), st.just("z")), max_size=5))
def test_virasoro_normal_order_matches_naive_rewriting(word):
    got = normal_order(UVir, [((("z",) if g == "z" else ("e", g)), 1) for g in word])
    assert as_index_dict(got) == rewrite_witt_word(word, central=True)


def random_env(draw_terms):
    out = UW.element()
    for word, c in draw_terms:
        term = UW.unit()
        for i in word:
            term = term * e(i)
        out = out + term.scale(c)
    return out


env = st.lists(st.tuples(st.lists(st.integers(-3, 3), max_size=3), fractions), max_size=4).map(random_env)


@settings(max_examples=60)
@given(env, env, env)
def test_associativity(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_commutator_of_generators(i, j):
    expected = e(i + j).scale(j - i) if i != j else UW.element()
    assert e(i) * e(j) - e(j) * e(i) == expected


@settings(max_examples=40)
@given(st.integers(1, 6), st.data())
def test_gn_associativity(n, data):
    U = enveloping_gbold((n,))
    gens = [U.gen(("v", 0, i)) for i in range(n)]

    def rand():
        out = U.element()
        for _ in range(data.draw(st.integers(0, 3))):
            word = data.draw(st.lists(st.integers(0, n - 1), max_size=3))
            term = U.unit()
            for i in word:
                term = term * gens[i]
            out = out + term.scale(data.draw(fractions))
        return out

    a, b, c = rand(), rand(), rand()
    assert (a * b) * c == a * (b * c)


def weyl_elements(localized):
    def build(terms):
        A = weyl_slots(2, localized) if localized else weyl_plain(2)
        out = A.element()
        for (a0, b0, a1, b1), c in terms:
            out = out + Element(A, {((a0, b0), (a1, b1)): c})
        return out

    lo = -2 if localized else 0
    mono = st.tuples(st.integers(lo, 2), st.integers(0, 2), st.integers(lo, 2), st.integers(0, 2))
    return st.lists(st.tuples(mono, fractions.filter(bool)), max_size=3).map(build)


@settings(max_examples=40, deadline=None)
@pytest.mark.parametrize("localized", [False, True])
@given(data=st.data())
def test_weyl_product_is_operator_composition(localized, data):
    a, b = data.draw(weyl_elements(localized)), data.draw(weyl_elements(localized))
    names = [v[0] for v in a.alg.variables]
    apply_a, syms = weyl_operator(a, names)
    apply_b, _ = weyl_operator(b, names)
    apply_ab, _ = weyl_operator(a * b, names)
    f = sympy.Function("f")(*syms)
    assert sympy.simplify(apply_ab(f) - apply_a(apply_b(f))) == 0


def s_elements(n):
    S = s_algebra(n)

    def build(terms):
        out = S.element()
        for (tk, ys), c in terms:
            term = S.gen(("t",), tk)
            for y in ys:
                term = term * S.gen(("y", y))
            out = out + term.scale(c)
        return out

    mono = st.tuples(st.integers(0, 2), st.lists(st.integers(0, n), max_size=2))
    return st.lists(st.tuples(mono, fractions.filter(bool)), max_size=3).map(build)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.data())
def test_poisson_jacobi_and_leibniz(n, data):
    a, b, c = (data.draw(s_elements(n)) for _ in range(3))
    pb = poisson_bracket
    assert pb(a, pb(b, c)) + pb(b, pb(c, a)) + pb(c, pb(a, b)) == a.alg.element()
    assert pb(a, b * c) == pb(a, b) * c + b * pb(a, c)
    assert pb(a, b) == -pb(b, a)


@given(env, env)
def test_symbol_is_multiplicative_without_cancellation(a, b):
    sa, sb = associated_graded_symbol(a), associated_graded_symbol(b)
    prod = sa * sb
    if a.is_zero() or b.is_zero() or prod.is_zero():
        return
    assert associated_graded_symbol(a * b) == prod
