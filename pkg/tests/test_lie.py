from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from wittorbit.foundations import DuplicatePoint, EvalAtPole, LaurentPoly, SizeMismatch, VariantMismatch
from wittorbit.lie import (
    VIR,
    W,
    W_GE_MINUS1,
    GnElement,
    WittElement,
    coordinates_at_points,
    gn_bracket,
    reassemble,
    vir_cocycle,
    vir_project,
    witt_bracket,
)

from oracles import T, from_sympy, to_sympy

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def witt(variant, lo=-6):
    lo = max(lo, 0) if variant == W_GE_MINUS1 else lo
    polys = st.dictionaries(st.integers(lo, 6), fractions, max_size=4).map(LaurentPoly)
    central = fractions if variant == VIR else st.just(Fraction(0))
    return st.builds(lambda f, c: WittElement(f, c, variant), polys, central)


def e(i, variant=W):
    return WittElement.basis(i, variant)


def test_bracket_examples():
    assert witt_bracket(e(1), e(2)) == e(3)
    assert witt_bracket(e(2, VIR), e(-2, VIR)) == e(0, VIR).scale(-4) + WittElement.z().scale(12)
    assert witt_bracket(e(0), e(0)) == WittElement.zero(W)
    with pytest.raises(VariantMismatch):
        witt_bracket(e(0), e(0, VIR))


@pytest.mark.parametrize("variant", [W, W_GE_MINUS1, VIR])
@given(data=st.data())
def test_bracket_matches_vector_field_oracle(variant, data):
    a, b = data.draw(witt(variant)), data.draw(witt(variant))
    c = witt_bracket(a, b)
    f, g = to_sympy(a.f), to_sympy(b.f)
    assert sympy.expand(to_sympy(c.f) - (f * sympy.diff(g, T) - sympy.diff(f, T) * g)) == 0
    if variant == VIR:
        integrand = sympy.expand(sympy.diff(f, T) * sympy.diff(g, T, 2) - sympy.diff(f, T, 2) * sympy.diff(g, T))
        assert c.central == from_sympy(integrand.coeff(T, -1))
    else:
        assert c.central == 0


@given(witt(VIR), witt(VIR), witt(VIR))
def test_vir_cocycle_identity(a, b, c):
    ab, bc, ca = (witt_bracket(x, y) for x, y in ((a, b), (b, c), (c, a)))
    assert vir_cocycle(ab.f, c.f) + vir_cocycle(bc.f, a.f) + vir_cocycle(ca.f, b.f) == 0


@given(witt(VIR), witt(VIR))
def test_projection_is_a_homomorphism(a, b):
    assert vir_project(witt_bracket(a, b)) == witt_bracket(vir_project(a), vir_project(b))


def test_vir_project_examples():
    z = WittElement.z()
    assert vir_project(e(1, VIR) + z.scale(3)) == e(1)
    assert vir_project(z) == WittElement.zero(W)
    assert vir_project(e(0, VIR) - z) == e(0)


def test_gn_examples():
    v = lambda i: GnElement.basis(4, i)  # noqa: E731
    assert gn_bracket(v(1), v(2)) == v(3)
    assert gn_bracket(v(2), v(3)) == GnElement(4, (0, 0, 0, 0))
    assert gn_bracket(v(1), v(1)) == GnElement(4, (0, 0, 0, 0))
    with pytest.raises(SizeMismatch):
        gn_bracket(v(1), GnElement.basis(3, 1))


@given(st.integers(1, 8), st.data())
def test_gn_is_a_truncation_of_w_nonnegative(n, data):
    # v_i = t^(i+1) d in W>=0 modulo indices >= n
    cs = [data.draw(st.lists(fractions, min_size=n, max_size=n)) for _ in range(2)]
    a, b = GnElement(n, tuple(cs[0])), GnElement(n, tuple(cs[1]))
    lift = lambda c: WittElement(LaurentPoly({i + 1: x for i, x in enumerate(c)}), 0, W)  # noqa: E731
    full = witt_bracket(lift(cs[0]), lift(cs[1]))
    expected = tuple(full.f.coeff(i + 1) for i in range(n))
    assert gn_bracket(a, b).coeffs == expected


def test_coordinates_examples():
    pc = coordinates_at_points(e(-1), [(1, 1)])
    assert pc.coeffs == [[1, 0]] and pc.remainder.f.is_zero()
    pc = coordinates_at_points(e(0), [(1, 1)])
    assert pc.coeffs == [[1, 1]] and pc.remainder.f.is_zero()
    pc = coordinates_at_points(e(1), [(1, 1)])
    assert pc.coeffs == [[1, 2]] and pc.remainder.f == LaurentPoly.t_minus(1, 2)


def test_coordinates_errors():
    with pytest.raises(DuplicatePoint):
        coordinates_at_points(e(0), [(1, 1), (1, 0)])
    with pytest.raises(EvalAtPole):
        coordinates_at_points(e(-3), [(0, 1)])


@given(witt(W), st.integers(0, 3), st.integers(0, 3))
def test_coordinates_reassemble(w, m1, m2):
    pc = coordinates_at_points(w, [(1, m1), (Fraction(-2, 3), m2)])
    assert reassemble(pc) == w
    modulus = LaurentPoly.t_minus(1, m1 + 1) * LaurentPoly.t_minus(Fraction(-2, 3), m2 + 1)
    # the remainder lies in the ideal generated by the modulus
    rem = pc.remainder.f
    for x, k in ((1, m1 + 1), (Fraction(-2, 3), m2 + 1)):
        assert all(rem.taylor_coefficient(x, j) == 0 for j in range(k))
    assert modulus.max_exp() == m1 + m2 + 2


@given(witt(W_GE_MINUS1), st.integers(0, 3))
def test_coordinates_at_zero(w, m):
    pc = coordinates_at_points(w, [(0, m)])
    assert reassemble(pc) == w
    assert all(pc.remainder.f.coeff(j) == 0 for j in range(m + 1))
