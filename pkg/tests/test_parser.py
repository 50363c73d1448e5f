import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittorbit.foundations import LaurentPoly, ParseError
from wittorbit.lie import VIR, W, WittElement, format_witt
from wittorbit.localfn import LocalFunction
from wittorbit.parser import (
    algebra_from_name,
    algebra_name,
    element_from_json,
    element_to_json,
    parse_element,
    parse_localfn,
    parse_witt,
    vector_from_json,
    vector_to_json,
    witt_from_json,
    witt_to_json,
)
from wittorbit.pbw import enveloping_witt

NAMES = [
    "W", "W-1", "Vir", "W>=2", "W@2", "Vir@3", "W-1@2", "g:2,3", "A:2", "At:2", "Atp:1", "T~:2", "T:1,2",
    "Tinf", "Abar:1,2", "S:W", "S:W-1", "S:Vir", "Sg:2", "SS:3", "SS:inf", "SS:3~", "TyS:2", "TyS:inf~",
]  # fmt: skip

SAMPLES = [
    ("W", "e[-2]^2*e[3] - 1/2*e[0]"),
    ("Vir", "z*e[1]+e[-1]"),
    ("g:2,3", "v(0,1)*v(1,2)"),
    ("A:2", "d0*s0 + s1^2"),
    ("At:2", "t0^-1*dt0"),
    ("T~:2", "t^-2*d*v(0,1)"),
    ("S:W", "e[1]*e[2]"),
    ("SS:3~", "t^-1*y3"),
    ("W@2", "e[0]@1 * e[1]@0"),
]


@pytest.mark.parametrize("name", NAMES)
def test_algebra_names_round_trip(name):
    assert algebra_name(algebra_from_name(name)) == name


@pytest.mark.parametrize("name, text", SAMPLES)
def test_text_and_json_round_trip(name, text):
    e = parse_element(text, name)
    assert parse_element(str(e), name) == e
    assert element_from_json(json.loads(json.dumps(element_to_json(e)))) == e


def test_parse_semantics():
    U = enveloping_witt(W)
    assert parse_element("e[1]*e[0]", "W") == U.gen(("e", 0)) * U.gen(("e", 1)) - U.gen(("e", 1))
    assert parse_element("d0*s0", "A:1") == parse_element("s0*d0", "A:1") + parse_element("1", "A:1")
    assert parse_element("3/4", "W") == U.scalar(Fraction(3, 4))


def test_witt_text():
    w = parse_witt("(t^2) d + 3 z", VIR)
    assert w == WittElement(LaurentPoly.monomial(2), 3, VIR)
    assert format_witt(parse_witt("(t^2) d", W)) == "(t^2) d"
    assert witt_from_json(witt_to_json(w)) == w


def test_localfn_text():
    chi = parse_localfn("1:0,0,1;2:1,3")
    assert chi == LocalFunction(W, [(1, [0, 0, 1]), (2, [1, 3])])


@pytest.mark.parametrize("text", ["e[", "e[1] +", "q[2]", "e[1]^", "e[1] ** e[2]"])
def test_malformed_text_raises(text):
    with pytest.raises(ParseError):
        parse_element(text, "W")


def test_unknown_algebra_raises():
    with pytest.raises(ParseError):
        algebra_from_name("Q")


vec_keys = st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool)


@given(st.dictionaries(vec_keys, coeffs, max_size=4))
def test_vector_json_round_trip(vec):
    assert vector_from_json(json.loads(json.dumps(vector_to_json(vec)))) == vec


@given(st.lists(st.tuples(st.lists(st.integers(-3, 3), max_size=3), coeffs), max_size=3))
def test_random_elements_round_trip(terms):
    U = enveloping_witt(W)
    e = U.element()
    for word, c in terms:
        t = U.unit()
        for i in word:
            t = t * U.gen(("e", i))
        e = e + t.scale(c)
    assert parse_element(str(e), "W") == e
    assert element_from_json(element_to_json(e)) == e
