"""Text and JSON front end: algebra names, expression parsing and round-tripping.

Algebra names (the ``--algebra`` flag and the ``algebra`` field of JSON):

    W, W-1, Vir          U(W), U(W>=-1), U(Vir)
    W>=k                 U(W>=k)
    W@l, Vir@l, W-1@l    U of l slot copies (targets of the coproduct)
    g:n1,n2,...          U(g_n1 + ... + g_nl)
    A:m                  Weyl algebra in s0..s{m-1}, d0..d{m-1}
    At:l / Atp:l         l slots of t, d with t inverted / not inverted
    T~:n1,... / T:n1,... (t, d per slot) (x) U(g_n1 + ...)
    Tinf                 A_1 (x) U(W>=0)
    Abar:m1,...          target of the psi-bar maps
    S:W, S:W-1, S:Vir    symmetric algebras with the Kostant-Kirillov bracket
    Sg:n1,...            S(g_n1 + ...)
    SS:n, SS:inf         k[t, y_0, y_1, ...] truncated at y_n; a trailing ~ inverts t
    TyS:n, TyS:inf       k[t, y_0] (x) S(g_n) or S(W>=0); a trailing ~ inverts t
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .foundations import LaurentPoly, ParseError, Q
from .lie import VIR, W, W_GE_MINUS1, WittElement
from .pbw import (
    Algebra,
    Element,
    EnvelopingAlgebra,
    GBoldBasis,
    PoissonPolyAlgebra,
    SlotSum,
    TensorAlgebra,
    WeylAlgebra,
    WittBasis,
    enveloping_gbold,
    enveloping_slots,
    enveloping_witt,
    s_algebra,
    symmetric_gbold,
    symmetric_witt,
    t_infinity,
    tn_algebra,
    ty_tensor_s,
    weyl_plain,
    weyl_slots,
)

_VARIANTS = {"W": W, "W-1": W_GE_MINUS1, "Vir": VIR}


def _ints(text: str) -> tuple:
    try:
        out = tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ParseError(f"expected a comma-separated list of integers, got {text!r}") from exc
    if not out:
        raise ParseError("empty size list")
    return out


def algebra_from_name(name: str) -> Algebra:
    from .morphisms import psibar_target

    name = name.strip()
    if name in _VARIANTS:
        return enveloping_witt(_VARIANTS[name])
    if name.startswith("W>="):
        return enveloping_witt(W, int(name[3:]))
    if "@" in name:
        v, ell = name.split("@", 1)
        if v not in _VARIANTS:
            raise ParseError(f"unknown algebra {name!r}")
        return enveloping_slots(_VARIANTS[v], int(ell))
    if name == "Tinf":
        return t_infinity()
    head, _, rest = name.partition(":")
    laurent = rest.endswith("~")
    rest = rest.rstrip("~")
    try:
        if head == "g":
            return enveloping_gbold(_ints(rest))
        if head == "A":
            return weyl_plain(int(rest))
        if head == "At":
            return weyl_slots(int(rest), True)
        if head == "Atp":
            return weyl_slots(int(rest), False)
        if head == "T~":
            return tn_algebra(_ints(rest), True)
        if head == "T":
            return tn_algebra(_ints(rest), False)
        if head == "Abar":
            return psibar_target(_ints(rest))
        if head == "S" and rest in _VARIANTS:
            return symmetric_witt(_VARIANTS[rest])
        if head == "Sg":
            return symmetric_gbold(_ints(rest))
        if head == "SS":
            return s_algebra(None if rest == "inf" else int(rest), laurent)
        if head == "TyS":
            return ty_tensor_s(None if rest == "inf" else _ints(rest), laurent)
    except ValueError as exc:
        raise ParseError(f"bad algebra name {name!r}") from exc
    raise ParseError(f"unknown algebra {name!r}")


def _csv(ns) -> str:
    return ",".join(str(n) for n in ns)


def algebra_name(alg: Algebra) -> str:
    """Inverse of ``algebra_from_name``."""
    d = alg.descriptor
    rev = {v: k for k, v in _VARIANTS.items()}
    if isinstance(alg, EnvelopingAlgebra):
        lie = alg.lie
        if isinstance(lie, WittBasis):
            if lie.variant == W_GE_MINUS1 or lie.min_index is None:
                return rev[lie.variant]
            return f"W>={lie.min_index}"
        if isinstance(lie, GBoldBasis):
            return "g:" + _csv(lie.ns)
        if isinstance(lie, SlotSum):
            return f"{rev[lie.inner.variant]}@{lie.ell}"
    if isinstance(alg, TensorAlgebra):
        if alg == t_infinity():
            return "Tinf"
        ns = alg.right.lie.ns
        return ("T~:" if alg.left.variables[0][2] else "T:") + _csv(ns)
    if isinstance(alg, WeylAlgebra):
        for cand in _weyl_candidates(alg):
            if algebra_from_name(cand) == alg:
                return cand
    if isinstance(alg, PoissonPolyAlgebra):
        kind = d[1]
        if kind == "S":
            return "S:" + rev[d[2]]
        if kind == "Sg":
            return "Sg:" + _csv(d[2])
        if kind in ("SS", "TyS"):
            size = d[2]
            body = "inf" if size is None else (str(size) if kind == "SS" else _csv(size))
            return f"{kind}:{body}" + ("~" if d[3] else "")
    raise ParseError(f"no name for algebra {alg!r}")


def _weyl_candidates(alg: WeylAlgebra):
    vs = alg.variables
    yield f"A:{len(vs)}"
    yield f"At:{len(vs)}"
    yield f"Atp:{len(vs)}"
    slots = sum(1 for v in vs if v[2])
    rest = vs[slots:]
    if not slots:
        return
    if slots == 1:
        yield f"Abar:{len(rest)}"
        return
    counts = [0] * slots
    for x, _, _ in rest:
        m = re.fullmatch(r"s(\d+)_(\d+)", x)
        if m:
            counts[int(m.group(1))] += 1
    yield "Abar:" + _csv(counts)


# ---------------------------------------------------------------- tokenizer

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        num, name, sym = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        elif sym is not None and not sym.isspace():
            if sym not in "+-*/^()[],@":
                raise ParseError(f"unexpected character {sym!r}")
            out.append(("sym", sym))
    out.append(("end", None))
    return out


class _Parser:
    """Recursive descent over a ring interface (see the two ring classes)."""

    def __init__(self, text: str, ring):
        self.toks = _tokenize(text)
        self.i = 0
        self.ring = ring
        self.text = text

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, sym):
        t = self.take()
        if t != ("sym", sym):
            raise ParseError(f"expected {sym!r} in {self.text!r}")

    def signed_int(self) -> int:
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        t = self.take()
        if t[0] != "num":
            raise ParseError(f"expected an integer in {self.text!r}")
        return sign * t[1]

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            raise ParseError(f"trailing input in {self.text!r}")
        return v

    def expr(self):
        neg = False
        if self.peek() in (("sym", "-"), ("sym", "+")):
            neg = self.take() == ("sym", "-")
        v = self.term()
        if neg:
            v = self.ring.neg(v)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            w = self.term()
            v = self.ring.add(v, w if op == "+" else self.ring.neg(w))
        return v

    def _starts_factor(self):
        t = self.peek()
        return t[0] in ("num", "name") or t == ("sym", "(")

    def term(self):
        v = self.factor()
        while True:
            t = self.peek()
            if t == ("sym", "*"):
                self.take()
                v = self.ring.mul(v, self.factor())
            elif t == ("sym", "/"):
                self.take()
                v = self.ring.div(v, self.factor())
            elif self._starts_factor():
                v = self.ring.mul(v, self.factor())
            else:
                return v

    def factor(self):
        t = self.take()
        if t[0] == "num":
            atom, gen = self.ring.number(t[1]), None
        elif t == ("sym", "("):
            atom, gen = self.expr(), None
            self.expect(")")
        elif t[0] == "name":
            gen = self.generator(t[1])
            atom = None
        else:
            raise ParseError(f"unexpected token {t[1]!r} in {self.text!r}")
        exp = 1
        if self.peek() == ("sym", "^"):
            self.take()
            exp = self.signed_int()
        if gen is not None:
            return self.ring.gen(gen, exp)
        return self.ring.pow(atom, exp)

    def generator(self, name: str):
        idx = None
        if name == "e" and self.peek() == ("sym", "["):
            self.take()
            idx = (self.signed_int(),)
            self.expect("]")
        elif name == "v" and self.peek() == ("sym", "("):
            self.take()
            first = self.signed_int()
            if self.peek() == ("sym", ","):
                self.take()
                idx = (first, self.signed_int())
            else:
                idx = (0, first)
            self.expect(")")
        slot = None
        if self.peek() == ("sym", "@"):
            self.take()
            slot = self.signed_int()
        return name, idx, slot


# ---------------------------------------------------------------- element ring


def _inner_gen(name: str, idx):
    if name == "e" and idx is not None:
        return ("e", idx[0])
    if name == "v" and idx is not None:
        return ("v", idx[0], idx[1])
    if idx is not None:
        return None
    if name == "z":
        return ("z",)
    if name == "t":
        return ("t",)
    m = re.fullmatch(r"y(\d+)", name)
    if m:
        return ("y", int(m.group(1)))
    return None


def resolve_generator(alg: Algebra, name: str, idx=None, slot=None):
    """The internal generator of ``alg`` written as ``name``, or None."""
    if isinstance(alg, TensorAlgebra):
        for side, part in ((0, alg.left), (1, alg.right)):
            g = resolve_generator(part, name, idx, slot)
            if g is not None:
                return (side, g)
        return None
    if isinstance(alg, WeylAlgebra):
        if idx is not None or slot is not None:
            return None
        for k, (xn, dn, _) in enumerate(alg.variables):
            if name == xn:
                return ("x", k)
            if name == dn:
                return ("d", k)
        return None
    g = _inner_gen(name, idx)
    if g is None:
        return None
    if isinstance(alg, EnvelopingAlgebra):
        if isinstance(alg.lie, SlotSum):
            if slot is None:
                if alg.lie.ell != 1:
                    return None
                slot = 0
            g = (slot, g)
        elif slot is not None:
            return None
        return g if alg.lie.contains(g) else None
    if isinstance(alg, PoissonPolyAlgebra):
        return g if slot is None and alg._contains(g) else None
    return None


class _ElementRing:
    def __init__(self, alg: Algebra):
        self.alg = alg

    def number(self, n):
        return self.alg.scalar(n)

    def gen(self, spec, exp):
        name, idx, slot = spec
        g = resolve_generator(self.alg, name, idx, slot)
        if g is None:
            raise ParseError(f"{name}{'' if idx is None else list(idx)} is not a generator of {algebra_name(self.alg)}")
        return self.alg.gen(g, exp)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        c = _scalar_value(b)
        if c is None or c == 0:
            raise ParseError("division only by nonzero scalars")
        return a.scale(1 / c)

    def pow(self, a, exp):
        if exp < 0:
            c = _scalar_value(a)
            if c is None or c == 0:
                raise ParseError("negative powers only of generators and nonzero scalars")
            return self.alg.scalar(c**exp)
        return a**exp


def _scalar_value(e: Element):
    if not e.terms:
        return Fraction(0)
    one = e.alg.one()
    if set(e.terms) == {one}:
        return e.terms[one]
    return None


def parse_element(text: str, alg: Algebra | str) -> Element:
    if isinstance(alg, str):
        alg = algebra_from_name(alg)
    return _Parser(text, _ElementRing(alg)).parse()


# ---------------------------------------------------------------- Witt ring


class _WittRing:
    """Values (p, q, c) standing for p + q d + c z; only p may multiply."""

    @staticmethod
    def _pure(v):
        return not v[1] and not v[2]

    def number(self, n):
        return (LaurentPoly.const(n), LaurentPoly(), Fraction(0))

    def gen(self, spec, exp):
        name, idx, slot = spec
        if slot is not None:
            raise ParseError("slot markers are not allowed in Witt elements")
        if name == "t" and idx is None:
            return (LaurentPoly.monomial(exp), LaurentPoly(), Fraction(0))
        if exp != 1:
            raise ParseError(f"{name} cannot be raised to a power")
        if name == "d" and idx is None:
            return (LaurentPoly(), LaurentPoly.const(1), Fraction(0))
        if name == "z" and idx is None:
            return (LaurentPoly(), LaurentPoly(), Fraction(1))
        if name == "e" and idx is not None:
            return (LaurentPoly(), LaurentPoly.monomial(idx[0] + 1), Fraction(0))
        raise ParseError(f"unknown symbol {name!r} in a Witt element")

    def add(self, a, b):
        return (a[0] + b[0], a[1] + b[1], a[2] + b[2])

    def neg(self, a):
        return (-a[0], -a[1], -a[2])

    def mul(self, a, b):
        if not self._pure(a):
            a, b = b, a
        if not self._pure(a):
            raise ParseError("product of two vector fields")
        p = a[0]
        if b[2] and not (p.is_zero() or (p.max_exp() == 0 and p.min_exp() == 0)):
            raise ParseError("z can only be scaled by constants")
        c = p.coeff(0) * b[2] if b[2] else Fraction(0)
        return (p * b[0], p * b[1], c)

    def div(self, a, b):
        if not self._pure(b) or b[0].is_zero() or b[0].min_exp() != b[0].max_exp():
            raise ParseError("division only by nonzero monomials in t")
        e = b[0].min_exp()
        inv = LaurentPoly.monomial(-e, 1 / b[0].coeff(e))
        return self.mul((inv, LaurentPoly(), Fraction(0)), a)

    def pow(self, a, exp):
        if not self._pure(a):
            raise ParseError("powers of vector fields are undefined")
        p = a[0]
        if exp < 0:
            if p.is_zero() or p.min_exp() != p.max_exp():
                raise ParseError("negative powers only of monomials in t")
            e = p.min_exp()
            return (LaurentPoly.monomial(e * exp, p.coeff(e) ** exp), LaurentPoly(), Fraction(0))
        return (p**exp, LaurentPoly(), Fraction(0))


def parse_witt(text: str, variant: str = W) -> WittElement:
    """Parse "f(t) d + c z" (and e[i] shorthand) into a Witt element."""
    variant = _VARIANTS.get(variant, variant)
    p, q, c = _Parser(text, _WittRing()).parse()
    if not p.is_zero():
        raise ParseError(f"{text!r} has a term without d")
    if c and variant != VIR:
        raise ParseError("z exists only in Vir")
    return WittElement(q, c, variant)


# ---------------------------------------------------------------- JSON


def element_to_json(e: Element) -> dict:
    from .pbw import format_q_str, sorted_terms

    return {
        "algebra": algebra_name(e.alg),
        "terms": [[e.alg.format_mono(m), format_q_str(c)] for m, c in sorted_terms(e)],
    }


def element_from_json(data) -> Element:
    alg = algebra_from_name(data["algebra"])
    out = alg.element()
    for mono, c in data["terms"]:
        out = out + parse_element(mono, alg).scale(Q(c))
    return out


def witt_to_json(w: WittElement) -> dict:
    return w.to_json()


def witt_from_json(data) -> WittElement:
    return WittElement.from_json(data)


def vector_to_json(vec: dict) -> list:
    return [
        {"exponents": [list(b) for b in key], "coeff": f"{c.numerator}/{c.denominator}"}
        for key, c in sorted(vec.items())
    ]


def vector_from_json(data) -> dict:
    """Accepts the term list, or a bare exponent list [[k_-1, k_0, ...], ...] for a basis vector."""
    if isinstance(data, str):
        data = json.loads(data)
    if data and isinstance(data[0], list):
        return {tuple(tuple(int(k) for k in b) for b in data): Fraction(1)}
    out: dict = {}
    for item in data:
        key = tuple(tuple(int(k) for k in b) for b in item["exponents"])
        c = Q(item["coeff"])
        s = out.get(key, 0) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def parse_localfn(text: str, variant: str = W):
    """JSON object, or the compact form "x:a0,a1,...;x:a0,..."."""
    from .localfn import LocalFunction

    variant = _VARIANTS.get(variant, variant)
    text = text.strip()
    if text.startswith("{"):
        return LocalFunction.from_json(json.loads(text))
    pts = []
    for chunk in text.split(";"):
        if not chunk.strip():
            continue
        x, sep, rest = chunk.partition(":")
        if not sep:
            raise ParseError(f"expected x:a0,a1,... in {chunk!r}")
        pts.append((parse_rational(x), [parse_rational(a) for a in rest.split(",")]))
    if not pts:
        raise ParseError("no points given")
    return LocalFunction(variant, pts)


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def parse_rationals(text: str) -> list:
    text = text.strip()
    if text.startswith("["):
        return [Q(x) for x in json.loads(text)]
    return [parse_rational(x) for x in text.split(",") if x.strip()]
