"""Normal-ordered arithmetic in enveloping, Weyl, tensor and Poisson polynomial algebras.

Every algebra works with hashable monomials and exposes ``mul_mono``; the
``Element`` class holds a sparse map monomial -> Fraction over one algebra.
Generators of enveloping and polynomial algebras are tuples and their Python
ordering is the PBW order, e.g. ('e', -1) < ('e', 3) < ('z',).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb
from typing import Callable, Iterable, Sequence

from .foundations import (
    AlgebraMismatch,
    NegativeExponent,
    NotPoisson,
    Q,
    falling,
    format_scalar,
)
from .lie import VIR, W, W_GE_MINUS1, basis_bracket


# ---------------------------------------------------------------- Lie bases


class LieBasis:
    """An ordered basis with a bracket oracle returning {generator: coeff}."""

    def bracket(self, a, b) -> dict:
        raise NotImplementedError

    def contains(self, g) -> bool:
        return True

    def format_gen(self, g) -> str:
        raise NotImplementedError

    def weight(self, g) -> int:
        """Grading degree used by the graded-slice computations."""
        return 0


class WittBasis(LieBasis):
    """Basis e_i (plus z for Vir); ``min_index`` restricts to W>=k."""

    def __init__(self, variant: str = W, min_index: int | None = None):
        self.variant = variant
        if min_index is None and variant == W_GE_MINUS1:
            min_index = -1
        self.min_index = min_index
        self.descriptor = ("witt", variant, min_index)

    def contains(self, g) -> bool:
        if g == ("z",):
            return self.variant == VIR
        return g[0] == "e" and (self.min_index is None or g[1] >= self.min_index)

    def bracket(self, a, b) -> dict:
        if a == ("z",) or b == ("z",):
            return {}
        out = {}
        for k, c in basis_bracket(a[1], b[1], self.variant).items():
            out[("z",) if k == "z" else ("e", k)] = c
        return out

    def format_gen(self, g) -> str:
        return "z" if g == ("z",) else f"e[{g[1]}]"

    def weight(self, g) -> int:
        return 0 if g == ("z",) else g[1]


class GBoldBasis(LieBasis):
    """Basis v(b, i) of g_n1 + ... + g_nl, with [v_i, v_j] = (j - i) v_{i+j} in each block."""

    def __init__(self, ns: Sequence[int]):
        self.ns = tuple(int(n) for n in ns)
        self.descriptor = ("gbold", self.ns)

    def contains(self, g) -> bool:
        return g[0] == "v" and 0 <= g[1] < len(self.ns) and 0 <= g[2] < self.ns[g[1]]

    def bracket(self, a, b) -> dict:
        if a[1] != b[1] or a[2] == b[2]:
            return {}
        k = a[2] + b[2]
        if k >= self.ns[a[1]]:
            return {}
        return {("v", a[1], k): Fraction(b[2] - a[2])}

    def format_gen(self, g) -> str:
        return f"v({g[1]},{g[2]})"

    def weight(self, g) -> int:
        return g[2]


class SlotSum(LieBasis):
    """Direct sum of l copies of one Lie algebra; U of it is the l-fold tensor power."""

    def __init__(self, inner: LieBasis, ell: int):
        self.inner = inner
        self.ell = ell
        self.descriptor = ("slots", inner.descriptor, ell)

    def contains(self, g) -> bool:
        return 0 <= g[0] < self.ell and self.inner.contains(g[1])

    def bracket(self, a, b) -> dict:
        if a[0] != b[0]:
            return {}
        return {(a[0], h): c for h, c in self.inner.bracket(a[1], b[1]).items()}

    def format_gen(self, g) -> str:
        return f"{self.inner.format_gen(g[1])}@{g[0]}"

    def weight(self, g) -> int:
        return self.inner.weight(g[1])


# ---------------------------------------------------------------- algebras


class Algebra:
    commutative = False
    descriptor: tuple = ()

    def one(self):
        raise NotImplementedError

    def mul_mono(self, m1, m2) -> dict:
        raise NotImplementedError

    def gen_mono(self, g, exp: int = 1):
        raise NotImplementedError

    def format_mono(self, m) -> str:
        raise NotImplementedError

    def filtration(self, m) -> int:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"{type(self).__name__}{self.descriptor[1:]}"

    # convenience constructors
    def element(self, terms=None) -> "Element":
        return Element(self, terms or {})

    def unit(self) -> "Element":
        return Element(self, {self.one(): Fraction(1)})

    def scalar(self, c) -> "Element":
        return Element(self, {self.one(): Q(c)})

    def gen(self, g, exp: int = 1) -> "Element":
        return Element(self, {self.gen_mono(g, exp): Fraction(1)})


def _acc(d: dict, k, v):
    s = d.get(k, 0) + v
    if s:
        d[k] = s
    else:
        d.pop(k, None)


class EnvelopingAlgebra(Algebra):
    """U(g) for an ordered basis; monomials are tuples of (generator, exponent)."""

    def __init__(self, lie: LieBasis):
        self.lie = lie
        self.descriptor = ("U", lie.descriptor)
        self._cache: dict = {}

    def one(self):
        return ()

    def gen_mono(self, g, exp: int = 1):
        if not self.lie.contains(g):
            raise AlgebraMismatch(f"{g!r} is not a generator of {self}")
        if exp < 0:
            raise NegativeExponent("enveloping algebras have no inverses")
        return ((g, exp),) if exp else ()

    def mul_gen(self, X: tuple, g) -> dict:
        """Normal form of X * g for a normal monomial X and generator g."""
        if not X:
            return {((g, 1),): Fraction(1)}
        last, e = X[-1]
        if g > last:
            return {X + ((g, 1),): Fraction(1)}
        if g == last:
            return {X[:-1] + ((g, e + 1),): Fraction(1)}
        key = (X, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        Y = X[:-1] + (((last, e - 1),) if e > 1 else ())
        out: dict = {}
        # last * g = g * last + [last, g]
        for mono, c in self.mul_gen(Y, g).items():
            for mono2, c2 in self.mul_gen(mono, last).items():
                _acc(out, mono2, c * c2)
        for h, cb in self.lie.bracket(last, g).items():
            for mono, c in self.mul_gen(Y, h).items():
                _acc(out, mono, cb * c)
        self._cache[key] = out
        return out

    def mul_mono(self, m1, m2) -> dict:
        cur = {m1: Fraction(1)}
        for g, e in m2:
            for _ in range(e):
                nxt: dict = {}
                for mono, c in cur.items():
                    for mono2, c2 in self.mul_gen(mono, g).items():
                        _acc(nxt, mono2, c * c2)
                cur = nxt
        return cur

    def format_mono(self, m) -> str:
        if not m:
            return "1"
        return " * ".join(
            self.lie.format_gen(g) + (f"^{e}" if e != 1 else "") for g, e in m
        )

    def filtration(self, m) -> int:
        return sum(e for _, e in m)

    def weight(self, m) -> int:
        return sum(self.lie.weight(g) * e for g, e in m)


class WeylAlgebra(Algebra):
    """Polynomial differential operators in variables x_k with derivations d_k.

    Monomials are tuples of (x-exponent, d-exponent) per variable, stored in
    x-before-d order.  Localized variables allow negative x-exponents.
    """

    def __init__(self, variables: Sequence[tuple]):
        # each variable: (position name, derivative name, localized flag)
        self.variables = tuple((str(a), str(b), bool(c)) for a, b, c in variables)
        self.descriptor = ("A", self.variables)
        self.n = len(self.variables)

    def one(self):
        return ((0, 0),) * self.n

    def gen_mono(self, g, exp: int = 1):
        kind, k = g
        if exp < 0 and (kind != "x" or not self.variables[k][2]):
            raise NegativeExponent("negative powers exist only for localized positions")
        m = [(0, 0)] * self.n
        m[k] = (exp, 0) if kind == "x" else (0, exp)
        return tuple(m)

    @staticmethod
    def _pair(a, b, c, d) -> list:
        # x^a d^b * x^c d^d = sum_k C(b,k) (c)_k x^(a+c-k) d^(b+d-k)
        out = []
        for k in range(b + 1):
            f = falling(c, k)
            if f:
                out.append(((a + c - k, b + d - k), comb(b, k) * f))
        return out

    def mul_mono(self, m1, m2) -> dict:
        factors = [self._pair(a, b, c, d) for (a, b), (c, d) in zip(m1, m2)]
        out: dict = {}
        for combo in product(*factors):
            coeff = 1
            for _, c in combo:
                coeff *= c
            _acc(out, tuple(p for p, _ in combo), Fraction(coeff))
        return out

    def format_mono(self, m) -> str:
        parts = []
        for (a, b), (xn, dn, _) in zip(m, self.variables):
            if a:
                parts.append(xn + (f"^{a}" if a != 1 else ""))
        for (a, b), (xn, dn, _) in zip(m, self.variables):
            if b:
                parts.append(dn + (f"^{b}" if b != 1 else ""))
        return " * ".join(parts) if parts else "1"

    def filtration(self, m) -> int:
        return sum(b for _, b in m)

    def weight(self, m) -> int:
        return sum(a - b for a, b in m)


class TensorAlgebra(Algebra):
    """A (x) B with the two factors commuting; monomials are pairs."""

    def __init__(self, left: Algebra, right: Algebra):
        self.left = left
        self.right = right
        self.descriptor = ("T", left.descriptor, right.descriptor)

    def one(self):
        return (self.left.one(), self.right.one())

    def gen_mono(self, g, exp: int = 1):
        side, inner = g
        if side == 0:
            return (self.left.gen_mono(inner, exp), self.right.one())
        return (self.left.one(), self.right.gen_mono(inner, exp))

    def mul_mono(self, m1, m2) -> dict:
        a = self.left.mul_mono(m1[0], m2[0])
        b = self.right.mul_mono(m1[1], m2[1])
        out = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                out[(ma, mb)] = ca * cb
        return out

    def format_mono(self, m) -> str:
        a = self.left.format_mono(m[0])
        b = self.right.format_mono(m[1])
        if a == "1":
            return b
        if b == "1":
            return a
        return f"{a} * {b}"

    def filtration(self, m) -> int:
        return self.left.filtration(m[0]) + self.right.filtration(m[1])

    def weight(self, m) -> int:
        return self.left.weight(m[0]) + self.right.weight(m[1])


class PoissonPolyAlgebra(Algebra):
    """Commutative polynomial algebra on tuple generators with a Poisson bracket.

    ``gen_bracket(g, h)`` returns {monomial: coeff} for {g, h}; ``None`` means
    the algebra carries no Poisson structure.  ``localized`` is a predicate for
    generators allowed negative exponents.
    """

    commutative = True

    def __init__(self, descriptor, gen_bracket, formatter, localized=lambda g: False, contains=lambda g: True):
        self.descriptor = ("P",) + tuple(descriptor)
        self._bracket = gen_bracket
        self._fmt = formatter
        self._localized = localized
        self._contains = contains

    def one(self):
        return ()

    def gen_mono(self, g, exp: int = 1):
        if not self._contains(g):
            raise AlgebraMismatch(f"{g!r} is not a generator of {self}")
        if exp < 0 and not self._localized(g):
            raise NegativeExponent(f"generator {g!r} is not invertible")
        return ((g, exp),) if exp else ()

    def mul_mono(self, m1, m2) -> dict:
        d = dict(m1)
        for g, e in m2:
            s = d.get(g, 0) + e
            if s:
                d[g] = s
            else:
                d.pop(g)
        return {tuple(sorted(d.items())): Fraction(1)}

    def format_mono(self, m) -> str:
        if not m:
            return "1"
        return " * ".join(self._fmt(g) + (f"^{e}" if e != 1 else "") for g, e in m)

    def filtration(self, m) -> int:
        return sum(e for _, e in m)

    def gen_poisson(self, g, h) -> dict:
        if self._bracket is None:
            raise NotPoisson(f"{self} has no Poisson structure")
        return self._bracket(g, h)


# ---------------------------------------------------------------- elements


class Element:
    """Finite rational combination of normal monomials of one algebra."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Algebra, terms: dict):
        self.alg = alg
        self.terms = {m: Q(c) for m, c in terms.items() if c}

    @classmethod
    def _raw(cls, alg, terms):
        e = cls.__new__(cls)
        e.alg = alg
        e.terms = terms
        return e

    def _check(self, other: "Element"):
        if self.alg != other.alg:
            raise AlgebraMismatch(f"{self.alg} vs {other.alg}")

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.alg.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            _acc(out, m, c)
        return Element._raw(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        c = Q(c)
        if not c:
            return Element._raw(self.alg, {})
        return Element._raw(self.alg, {m: v * c for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out: dict = {}
        mul = self.alg.mul_mono
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c = c1 * c2
                for m, c3 in mul(m1, m2).items():
                    _acc(out, m, c * c3)
        return Element._raw(self.alg, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = self.alg.unit()
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.alg.scalar(other)
        if not isinstance(other, Element):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash((self.alg, frozenset(self.terms.items())))

    def commutator(self, other: "Element") -> "Element":
        return self * other - other * self

    def filtration_degree(self) -> int:
        return max((self.alg.filtration(m) for m in self.terms), default=-1)

    def top_part(self) -> "Element":
        d = self.filtration_degree()
        return Element._raw(self.alg, {m: c for m, c in self.terms.items() if self.alg.filtration(m) == d})

    def weights(self) -> set:
        return {self.alg.weight(m) for m in self.terms}

    def __repr__(self):
        return format_element(self)

    def to_json(self):
        from .parser import element_to_json

        return element_to_json(self)


def format_q_str(c: Fraction) -> str:
    return f"{c.numerator}/{c.denominator}"


def _mono_sort_key(m):
    return repr(m)


def sorted_terms(e: Element):
    return sorted(e.terms.items(), key=lambda mc: (e.alg.filtration(mc[0]), _mono_sort_key(mc[0])))


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    parts = []
    for m, c in sorted_terms(e):
        ms = e.alg.format_mono(m)
        if ms == "1":
            s = format_scalar(c)
        elif c == 1:
            s = ms
        elif c == -1:
            s = "-" + ms
        else:
            cs = format_scalar(c)
            s = f"({cs}) * {ms}" if "/" in cs else f"{cs} * {ms}"
        parts.append(s)
    out = parts[0]
    for s in parts[1:]:
        out += " - " + s[1:] if s.startswith("-") else " + " + s
    return out


# ---------------------------------------------------------------- operations


def normal_order(alg: Algebra, word: Iterable[tuple]) -> Element:
    """Multiply out a word of (generator, exponent) pairs into normal form."""
    out = alg.unit()
    for g, e in word:
        out = out * Element(alg, {alg.gen_mono(g, e): 1})
    return out


def multiply(a: Element, b: Element) -> Element:
    return a * b


def poisson_bracket(a: Element, b: Element) -> Element:
    """Leibniz extension of the generator bracket."""
    a._check(b)
    alg = a.alg
    if not isinstance(alg, PoissonPolyAlgebra):
        raise NotPoisson(f"{alg} is not a Poisson algebra")
    out: dict = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            for i, (g, eg) in enumerate(m1):
                rest1 = m1[:i] + (((g, eg - 1),) if eg != 1 else ()) + m1[i + 1:]
                for j, (h, eh) in enumerate(m2):
                    br = alg.gen_poisson(g, h)
                    if not br:
                        continue
                    rest2 = m2[:j] + (((h, eh - 1),) if eh != 1 else ()) + m2[j + 1:]
                    base = c1 * c2 * eg * eh
                    (r12, _), = alg.mul_mono(rest1, rest2).items()
                    for mb, cb in br.items():
                        (m, _), = alg.mul_mono(r12, mb).items()
                        _acc(out, m, base * cb)
    return Element._raw(alg, out)


def apply_hom(u: Element, image: Callable, target: Algebra, gen_of=None) -> Element:
    """Extend a map on generators multiplicatively and linearly.

    ``gen_of(mono)`` lists (generator, exponent) factors of a monomial in
    multiplication order; by default monomials are such lists already.
    """
    cache: dict = {}

    def power(g, e):
        key = (g, e)
        if key not in cache:
            cache[key] = image(g) if e == 1 else power(g, e - 1) * image(g) if e > 0 else _inv(image, g, e)
        return cache[key]

    out = target.element()
    for m, c in u.terms.items():
        term = target.scalar(c)
        for g, e in (gen_of(m) if gen_of else m):
            term = term * power(g, e)
        out = out + term
    return out


def _inv(image, g, e):
    raise NegativeExponent("cannot map a negative power through a homomorphism")


# ---------------------------------------------------------------- standard algebras


@lru_cache(maxsize=None)
def enveloping_witt(variant: str = W, min_index: int | None = None) -> EnvelopingAlgebra:
    return EnvelopingAlgebra(WittBasis(variant, min_index))


@lru_cache(maxsize=None)
def enveloping_gbold(ns: tuple) -> EnvelopingAlgebra:
    return EnvelopingAlgebra(GBoldBasis(ns))


@lru_cache(maxsize=None)
def enveloping_slots(variant: str, ell: int) -> EnvelopingAlgebra:
    return EnvelopingAlgebra(SlotSum(WittBasis(variant), ell))


def _slot_names(ell: int, k: int):
    if ell == 1:
        return ("t", "d")
    return (f"t{k}", f"dt{k}")


@lru_cache(maxsize=None)
def weyl_slots(ell: int, localized: bool = True, extra: tuple = ()) -> WeylAlgebra:
    """Variables t_k, d_k for k < ell followed by extra variables (names, localized)."""
    vs = [(*_slot_names(ell, k), localized) for k in range(ell)] + list(extra)
    return WeylAlgebra(vs)


@lru_cache(maxsize=None)
def weyl_plain(m: int, localized: bool = False) -> WeylAlgebra:
    """A_m (or its localization) with variables s_k, d_k."""
    return WeylAlgebra([(f"s{k}", f"d{k}", localized) for k in range(m)])


@lru_cache(maxsize=None)
def tn_algebra(ns: tuple, localized: bool = True) -> TensorAlgebra:
    """T_n (localized: T~_n) = (t, d per slot) (x) U(g_n1 + ... + g_nl)."""
    return TensorAlgebra(weyl_slots(len(ns), localized), enveloping_gbold(tuple(ns)))


@lru_cache(maxsize=None)
def t_infinity() -> TensorAlgebra:
    """A_1 (x) U(W>=0), the codomain of the W>=-1 master map."""
    return TensorAlgebra(weyl_slots(1, False), enveloping_witt(W, 0))


def _witt_fmt(g):
    return "z" if g == ("z",) else f"e[{g[1]}]"


def _witt_contains(variant, min_index=None):
    basis = WittBasis(variant, min_index)
    return basis.contains


@lru_cache(maxsize=None)
def symmetric_witt(variant: str = W) -> PoissonPolyAlgebra:
    """S(W), S(W>=-1) or S(Vir) with the Kostant-Kirillov bracket."""
    basis = WittBasis(variant)

    def br(g, h):
        return {((k, 1),): c for k, c in basis.bracket(g, h).items()}

    return PoissonPolyAlgebra(("S", variant), br, _witt_fmt, contains=basis.contains)


@lru_cache(maxsize=None)
def symmetric_gbold(ns: tuple) -> PoissonPolyAlgebra:
    basis = GBoldBasis(ns)

    def br(g, h):
        return {((k, 1),): c for k, c in basis.bracket(g, h).items()}

    return PoissonPolyAlgebra(("Sg", ns), br, basis.format_gen, contains=basis.contains)


def dcoeff(i: int, j: int) -> Fraction:
    """(1/i!)(j - i) prod_{k=1}^{i-1} (j + k), i.e. (j - i)(j + i - 1)!/(i! j!)."""
    if i == j:
        return Fraction(0)
    if i == 0:
        return Fraction(1)
    if j == 0:
        return Fraction(-1)
    num = j - i
    for k in range(1, i):
        num *= j + k
    den = 1
    for k in range(2, i + 1):
        den *= k
    return Fraction(num, den)


def _s_fmt(g):
    if g == ("t",):
        return "t"
    return f"y{g[1]}"


@lru_cache(maxsize=None)
def s_algebra(n: int | None, laurent: bool = False) -> PoissonPolyAlgebra:
    """The Poisson algebra k[t, y_0, y_1, ...] truncated to y_{<=n} (n=None: no truncation).

    {y_0, t} = 1, {y_i, y_j} = d_{i,j} y_{i+j-1} for i, j >= 1, all else 0.
    """

    def contains(g):
        if g == ("t",):
            return True
        return g[0] == "y" and g[1] >= 0 and (n is None or g[1] <= n)

    def br(g, h):
        if g == ("y", 0) and h == ("t",):
            return {(): Fraction(1)}
        if h == ("y", 0) and g == ("t",):
            return {(): Fraction(-1)}
        if g[0] == "y" and h[0] == "y" and g[1] >= 1 and h[1] >= 1:
            k = g[1] + h[1] - 1
            if n is not None and k > n:
                return {}
            c = dcoeff(g[1], h[1])
            return {((("y", k), 1),): c} if c else {}
        return {}

    return PoissonPolyAlgebra(("SS", n, laurent), br, _s_fmt, localized=lambda g: laurent and g == ("t",), contains=contains)


def _ty_fmt(inner_fmt):
    def fmt(g):
        if g == ("t",):
            return "t"
        if g == ("y", 0):
            return "y0"
        return inner_fmt(g)

    return fmt


@lru_cache(maxsize=None)
def ty_tensor_s(ns: tuple | None, laurent: bool = False) -> PoissonPolyAlgebra:
    """k[t, y_0] (x) S(g) with g = g_n (ns = (n,)) or W>=0 (ns = None).

    {y_0, t} = 1 and the Kostant-Kirillov bracket on g; the factors Poisson-commute.
    """
    inner = WittBasis(W, 0) if ns is None else GBoldBasis(ns)

    def contains(g):
        return g in (("t",), ("y", 0)) or inner.contains(g)

    def br(g, h):
        if g == ("y", 0) and h == ("t",):
            return {(): Fraction(1)}
        if h == ("y", 0) and g == ("t",):
            return {(): Fraction(-1)}
        if g in (("t",), ("y", 0)) or h in (("t",), ("y", 0)):
            return {}
        return {((k, 1),): c for k, c in inner.bracket(g, h).items()}

    return PoissonPolyAlgebra(
        ("TyS", ns, laurent), br, _ty_fmt(inner.format_gen if ns else _witt_fmt),
        localized=lambda g: laurent and g == ("t",), contains=contains,
    )


def associated_graded_symbol(u: Element, target: PoissonPolyAlgebra | None = None, rename=None) -> Element:
    """Top filtration part, read commutatively.

    Enveloping generators keep their names.  Weyl variables map x_k to
    ``rename(('x', k))`` and d_k to ``rename(('d', k))``; the default renames a
    single slot to t and y_0, matching k[t, y_0] (x) S(g).
    """
    alg = u.alg
    top = u.top_part()
    if rename is None:
        def rename(g):
            return ("t",) if g[0] == "x" else ("y", 0)

    def mono_gens(m, a):
        if isinstance(a, EnvelopingAlgebra):
            return list(m)
        if isinstance(a, WeylAlgebra):
            out = []
            for k, (x, d) in enumerate(m):
                if x:
                    out.append((rename(("x", k)), x))
                if d:
                    out.append((rename(("d", k)), d))
            return out
        if isinstance(a, TensorAlgebra):
            return mono_gens(m[0], a.left) + mono_gens(m[1], a.right)
        if isinstance(a, PoissonPolyAlgebra):
            return list(m)
        raise AlgebraMismatch(f"no symbol map for {a}")

    if target is None:
        target = _default_symbol_target(alg)
    out: dict = {}
    for m, c in top.terms.items():
        d: dict = {}
        for g, e in mono_gens(m, alg):
            d[g] = d.get(g, 0) + e
        _acc(out, tuple(sorted((g, e) for g, e in d.items() if e)), c)
    return Element(target, out)


def _default_symbol_target(alg: Algebra) -> PoissonPolyAlgebra:
    if isinstance(alg, EnvelopingAlgebra):
        lie = alg.lie
        if isinstance(lie, WittBasis):
            if lie.min_index == 0 and lie.variant == W:
                return ty_tensor_s(None)
            return symmetric_witt(lie.variant)
        if isinstance(lie, GBoldBasis):
            return symmetric_gbold(lie.ns)
    if isinstance(alg, TensorAlgebra) and isinstance(alg.left, WeylAlgebra) and alg.left.n == 1:
        right = alg.right
        localized = alg.left.variables[0][2]
        if isinstance(right.lie, GBoldBasis) and len(right.lie.ns) == 1:
            return ty_tensor_s(right.lie.ns, localized)
        if isinstance(right.lie, WittBasis):
            return ty_tensor_s(None, localized)
    raise AlgebraMismatch(f"no default symmetric algebra for {alg}")
