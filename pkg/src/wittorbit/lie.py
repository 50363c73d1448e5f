"""Witt, W>=-1 and Virasoro elements, the solvable quotients g_n, and point-local coordinates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .foundations import (
    DuplicatePoint,
    EvalAtPole,
    LaurentPoly,
    Q,
    SizeMismatch,
    VariantMismatch,
    format_poly,
    format_scalar,
)

W = "W"
W_GE_MINUS1 = "W-1"
VIR = "Vir"
VARIANTS = (W, W_GE_MINUS1, VIR)


def check_variant(variant: str) -> str:
    if variant not in VARIANTS:
        raise VariantMismatch(f"unknown variant {variant!r}")
    return variant


class WittElement:
    """f(t) d + c z.  ``central`` is forced to 0 outside Vir."""

    __slots__ = ("f", "central", "variant")

    def __init__(self, f: LaurentPoly, central=0, variant: str = W):
        check_variant(variant)
        central = Q(central)
        if variant != VIR and central:
            raise VariantMismatch(f"{variant} has no central element")
        if variant == W_GE_MINUS1 and not f.is_polynomial():
            raise VariantMismatch("W-1 elements have polynomial coefficients")
        self.f = f
        self.central = central
        self.variant = variant

    @classmethod
    def basis(cls, i: int, variant: str = W) -> "WittElement":
        """e_i = t^(i+1) d."""
        return cls(LaurentPoly.monomial(i + 1), 0, variant)

    @classmethod
    def z(cls) -> "WittElement":
        return cls(LaurentPoly(), 1, VIR)

    @classmethod
    def zero(cls, variant: str = W) -> "WittElement":
        return cls(LaurentPoly(), 0, variant)

    def _same(self, other: "WittElement"):
        if not isinstance(other, WittElement) or other.variant != self.variant:
            raise VariantMismatch("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        return WittElement(self.f + other.f, self.central + other.central, self.variant)

    def __sub__(self, other):
        self._same(other)
        return WittElement(self.f - other.f, self.central - other.central, self.variant)

    def __neg__(self):
        return WittElement(-self.f, -self.central, self.variant)

    def scale(self, c) -> "WittElement":
        c = Q(c)
        return WittElement(self.f * c, self.central * c, self.variant)

    def __rmul__(self, c):
        return self.scale(c)

    def times_poly(self, p: LaurentPoly) -> "WittElement":
        """p * f d (the central part must be zero)."""
        if self.central:
            raise VariantMismatch("cannot multiply z by a function")
        return WittElement(p * self.f, 0, self.variant)

    def is_zero(self) -> bool:
        return self.f.is_zero() and not self.central

    def __eq__(self, other):
        return (
            isinstance(other, WittElement)
            and self.variant == other.variant
            and self.f == other.f
            and self.central == other.central
        )

    def __hash__(self):
        return hash((self.f, self.central, self.variant))

    def components(self) -> dict:
        """Coordinates in the basis e_i (plus 'z')."""
        out = {i - 1: c for i, c in self.f.items()}
        if self.central:
            out["z"] = self.central
        return out

    def __repr__(self):
        return f"WittElement({format_witt(self)}, {self.variant})"

    def to_json(self):
        return {"variant": self.variant, "f": self.f.to_json(), "z": str(self.central)}

    @classmethod
    def from_json(cls, data) -> "WittElement":
        return cls(LaurentPoly.from_json(data["f"]), Fraction(data.get("z", "0")), data["variant"])


def format_witt(w: WittElement) -> str:
    parts = []
    if not w.f.is_zero():
        parts.append(f"({format_poly(w.f)}) d")
    if w.central:
        parts.append(f"{format_scalar(w.central)} z")
    return " + ".join(parts) if parts else "0"


def vir_cocycle(f: LaurentPoly, g: LaurentPoly) -> Fraction:
    """Res_0(f' g'' - f'' g')."""
    f1, g1 = f.derivative(), g.derivative()
    return (f1 * g1.derivative() - f1.derivative() * g1).residue()


def witt_bracket(a: WittElement, b: WittElement) -> WittElement:
    a._same(b)
    f, g = a.f, b.f
    h = f * g.derivative() - f.derivative() * g
    c = vir_cocycle(f, g) if a.variant == VIR else 0
    return WittElement(h, c, a.variant)


def vir_project(a: WittElement) -> WittElement:
    """The projection Vir -> W killing z."""
    if a.variant != VIR:
        raise VariantMismatch("projection is defined on Vir")
    return WittElement(a.f, 0, W)


def basis_bracket(i: int, j: int, variant: str = W) -> dict:
    """[e_i, e_j] as a dict over indices, with key 'z' for the central part."""
    out = {}
    if i != j:
        out[i + j] = Fraction(j - i)
    if variant == VIR and i + j == 0 and i:
        out["z"] = Fraction(2 * (i ** 3 - i))
    return out


@dataclass(frozen=True)
class GnElement:
    """Element of g_n = W>=0 / W>=n in the basis v_0..v_{n-1}."""

    n: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.n:
            raise SizeMismatch(f"g_{self.n} element needs {self.n} coordinates")
        object.__setattr__(self, "coeffs", tuple(Q(c) for c in self.coeffs))

    @classmethod
    def basis(cls, n: int, i: int) -> "GnElement":
        return cls(n, tuple(1 if k == i else 0 for k in range(n)))

    @classmethod
    def zero(cls, n: int) -> "GnElement":
        return cls(n, (0,) * n)

    def _same(self, other):
        if not isinstance(other, GnElement) or other.n != self.n:
            raise SizeMismatch("elements of different g_n")

    def __add__(self, other):
        self._same(other)
        return GnElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return GnElement(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "GnElement":
        c = Q(c)
        return GnElement(self.n, tuple(c * a for a in self.coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)


def gn_bracket(a: GnElement, b: GnElement) -> GnElement:
    a._same(b)
    n = a.n
    out = [Fraction(0)] * n
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if y and i + j < n and i != j:
                out[i + j] += (j - i) * x * y
    return GnElement(n, tuple(out))


@dataclass(frozen=True)
class GBoldElement:
    """Block direct sum g_n1 + ... + g_nl."""

    components: tuple

    @property
    def ns(self) -> tuple:
        return tuple(c.n for c in self.components)

    def _same(self, other):
        if not isinstance(other, GBoldElement) or other.ns != self.ns:
            raise SizeMismatch("block sizes differ")

    def __add__(self, other):
        self._same(other)
        return GBoldElement(tuple(a + b for a, b in zip(self.components, other.components)))

    def scale(self, c) -> "GBoldElement":
        return GBoldElement(tuple(a.scale(c) for a in self.components))


def gbold_bracket(a: GBoldElement, b: GBoldElement) -> GBoldElement:
    a._same(b)
    return GBoldElement(tuple(gn_bracket(x, y) for x, y in zip(a.components, b.components)))


@dataclass
class PointCoordinates:
    """Result of splitting w against the points (x_d, m_d).

    ``coeffs[d][j + 1]`` is the coefficient of the d-th quotient basis vector
    P_{d-1} (t - x_d)^(j+1) d for j = -1..m_d - 1, where P_{d-1} is the product
    of (t - x_e)^(m_e + 1) over the earlier points.  For a single point these
    are exactly the u_{j,x}.  The remainder lies in g(prod (t - x_d)^(m_d+1)).
    """

    points: tuple
    coeffs: list
    remainder: WittElement

    def cofactors(self) -> list:
        out, acc = [], LaurentPoly.const(1)
        for x, m in self.points:
            out.append(acc)
            acc = acc * LaurentPoly.t_minus(x, m + 1)
        return out


def quotient_basis(points: Sequence, variant: str = W) -> list:
    """The elements P_{d-1} (t - x_d)^(j+1) d, in (d, j) order."""
    out, acc = [], LaurentPoly.const(1)
    for x, m in points:
        for j in range(-1, m):
            out.append(WittElement(acc * LaurentPoly.t_minus(x, j + 1), 0, variant))
        acc = acc * LaurentPoly.t_minus(x, m + 1)
    return out


def coordinates_at_points(w: WittElement, points: Sequence) -> PointCoordinates:
    pts = tuple((Q(x), int(m)) for x, m in points)
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise DuplicatePoint("base points must be distinct")
    f = w.f
    for x in xs:
        if x == 0 and not f.is_polynomial():
            raise EvalAtPole("cannot split a Laurent coefficient at 0")
    coeffs = []
    for x, m in pts:
        c = f.taylor(x, m + 1)
        coeffs.append(c)
        for k, ck in enumerate(c):
            if ck:
                f = f - LaurentPoly.t_minus(x, k) * ck
        f = f.divide_power(x, m + 1)
    acc = LaurentPoly.const(1)
    for x, m in pts:
        acc = acc * LaurentPoly.t_minus(x, m + 1)
    rem = WittElement(acc * f, w.central, w.variant)
    return PointCoordinates(pts, coeffs, rem)


def reassemble(pc: PointCoordinates) -> WittElement:
    variant = pc.remainder.variant
    out = WittElement(pc.remainder.f, pc.remainder.central, variant)
    for (x, m), cof, cs in zip(pc.points, pc.cofactors(), pc.coeffs):
        for k, c in enumerate(cs):
            if c:
                out = out + WittElement(cof * LaurentPoly.t_minus(x, k) * c, 0, variant)
    return out
