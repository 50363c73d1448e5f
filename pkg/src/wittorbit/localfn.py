"""Local functions on W>=-1, W and Vir and the data derived from them.

A one-point datum (x, (a_0, ..., a_n)) is the functional f d -> sum_k a_k f^(k)(x).
Order-0 data (a_0,) are stored as (a_0, 0), i.e. with order 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .coadjoint import orbit_equal
from .foundations import (
    DomainError,
    DuplicatePoint,
    EvalAtPole,
    LaurentPoly,
    OrderTooSmall,
    Q,
    VariantMismatch,
    matrix_rank,
)
from .lie import VIR, W, W_GE_MINUS1, WittElement, check_variant, coordinates_at_points, witt_bracket


class NotASubalgebra(DomainError):
    pass


class NotIsotropic(DomainError):
    pass


class WrongCodimension(DomainError):
    pass


def _normalize_alphas(alphas: Sequence) -> tuple:
    a = [Q(v) for v in alphas]
    if not a:
        raise ValueError("a point needs at least one coefficient")
    while len(a) > 2 and a[-1] == 0:
        a.pop()
    if len(a) == 1:
        a.append(Fraction(0))
    return tuple(a)


@dataclass(frozen=True)
class LocalFunction:
    variant: str
    points: tuple  # ((x, alphas), ...)

    def __init__(self, variant: str, points: Sequence):
        check_variant(variant)
        pts = tuple((Q(x), _normalize_alphas(al)) for x, al in points)
        xs = [x for x, _ in pts]
        if len(set(xs)) != len(xs):
            raise DuplicatePoint("base points must be distinct")
        if variant != W_GE_MINUS1 and 0 in xs:
            raise EvalAtPole("W and Vir local functions need nonzero base points")
        object.__setattr__(self, "variant", variant)
        object.__setattr__(self, "points", pts)

    @classmethod
    def one_point(cls, x, alphas, variant: str = W) -> "LocalFunction":
        return cls(variant, [(x, alphas)])

    @property
    def orders(self) -> tuple:
        return tuple(len(a) - 1 for _, a in self.points)

    @property
    def ms(self) -> tuple:
        return tuple(n // 2 for n in self.orders)

    @property
    def xs(self) -> tuple:
        return tuple(x for x, _ in self.points)

    def components(self) -> list:
        return [LocalFunction(self.variant, [p]) for p in self.points]

    def restrict(self, variant: str) -> "LocalFunction":
        return LocalFunction(variant, self.points)

    def is_zero(self) -> bool:
        return all(not any(a) for _, a in self.points)

    def to_json(self):
        return {
            "variant": self.variant,
            "points": [{"x": str(x), "alphas": [str(a) for a in al]} for x, al in self.points],
        }

    @classmethod
    def from_json(cls, data) -> "LocalFunction":
        return cls(data["variant"], [(Fraction(p["x"]), [Fraction(a) for a in p["alphas"]]) for p in data["points"]])

    def __repr__(self):
        parts = []
        for x, al in self.points:
            parts.append(f"chi_{{{x};{','.join(str(a) for a in al)}}}")
        return " + ".join(parts) + f" on {self.variant}"


def evaluate(chi: LocalFunction, w: WittElement) -> Fraction:
    if chi.variant != w.variant:
        raise VariantMismatch(f"{chi.variant} functional on a {w.variant} element")
    total = Fraction(0)
    for x, al in chi.points:
        for k, a in enumerate(al):
            if a:
                total += a * factorial(k) * w.f.taylor_coefficient(x, k)
    return total


def order_and_support(chi: LocalFunction) -> tuple:
    ms = chi.ms
    return chi.orders, chi.xs, ms, sum(2 * m + 2 for m in ms)


def twist(chi: LocalFunction) -> LocalFunction:
    """Shift a_1 by -1/2 at every point of order <= 1."""
    pts = []
    for (x, al), m in zip(chi.points, chi.ms):
        if m == 0:
            al = (al[0], al[1] - Fraction(1, 2))
        pts.append((x, al))
    return LocalFunction(chi.variant, pts)


def twisted_alphas(chi: LocalFunction) -> list:
    """Per-point coefficient vectors of chi' (without renormalizing the order)."""
    out = []
    for (x, al), m in zip(chi.points, chi.ms):
        al = list(al)
        if m == 0:
            al[1] -= Fraction(1, 2)
        out.append(tuple(al))
    return out


def u_value(alphas: Sequence, j: int) -> Fraction:
    """A one-point functional with coefficients ``alphas`` on u_j = (t - x)^(j+1) d."""
    k = j + 1
    return alphas[k] * factorial(k) if 0 <= k < len(alphas) else Fraction(0)


def project_to_gn(chi: LocalFunction, nhat: Sequence[int] | None = None) -> list:
    """Blocks chi'_d(u_{i, x_d}) for i < nhat_d (zero past the order of chi_d)."""
    ns = chi.orders
    nhat = tuple(ns) if nhat is None else tuple(nhat)
    if len(nhat) != len(ns) or any(a < b for a, b in zip(nhat, ns)):
        raise OrderTooSmall(f"target order {nhat} is below the order {ns}")
    blocks = []
    for al, nh in zip(twisted_alphas(chi), nhat):
        blocks.append(tuple(u_value(al, i) for i in range(nh)))
    return blocks


def preimage_of_gn(blocks: Sequence[Sequence], xs: Sequence, variant: str = W, alpha0s: Sequence | None = None) -> LocalFunction:
    """A local function whose projection at the block sizes is ``blocks``."""
    pts = []
    for d, (block, x) in enumerate(zip(blocks, xs)):
        block = [Q(b) for b in block]
        top = max((i for i, b in enumerate(block) if b), default=0)
        n = max(top + 1, 1)
        a0 = Q(alpha0s[d]) if alpha0s else Fraction(0)
        al = [a0] + [block[i] / factorial(i + 1) for i in range(n)]
        if n == 1:
            al[1] += Fraction(1, 2)
        pts.append((x, al))
    return LocalFunction(variant, pts)


# ---------------------------------------------------------------- polarizations


@dataclass
class PolarizationSpec:
    """g(prod (t - x)^k) plus the span of ``extra`` (and z for Vir)."""

    modulus: list
    extra: list = field(default_factory=list)
    variant: str = W

    def modulus_poly(self) -> LaurentPoly:
        p = LaurentPoly.const(1)
        for x, k in self.modulus:
            p = p * LaurentPoly.t_minus(x, k)
        return p

    def degree(self) -> int:
        return sum(k for _, k in self.modulus)


def canonical_polarization(chi: LocalFunction) -> PolarizationSpec:
    return PolarizationSpec([(x, m + 1) for x, m in zip(chi.xs, chi.ms)], [], chi.variant)


def _taylor_vector(spec: PolarizationSpec, w: WittElement) -> list:
    pts = [(x, k - 1) for x, k in spec.modulus]
    pc = coordinates_at_points(w, pts)
    return [c for cs in pc.coeffs for c in cs]


def _window(spec: PolarizationSpec, width: int) -> list:
    F = spec.modulus_poly()
    lo = 0 if spec.variant == W_GE_MINUS1 else -width
    out = [WittElement(F * LaurentPoly.monomial(j), 0, spec.variant) for j in range(lo, width + 1)]
    return out + [WittElement(e.f, 0, spec.variant) for e in spec.extra]


def check_polarization(chi: LocalFunction, spec: PolarizationSpec, width: int | None = None) -> str | None:
    """None if ``spec`` passes, else the name of the first failed condition."""
    if width is None:
        width = spec.degree() + 4
    extra_rows = [_taylor_vector(spec, e) for e in spec.extra]
    rank_extra = matrix_rank(extra_rows) if extra_rows else 0
    span = _window(spec, width)

    def member(w: WittElement) -> bool:
        v = _taylor_vector(spec, w)
        if not any(v):
            return True
        return bool(extra_rows) and matrix_rank(extra_rows + [v]) == rank_extra

    for e in spec.extra:
        if not member(e):
            raise ValueError("extra generator outside the declared subspace")
    for i, a in enumerate(span):
        for b in span[i + 1 :]:
            if not member(witt_bracket(a, b) if a.variant != VIR else _drop_z(witt_bracket(a, b))):
                return NotASubalgebra.__name__
    for i, a in enumerate(span):
        for b in span[i + 1 :]:
            if evaluate(chi, _drop_z(witt_bracket(a, b))) != 0:
                return NotIsotropic.__name__
    codim = spec.degree() - rank_extra
    if codim != sum(m + 1 for m in chi.ms):
        return WrongCodimension.__name__
    return None


def _drop_z(w: WittElement) -> WittElement:
    return WittElement(w.f, 0, w.variant)


def is_polarization(chi: LocalFunction, spec: PolarizationSpec, width: int | None = None) -> bool:
    return check_polarization(chi, spec, width) is None


def in_polarization(chi: LocalFunction, w: WittElement) -> bool:
    """Membership in the canonical polarization (z always belongs for Vir)."""
    spec = canonical_polarization(chi)
    return not any(_taylor_vector(spec, _drop_z(w)))


# ---------------------------------------------------------------- pseudo-orbits


def pseudo_orbit_equal(chi: LocalFunction, eta: LocalFunction) -> bool:
    if chi.variant != eta.variant:
        raise VariantMismatch("local functions on different algebras")
    if sorted(chi.orders) != sorted(eta.orders):
        return False
    a = list(zip(chi.orders, project_to_gn(chi)))
    b = list(zip(eta.orders, project_to_gn(eta)))
    for perm in permutations(range(len(b))):
        if all(a[i][0] == b[j][0] and orbit_equal(a[i][1], b[j][1]) for i, j in enumerate(perm)):
            return True
    return False


def dixmier_descriptor(chi: LocalFunction) -> dict:
    """Data determining the annihilator of the canonical representation."""
    base = chi.restrict(W) if chi.variant == VIR else chi
    desc = {
        "variant": chi.variant,
        "orders": list(base.orders),
        "chibar": [list(b) for b in project_to_gn(base)],
        "totally_even": all(n % 2 == 0 for n in base.orders),
    }
    if chi.variant == VIR:
        desc["z"] = Fraction(0)
    return desc


def coadjoint_rank(chi: LocalFunction, width: int) -> int:
    """Rank of (e_i, e_j) -> chi([e_i, e_j]) over the window |i| <= width (i >= -1 on W>=-1)."""
    lo = -1 if chi.variant == W_GE_MINUS1 else -width
    basis = [WittElement.basis(i, chi.variant) for i in range(lo, width + 1)]
    rows = [[evaluate(chi, _drop_z(witt_bracket(a, b))) for b in basis] for a in basis]
    return matrix_rank(rows)
