"""Homomorphisms from Witt enveloping and symmetric algebras into Weyl-type targets.

Variants: ``"W-1_inf"`` (W>=-1, no truncation), ``"W-1_n"`` (W>=-1 truncated at n)
and ``"W_n"`` (all of W, localized target).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

from .foundations import LaurentPoly, SizeMismatch, VariantMismatch
from .lie import VIR, W
from .pbw import (
    Element,
    EnvelopingAlgebra,
    GBoldBasis,
    PoissonPolyAlgebra,
    TensorAlgebra,
    WeylAlgebra,
    WittBasis,
    apply_hom,
    dcoeff,
    enveloping_slots,
    s_algebra,
    t_infinity,
    tn_algebra,
    ty_tensor_s,
    weyl_plain,
    weyl_slots,
)

PHI_VARIANTS = ("W-1_inf", "W-1_n", "W_n")

__all__ = [
    "PHI_VARIANTS",
    "dcoeff",
    "phi_apply",
    "siso_convert",
    "psi_apply",
    "coproduct_power",
    "psi_multi_apply",
    "phiweyl_apply",
    "psibar_apply",
    "id_tensor_phiweyl",
    "truncate_gn",
    "psibar_target",
    "witt_to_env",
]


def witt_to_env(w, alg: EnvelopingAlgebra | None = None) -> Element:
    """A Lie element f d (+ c z) as a degree-one element of its enveloping algebra."""
    from .pbw import enveloping_witt

    if alg is None:
        alg = enveloping_witt(w.variant)
    terms = {((("e", i), 1),): c for i, c in w.components().items() if i != "z"}
    if w.central:
        terms[(((("z",), 1)),)] = w.central
    return Element(alg, terms)


def _check_variant(variant: str, n):
    if variant not in PHI_VARIANTS:
        raise VariantMismatch(f"unknown map variant {variant!r}")
    if variant != "W-1_inf" and (n is None or n < 0):
        raise VariantMismatch(f"{variant} needs a finite order n >= 0")


def _witt_index(g) -> int:
    if g == ("z",):
        raise VariantMismatch("these maps are defined on W and W>=-1, not Vir")
    return g[1]


def _source_check(u: Element, variant: str):
    alg = u.alg
    lie = getattr(alg, "lie", None)
    if isinstance(alg, EnvelopingAlgebra):
        if not isinstance(lie, WittBasis) or lie.variant == VIR:
            raise VariantMismatch(f"{alg} is not U(W) or U(W>=-1)")
    elif isinstance(alg, PoissonPolyAlgebra):
        if alg.descriptor[:2] not in (("P", "S"),) or alg.descriptor[2] == VIR:
            raise VariantMismatch(f"{alg} is not S(W) or S(W>=-1)")
    if variant.startswith("W-1"):
        for m in u.terms:
            for g, _ in m:
                if _witt_index(g) < -1:
                    raise VariantMismatch("W>=-1 maps need indices >= -1")


def _e_coeff(i: int) -> LaurentPoly:
    return LaurentPoly.monomial(i + 1)


# ---------------------------------------------------------------- Phi


def phi_apply(u: Element, variant: str = "W_n", n: int | None = None) -> Element:
    """Poisson map f d -> sum_{k=0}^{n} f^(k) y_k, extended multiplicatively."""
    _check_variant(variant, n)
    _source_check(u, variant)
    laurent = variant == "W_n"
    target = s_algebra(None if variant == "W-1_inf" else n, laurent)
    top = None if variant == "W-1_inf" else n

    def image(g):
        i = _witt_index(g)
        f = _e_coeff(i)
        out = target.element()
        k = 0
        while f and (top is None or k <= top):
            for e, c in f.items():
                out = out + target.gen(("t",), e) * target.gen(("y", k)) * c
            f = f.derivative()
            k += 1
        return out

    return apply_hom(u, image, target)


def siso_convert(u: Element, direction: str = "forward") -> Element:
    """Identify S (y-variables) with k[t, y_0] (x) S(g): y_{i+1} <-> e_i / (i+1)!.

    ``forward`` goes from the y-presentation to the e/v presentation.
    """
    desc = u.alg.descriptor
    if direction == "forward":
        if desc[:2] != ("P", "SS"):
            raise VariantMismatch(f"{u.alg} is not a y-presentation")
        n, laurent = desc[2], desc[3]
        target = ty_tensor_s(None if n is None else (n,), laurent)

        def image(g):
            if g in (("t",), ("y", 0)):
                return target.gen(g)
            k = g[1] - 1
            gen = ("e", k) if n is None else ("v", 0, k)
            return target.gen(gen) * Fraction(1, factorial(k + 1))
    elif direction == "backward":
        if desc[:2] != ("P", "TyS"):
            raise VariantMismatch(f"{u.alg} is not a k[t,y0] (x) S(g) presentation")
        ns, laurent = desc[2], desc[3]
        target = s_algebra(None if ns is None else ns[0], laurent)

        def image(g):
            if g in (("t",), ("y", 0)):
                return target.gen(g)
            k = g[1] if g[0] == "e" else g[2]
            return target.gen(("y", k + 1)) * factorial(k + 1)
    else:
        raise VariantMismatch(f"unknown direction {direction!r}")

    def power(g, e):
        return target.gen(g, e) if g == ("t",) else image(g) ** e

    out = target.element()
    for m, c in u.terms.items():
        term = target.scalar(c)
        for g, e in m:
            term = term * power(g, e)
        out = out + term
    return out


# ---------------------------------------------------------------- Psi


def _slot_image(target: TensorAlgebra, i: int, slot: int, n: int | None, block: int | None = None) -> Element:
    """Image of e_i in one slot: f(t) d + sum_k f^(k+1)(t)/(k+1)! v_k, f = t^(i+1)."""
    weyl = target.left
    f = _e_coeff(i)
    out = target.element()
    for e, c in f.items():
        out = out + target.gen((0, ("x", slot)), e) * target.gen((0, ("d", slot))) * c
    k = 0
    g = f.derivative()
    while g and (n is None or k < n):
        scale = Fraction(1, factorial(k + 1))
        gen = ("e", k) if block is None else ("v", block, k)
        for e, c in g.items():
            if e < 0 and not weyl.variables[slot][2]:
                raise VariantMismatch("negative powers of t need the localized target")
            out = out + target.gen((0, ("x", slot)), e) * target.gen((1, gen)) * (c * scale)
        g = g.derivative()
        k += 1
    return out


def psi_apply(u: Element, variant: str = "W_n", n: int | None = None) -> Element:
    """f d -> f(t) d + sum_{i=0}^{n-1} f^(i+1)(t)/(i+1)! v_i, extended multiplicatively."""
    _check_variant(variant, n)
    _source_check(u, variant)
    if variant == "W-1_inf":
        target = t_infinity()

        def image(g):
            return _slot_image(target, _witt_index(g), 0, None, None)
    else:
        target = tn_algebra((n,), variant == "W_n")

        def image(g):
            return _slot_image(target, _witt_index(g), 0, n, 0)

    return apply_hom(u, image, target)


def coproduct_power(u: Element, ell: int) -> Element:
    """Iterated coproduct: each Lie generator goes to the sum of its slot copies."""
    lie = u.alg.lie
    if not isinstance(lie, WittBasis):
        raise VariantMismatch("coproduct is implemented for Witt-type enveloping algebras")
    target = enveloping_slots(lie.variant, ell)

    def image(g):
        out = target.element()
        for s in range(ell):
            out = out + target.gen((s, g))
        return out

    return apply_hom(u, image, target)


def psi_multi_apply(ns: Sequence[int], u: Element, localized: bool | None = None, slots: Sequence[int] | None = None) -> Element:
    """(Psi_{n_1} (x) ... (x) Psi_{n_l}) o Delta^l, computed on generators directly.

    ``slots`` restricts the generator images to the listed tensor slots.
    """
    ns = tuple(int(n) for n in ns)
    if not ns or min(ns) < 0:
        raise SizeMismatch("order tuple must be nonempty and nonnegative")
    lie = u.alg.lie
    if lie.variant == VIR:
        raise VariantMismatch("project Vir elements to W first")
    if localized is None:
        localized = lie.variant == W
    target = tn_algebra(ns, localized)
    active = range(len(ns)) if slots is None else slots

    def image(g):
        out = target.element()
        for d in active:
            out = out + _slot_image(target, _witt_index(g), d, ns[d], d)
        return out

    return apply_hom(u, image, target)


def truncate_gn(u: Element, ns: Sequence[int]) -> Element:
    """(id (x) tau): kill v(b, i) with i >= ns[b] in a T-algebra element."""
    ns = tuple(ns)
    alg = u.alg
    target = tn_algebra(ns, alg.left.variables[0][2])
    out = {}
    for (wm, um), c in u.terms.items():
        if all(g[2] < ns[g[1]] for g, _ in um):
            out[(wm, um)] = c
    return Element(target, out)


# ---------------------------------------------------------------- Weyl embedding


def _weyl_names(ms: Sequence[int]) -> list:
    if len(ms) == 1:
        return [(f"s{j}", f"d{j}", False) for j in range(ms[0])]
    return [(f"s{d}_{j}", f"d{d}_{j}", False) for d, m in enumerate(ms) for j in range(m)]


def _phiweyl_gen(target: WeylAlgebra, m: int, j: int, offset: int) -> Element:
    if j >= m:
        return target.gen(("x", offset + j - m))
    out = target.element()
    for i in range(m - j):
        out = out + target.gen(("x", offset + i + j)) * target.gen(("d", offset + i)) * (m + i - j)
    return out


def phiweyl_apply(m: int, u: Element) -> Element:
    """v_{m+j} -> s_j and v_j -> sum_{i<m-j} (m+i-j) s_{i+j} d_i on U(g_{2m})."""
    lie = getattr(u.alg, "lie", None)
    if not isinstance(lie, GBoldBasis) or lie.ns != (2 * m,):
        raise SizeMismatch(f"phiweyl_{m} is defined on U(g_{2 * m})")
    target = weyl_plain(m)
    return apply_hom(u, lambda g: _phiweyl_gen(target, m, g[2], 0), target)


def psibar_target(ms: tuple) -> WeylAlgebra:
    return weyl_slots(len(ms), True, tuple(_weyl_names(ms)))


def id_tensor_phiweyl(ms: Sequence[int], w: Element) -> Element:
    """(id (x) phi_m) applied to an element of T~_{2m}, landing in A~_l (x) A_{sum m}."""
    ms = tuple(ms)
    ell = len(ms)
    target = psibar_target(ms)
    offsets = [ell + sum(ms[:d]) for d in range(ell)]
    out = target.element()
    for (wm, um), c in w.terms.items():
        left = Element(target, {tuple(wm) + ((0, 0),) * sum(ms): c})
        for g, e in um:
            _, b, j = g
            left = left * _phiweyl_gen(target, ms[b], j, offsets[b]) ** e
        out = out + left
    return out


def psibar_apply(ms: Sequence[int], u: Element, slots: Sequence[int] | None = None) -> Element:
    """Psi-bar_{2m}: Psi_{2m} followed by the Weyl embedding in each slot."""
    ms = tuple(int(m) for m in ms)
    if not ms or min(ms) < 1:
        raise SizeMismatch("psibar needs all m_d >= 1")
    lie = u.alg.lie
    if lie.variant == VIR:
        raise VariantMismatch("project Vir elements to W first")
    ell = len(ms)
    target = psibar_target(ms)
    offsets = [ell + sum(ms[:d]) for d in range(ell)]
    active = range(ell) if slots is None else slots

    def image(g):
        i = _witt_index(g)
        f = _e_coeff(i)
        out = target.element()
        for d in active:
            m = ms[d]
            for e, c in f.items():
                out = out + target.gen(("x", d), e) * target.gen(("d", d)) * c
            h = f.derivative()
            k = 0
            while h and k < 2 * m:
                gk = _phiweyl_gen(target, m, k, offsets[d]) * Fraction(1, factorial(k + 1))
                for e, c in h.items():
                    out = out + target.gen(("x", d), e) * gk * c
                h = h.derivative()
                k += 1
        return out

    return apply_hom(u, image, target)
