"""Canonical local representations, their Weyl-side models and annihilator tests.

Vectors are dicts mapping exponent keys to Fractions.  For M'_chi a key is a
tuple with one block per base point; block d holds (k_-1, k_0, ..., k_{m_d-1}),
the exponents of u_{-1,x_d}^k_-1 u_{0,x_d}^k_0 ... applied to the generator.
A multi-point module is the tensor product of its one-point factors, with W
acting through the coproduct.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import comb, factorial
from typing import Iterable, Sequence

from .foundations import (
    LaurentPoly,
    NotInPolarization,
    NotTotallyEven,
    OrderTooSmall,
    Q,
    TwistObstruction,
    VariantMismatch,
    ZeroVector,
    falling,
    nullspace,
)
from .lie import (
    VIR,
    W,
    W_GE_MINUS1,
    GnElement,
    WittElement,
    coordinates_at_points,
    gn_bracket,
    quotient_basis,
    witt_bracket,
)
from .localfn import LocalFunction, twisted_alphas, u_value
from .morphisms import psi_multi_apply, psibar_apply, psibar_target, witt_to_env
from .pbw import Element, WittBasis, enveloping_witt, tn_algebra

if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)


def _add(out: dict, vec: dict, scale=1):
    for k, c in vec.items():
        s = out.get(k, 0) + c * scale
        if s:
            out[k] = s
        else:
            out.pop(k, None)


def _scaled(vec: dict, c) -> dict:
    return {k: v * c for k, v in vec.items()} if c else {}


# ---------------------------------------------------------------- generic engine


class InducedEngine:
    """U(g) (x)_{U(p)} k for g = span(u_0..u_{r-1}) + p with a character on p.

    Keys are exponent tuples of u_0^k_0 ... u_{r-1}^k_{r-1}.  ``decompose(x)``
    returns the complement coordinates and the p-part of a Lie element.
    """

    def __init__(self, r: int, decompose, bracket, char, basis):
        self.r = r
        self._decompose = decompose
        self._bracket = bracket
        self._char = char
        self._basis = [basis(b) for b in range(r)]
        self._dec: dict = {}
        self._u: dict = {}
        self._p: dict = {}

    def one(self) -> tuple:
        return (0,) * self.r

    def decompose(self, x):
        hit = self._dec.get(x)
        if hit is None:
            hit = self._decompose(x)
            self._dec[x] = hit
        return hit

    def act(self, x, vec: dict) -> dict:
        coeffs, p = self.decompose(x)
        out: dict = {}
        for k, c in vec.items():
            for b, cb in enumerate(coeffs):
                if cb:
                    _add(out, self.act_u(b, k), c * cb)
            if not p.is_zero():
                _add(out, self.act_p(p, k), c)
        return out

    def act_u(self, b: int, k: tuple) -> dict:
        a = next((i for i, e in enumerate(k) if e), None)
        if a is None or b <= a:
            return {k[:b] + (k[b] + 1,) + k[b + 1 :]: Fraction(1)}
        key = (b, k)
        hit = self._u.get(key)
        if hit is not None:
            return hit
        Y = k[:a] + (k[a] - 1,) + k[a + 1 :]
        out: dict = {}
        # u_b u_a Y = u_a (u_b Y) + [u_b, u_a] Y
        for k2, c in self.act_u(b, Y).items():
            _add(out, self.act_u(a, k2), c)
        _add(out, self.act(self._bracket(self._basis[b], self._basis[a]), {Y: Fraction(1)}))
        self._u[key] = out
        return out

    def act_p(self, r, k: tuple) -> dict:
        a = next((i for i, e in enumerate(k) if e), None)
        if a is None:
            c = self._char(r)
            return {k: c} if c else {}
        key = (r, k)
        hit = self._p.get(key)
        if hit is not None:
            return hit
        Y = k[:a] + (k[a] - 1,) + k[a + 1 :]
        out: dict = {}
        for k2, c in self.act_p(r, Y).items():
            _add(out, self.act_u(a, k2), c)
        _add(out, self.act(self._bracket(r, self._basis[a]), {Y: Fraction(1)}))
        self._p[key] = out
        return out


def _char_on(alphas: Sequence, x: Fraction, f: LaurentPoly) -> Fraction:
    total = Fraction(0)
    for k, a in enumerate(alphas):
        if a:
            total += a * factorial(k) * f.taylor_coefficient(x, k)
    return total


def witt_point_engine(x, m: int, alphas: Sequence) -> InducedEngine:
    """One-point module for u_j = (t - x)^(j+1) d, j = -1..m-1, character ``alphas`` on p."""
    x = Q(x)

    def decompose(w: WittElement):
        pc = coordinates_at_points(w, [(x, m)])
        return tuple(pc.coeffs[0]), pc.remainder

    def basis(b):
        return WittElement(LaurentPoly.t_minus(x, b), 0, W)

    return InducedEngine(m + 1, decompose, witt_bracket, lambda r: _char_on(alphas, x, r.f), basis)


def gn_quotient_engine(n: int, m: int, chars: Sequence) -> InducedEngine:
    """U(g_n)/U(g_n)(v_j - chars[j - m] : j >= m) with complement v_0..v_{m-1}."""
    chars = [Q(c) for c in chars]

    def decompose(g: GnElement):
        head = g.coeffs[:m]
        tail = GnElement(n, (0,) * m + g.coeffs[m:])
        return head, tail

    def char(g: GnElement):
        return sum((c * g.coeffs[m + i] for i, c in enumerate(chars)), Fraction(0))

    return InducedEngine(m, decompose, gn_bracket, char, lambda b: GnElement.basis(n, b))


def direct_engine(chi: LocalFunction) -> InducedEngine:
    """U(g) (x)_{U(p_chi)} k for the whole multi-point polarization at once.

    The complement is ``quotient_basis`` of the points; this is an
    independent model of M'_chi used to test the tensor decomposition.
    """
    base = chi.restrict(W) if chi.variant == VIR else chi
    pts = list(zip(base.xs, base.ms))
    alphas = twisted_alphas(base)
    basis = quotient_basis(pts, W)

    def decompose(w: WittElement):
        pc = coordinates_at_points(w, pts)
        return tuple(c for cs in pc.coeffs for c in cs), pc.remainder

    def char(r: WittElement):
        return sum((_char_on(al, x, r.f) for al, x in zip(alphas, base.xs)), Fraction(0))

    return InducedEngine(len(basis), decompose, witt_bracket, char, lambda b: basis[b])


# ---------------------------------------------------------------- M'_chi


@dataclass
class ModuleHandle:
    chi: LocalFunction
    xs: tuple
    orders: tuple
    ms: tuple
    alphas: list  # twisted coefficients per point
    engines: list

    @property
    def ell(self) -> int:
        return len(self.xs)

    def one(self) -> dict:
        return {tuple(e.one() for e in self.engines): Fraction(1)}

    def basis_vector(self, blocks: Sequence[Sequence[int]]) -> dict:
        key = tuple(tuple(int(k) for k in b) for b in blocks)
        for b, e in zip(key, self.engines):
            if len(b) != e.r or min(b, default=0) < 0:
                raise ValueError(f"exponent block {b} does not match the module")
        return {key: Fraction(1)}

    def presentation_scalars(self) -> list:
        """chi'(u_j) for j = m_d..2 m_d at each point."""
        return [[u_value(al, j) for j in range(m, 2 * m + 1)] for al, m in zip(self.alphas, self.ms)]


def module_create(chi: LocalFunction) -> ModuleHandle:
    if chi.is_zero():
        raise ZeroVector("the zero functional has no canonical representation")
    alphas = twisted_alphas(chi)
    engines = [witt_point_engine(x, m, al) for x, m, al in zip(chi.xs, chi.ms, alphas)]
    return ModuleHandle(chi, chi.xs, chi.orders, chi.ms, alphas, engines)


def _as_w(w: WittElement) -> WittElement:
    return WittElement(w.f, 0, W)


def act_witt(h: ModuleHandle, w: WittElement, vec: dict) -> dict:
    """Action of a Lie element (z acts by 0); factors receive it through the coproduct."""
    w = _as_w(w)
    if w.f.is_zero():
        return {}
    out: dict = {}
    for key, c in vec.items():
        for d, eng in enumerate(h.engines):
            part = eng.act(w, {key[d]: Fraction(1)})
            for k2, c2 in part.items():
                nk = key[:d] + (k2,) + key[d + 1 :]
                s = out.get(nk, 0) + c * c2
                if s:
                    out[nk] = s
                else:
                    out.pop(nk, None)
    return out


def _check_source(h: ModuleHandle, u: Element):
    lie = getattr(u.alg, "lie", None)
    if not isinstance(lie, WittBasis):
        raise VariantMismatch(f"{u.alg} is not an enveloping algebra of a Witt-type algebra")
    if h.chi.variant == W_GE_MINUS1 and lie.variant != W_GE_MINUS1:
        if any(g != ("z",) and g[1] < -1 for m in u.terms for g, _ in m):
            raise VariantMismatch("W>=-1 module acted on by negative-index elements")
    if (lie.variant == VIR) != (h.chi.variant == VIR):
        raise VariantMismatch(f"{lie.variant} element acting on a {h.chi.variant} module")


def module_act(h: ModuleHandle, u: Element, vec: dict) -> dict:
    """Action of an enveloping-algebra element; PBW monomials act rightmost factor first."""
    _check_source(h, u)
    out: dict = {}
    for mono, c in u.terms.items():
        cur = vec
        for g, e in reversed(mono):
            if g == ("z",):
                cur = {}
                break
            w = WittElement.basis(g[1], W)
            for _ in range(e):
                cur = act_witt(h, w, cur)
                if not cur:
                    break
        _add(out, cur, c)
    return out


# ---------------------------------------------------------------- rho and the xi/u~ machinery


def twist_rho(chi: LocalFunction, w: WittElement) -> Fraction:
    """Half the trace of ad(w) on g / p_chi, for w in the canonical polarization."""
    if w.variant == VIR and w.f.is_zero():
        return Fraction(0)
    w = _as_w(w)
    pts = list(zip(chi.xs, chi.ms))
    pc = coordinates_at_points(w, pts)
    if any(c for cs in pc.coeffs for c in cs):
        raise NotInPolarization("element is not in the canonical polarization")
    basis = quotient_basis(pts, W)
    trace = Fraction(0)
    idx = 0
    for b in basis:
        coords = coordinates_at_points(witt_bracket(w, b), pts).coeffs
        flat = [c for cs in coords for c in cs]
        trace += flat[idx]
        idx += 1
    return trace / 2


def u_tilde(q: LaurentPoly, j: int, x) -> WittElement:
    return WittElement(q * LaurentPoly.t_minus(x, j + 1), 0, W)


def a_value(h: ModuleHandle, d: int, q: LaurentPoly, i: int) -> Fraction:
    """a_{q,i} at point d: the scalar by which u~_{q, n-1-i} acts on the generator."""
    n = h.orders[d]
    w = u_tilde(q, n - 1 - i, h.xs[d])
    return _char_on(h.alphas[d], h.xs[d], w.f)


@dataclass
class Factor:
    """The affine operator v -> lie * v + const * v."""

    lie: WittElement
    const: Fraction

    def to_env(self, alg) -> Element:
        return witt_to_env(WittElement(self.lie.f, 0, alg.lie.variant), alg) + alg.scalar(self.const)


@dataclass
class Reduction:
    factors: list  # in application order (rightmost factor of Y first)
    c: Fraction
    variant: str

    def expand(self) -> Element:
        alg = enveloping_witt(self.variant)
        out = alg.unit()
        for f in self.factors:
            out = f.to_env(alg) * out
        return out


def apply_factors(h: ModuleHandle, factors: Iterable[Factor], vec: dict) -> dict:
    for f in factors:
        nxt = act_witt(h, f.lie, vec)
        _add(nxt, vec, f.const)
        vec = nxt
    return vec


def is_obstructed(h: ModuleHandle) -> bool:
    return any(m == 0 and al[1] == 0 for m, al in zip(h.ms, h.alphas))


def reduce_to_generator(h: ModuleHandle, vec: dict) -> Reduction:
    """An element Y with Y . vec = c 1_chi, c != 0, built from leading terms point by point."""
    if not vec:
        raise ZeroVector("cannot reduce the zero vector")
    if is_obstructed(h):
        raise TwistObstruction("a component has a_1 = 1/2 at order <= 1")
    one = next(iter(h.one()))
    if set(vec) == {one}:
        return Reduction([], vec[one], h.chi.variant)
    factors: list = []
    cur = vec
    for d in range(h.ell):
        lead = max(k[d] for k in cur)
        q = LaurentPoly.const(1)
        for e in range(h.ell):
            if e != d:
                K = max(k[e][0] for k in cur)
                q = q * LaurentPoly.t_minus(h.xs[e], h.orders[e] + 1 + K)
        n, m, x = h.orders[d], h.ms[d], h.xs[d]
        step = [Factor(u_tilde(q, n - 1 + lead[0], x), Fraction(0))]
        if m:
            a0 = a_value(h, d, q, 0)
            for i in range(m):
                ai = a_value(h, d, q, i)
                D = (2 * i - n + 1) * a0
                xi = Factor(u_tilde(q, n - 1 - i, x).scale(Fraction(1) / D), -ai / D)
                step.extend([xi] * lead[i + 1])
        cur = apply_factors(h, step, cur)
        factors.extend(step)
        if not cur:
            raise ArithmeticError("reduction produced zero; leading-term bookkeeping failed")
    if set(cur) != {one}:
        raise ArithmeticError("reduction did not reach a multiple of the generator")
    return Reduction(factors, cur[one], h.chi.variant)


# ---------------------------------------------------------------- L model


def _weyl_reduce(a: int, N: int, x: Fraction) -> dict:
    """t^a d^N . 1 in k[t^+-1, d] / (t - x): {j: coeff} meaning d^j . 1."""
    out = {}
    for r in range(N + 1):
        f = falling(a, r)
        if not f:
            continue
        if a - r < 0 and x == 0:
            raise ZeroDivisionError("negative power of t at x = 0")
        c = (-1) ** r * comb(N, r) * f * Q(x) ** (a - r)
        if c:
            out[N - r] = out.get(N - r, 0) + c
    return out


class LModel:
    """(x)_d (A~/A~(t - x_d)) (x) U(g_{nhat_d})/J'_d, the target of theta."""

    def __init__(self, chi: LocalFunction, nhat: Sequence[int] | None = None):
        base = chi.restrict(W) if chi.variant == VIR else chi
        self.chi = chi
        ns = base.orders
        nhat = tuple(ns) if nhat is None else tuple(int(n) for n in nhat)
        if len(nhat) != len(ns) or any(a < b for a, b in zip(nhat, ns)):
            raise OrderTooSmall(f"{nhat} is below the order {ns}")
        self.nhat = nhat
        self.xs = base.xs
        self.ms = base.ms
        self.algebra = tn_algebra(nhat, chi.variant != W_GE_MINUS1)
        self.engines = []
        self.chars = []
        for al, m, nh in zip(twisted_alphas(base), self.ms, nhat):
            chars = [u_value(al, j) for j in range(m, nh)]
            if m == 0 and chars:
                chars[0] += 1
            self.chars.append(chars)
            self.engines.append(gn_quotient_engine(nh, m, chars))

    def one(self) -> dict:
        return {tuple((0,) * (m + 1) for m in self.ms): Fraction(1)}

    def act(self, u: Element, vec: dict) -> dict:
        if u.alg != self.algebra:
            raise VariantMismatch(f"expected an element of {self.algebra}")
        out: dict = {}
        for (wm, um), c in u.terms.items():
            cur = vec
            for g, e in reversed(um):
                _, b, i = g
                gen = GnElement.basis(self.nhat[b], i)
                for _ in range(e):
                    cur = self._act_block(b, gen, cur)
            for d, (a, cexp) in enumerate(wm):
                if a or cexp:
                    cur = self._act_weyl(d, a, cexp, cur)
            _add(out, cur, c)
        return out

    def _act_block(self, b: int, gen: GnElement, vec: dict) -> dict:
        out: dict = {}
        eng = self.engines[b]
        for key, c in vec.items():
            blk = key[b]
            for k2, c2 in eng.act(gen, {blk[1:]: Fraction(1)}).items():
                _add(out, {key[:b] + ((blk[0],) + k2,) + key[b + 1 :]: c2}, c)
        return out

    def _act_weyl(self, d: int, a: int, cexp: int, vec: dict) -> dict:
        out: dict = {}
        x = self.xs[d]
        for key, c in vec.items():
            blk = key[d]
            for j, cj in _weyl_reduce(a, cexp + blk[0], x).items():
                _add(out, {key[:d] + ((j,) + blk[1:],) + key[d + 1 :]: cj}, c)
        return out

    def theta(self, vec: dict) -> dict:
        """u^k 1 -> d^k_-1 (v_0 - 1)^k_0 v_1^k_1 ... (the shift only when m >= 1)."""
        out: dict = {}
        for key, c in vec.items():
            terms = {(): Fraction(c)}
            for blk, m in zip(key, self.ms):
                opts = []
                if m >= 1:
                    k0 = blk[1]
                    for i in range(k0 + 1):
                        opts.append(((blk[0], i) + tuple(blk[2:]), Fraction(comb(k0, i) * (-1) ** (k0 - i))))
                else:
                    opts.append(((blk[0],), Fraction(1)))
                terms = {k + (b,): v * cb for k, v in terms.items() for b, cb in opts}
            _add(out, terms)
        return out


def lmodel_create_and_act(chi: LocalFunction, nhat: Sequence[int], u: Element, vec: dict) -> dict:
    return LModel(chi, nhat).act(u, vec)


def _to_module_source(chi: LocalFunction, w: WittElement) -> Element:
    return witt_to_env(_as_w(w), enveloping_witt(W))


def theta_check(chi: LocalFunction, nhat: Sequence[int] | None, samples: Iterable[tuple]) -> bool:
    """theta(w . v) == Psi_nhat(w) . theta(v) for each (w, v) sample."""
    h = module_create(chi)
    L = LModel(chi, nhat)
    for w, v in samples:
        lhs = L.theta(act_witt(h, w, v))
        wf = _as_w(w)
        if wf.f.is_zero():
            rhs = {}
        else:
            image = psi_multi_apply(L.nhat, _to_module_source(chi, wf), localized=L.algebra.left.variables[0][2])
            rhs = L.act(image, L.theta(v))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------- N model (totally even order)


class NModel:
    """A~_{l + sum m} / A~ I_chi, with t_d -> x_d and s_{d,j} -> chi(u_{m_d + j, x_d})."""

    def __init__(self, chi: LocalFunction):
        base = chi.restrict(W) if chi.variant == VIR else chi
        if any(n % 2 or n == 0 for n in base.orders):
            raise NotTotallyEven("the N model needs every order even and positive")
        self.chi = chi
        self.ms = tuple(n // 2 for n in base.orders)
        self.xs = base.xs
        self.algebra = psibar_target(self.ms)
        vals = list(self.xs)
        for (x, al), m in zip(base.points, self.ms):
            vals.extend(u_value(al, m + j) for j in range(m))
        self.values = vals
        self._theta: dict = {}
        self.handle = module_create(chi)

    def one(self) -> dict:
        return {(0,) * len(self.values): Fraction(1)}

    def act(self, u: Element, vec: dict) -> dict:
        if u.alg != self.algebra:
            raise VariantMismatch(f"expected an element of {self.algebra}")
        out: dict = {}
        for mono, c in u.terms.items():
            cur = vec
            for idx, (a, cexp) in enumerate(mono):
                if not (a or cexp):
                    continue
                nxt: dict = {}
                for key, cv in cur.items():
                    for j, cj in _weyl_reduce(a, cexp + key[idx], self.values[idx]).items():
                        _add(nxt, {key[:idx] + (j,) + key[idx + 1 :]: cj}, cv)
                cur = nxt
            _add(out, cur, c)
        return out

    def _point_image(self, d: int, j: int) -> Element:
        w = WittElement(LaurentPoly.t_minus(self.xs[d], j + 1), 0, W)
        return psibar_apply(self.ms, witt_to_env(w, enveloping_witt(W)), slots=[d])

    def theta(self, vec: dict) -> dict:
        out: dict = {}
        for key, c in vec.items():
            hit = self._theta.get(key)
            if hit is None:
                cur = self.one()
                for d in reversed(range(len(key))):
                    blk = key[d]
                    for b in reversed(range(len(blk))):
                        img = self._point_image(d, b - 1)
                        for _ in range(blk[b]):
                            cur = self.act(img, cur)
                hit = cur
                self._theta[key] = hit
            _add(out, hit, c)
        return out


def weyl_model_act(chi: LocalFunction, u: Element, vec: dict) -> dict:
    return NModel(chi).act(u, vec)


def theta_n_check(chi: LocalFunction, samples: Iterable[tuple]) -> bool:
    N = NModel(chi)
    for w, v in samples:
        lhs = N.theta(act_witt(N.handle, w, v))
        wf = _as_w(w)
        rhs = {} if wf.f.is_zero() else N.act(psibar_apply(N.ms, witt_to_env(wf, enveloping_witt(W))), N.theta(v))
        if lhs != rhs:
            return False
    return True


# ---------------------------------------------------------------- annihilators


def _gn_grid(engines: Sequence[InducedEngine], bound: int) -> list:
    ranges = [list(product(range(bound), repeat=e.r)) for e in engines]
    return list(product(*ranges))


def _act_gn_monomial(engines, nhat, mono, vec: dict) -> dict:
    cur = vec
    for g, e in reversed(mono):
        _, b, i = g
        gen = GnElement.basis(nhat[b], i)
        for _ in range(e):
            nxt: dict = {}
            for key, c in cur.items():
                for k2, c2 in engines[b].act(gen, {key[b]: Fraction(1)}).items():
                    _add(nxt, {key[:b] + (k2,) + key[b + 1 :]: c2}, c)
            cur = nxt
            if not cur:
                return cur
    return cur


def grid_bound(filtration: int, nhat: Sequence[int]) -> int:
    """Exponents 0..B-1 per variable certify that c kills U(g_n)/J; B = d(n-1) + 1.

    Let c have filtration degree d and write D = d(n-1). The weights of the
    monomials of c (under ad v_0) lie in 0..D, so c = sum_lam c_lam with
    c_lam v_0^k0 = (v_0 - lam)^k0 c_lam: at most D + 1 distinct lam.
    Moving c_lam past v_1^k1 ... v_{m-1}^k_{m-1} uses ad v_j (j >= 1), which
    raises weight, so each factor of c contributes a polynomial of degree at
    most n - 1 in the k_j (v_0 factors contribute degree 1). Hence

        c v^k 1 = sum_lam (v_0 - lam)^k0 F_lam(k_1, ..., k_{m-1})

    with F_lam polynomial of degree <= D in each k_j, with values in the
    module, which is free over k[v_0]. Vanishing for k0 = 0..D kills every
    F_lam (Vandermonde in the distinct v_0 - lam over k(v_0)), and vanishing
    of a polynomial of degree <= D on 0..D kills it identically.
    """
    return max(filtration, 0) * max(max(nhat) - 1, 1) + 1


class GnAnnihilatorTest:
    """Membership in Ann(U(g_n)/J) for the character realized on the L model."""

    def __init__(self, chi: LocalFunction, nhat: Sequence[int] | None = None):
        self.L = LModel(chi, nhat)
        self.nhat = self.L.nhat

    def coefficient_images(self, c: Element, bound: int) -> dict:
        out = {}
        for key in _gn_grid(self.L.engines, bound):
            res: dict = {}
            for mono, cc in c.terms.items():
                _add(res, _act_gn_monomial(self.L.engines, self.nhat, mono, {key: Fraction(1)}), cc)
            out[key] = res
        return out

    def kills(self, c: Element, spot_checks: int = 0, rng: random.Random | None = None) -> bool:
        B = grid_bound(c.filtration_degree(), self.nhat)
        for res in self.coefficient_images(c, B).values():
            if res:
                return False
        rng = rng or random.Random(0)
        for _ in range(spot_checks):
            key = tuple(tuple(rng.randint(B, B + 3) for _ in range(e.r)) for e in self.L.engines)
            res: dict = {}
            for mono, cc in c.terms.items():
                _add(res, _act_gn_monomial(self.L.engines, self.nhat, mono, {key: Fraction(1)}), cc)
            if res:
                raise AssertionError(f"grid certificate contradicted at {key}")
        return True


def split_by_weyl(w: Element) -> dict:
    """Group a T-algebra element as {Weyl monomial: U(g) coefficient}."""
    right = w.alg.right
    groups: dict = {}
    for (wm, um), c in w.terms.items():
        groups.setdefault(wm, {})[um] = c
    return {wm: Element(right, t) for wm, t in groups.items()}


def _module_order_source(chi: LocalFunction, u: Element) -> Element:
    lie = u.alg.lie
    if lie.variant == VIR:
        alg = enveloping_witt(W)
        terms = {m: c for m, c in u.terms.items() if all(g != ("z",) for g, _ in m)}
        return Element(alg, terms)
    return u


def annihilates(chi: LocalFunction, u: Element, spot_checks: int = 1) -> bool:
    """Whether u acts by zero on the canonical representation of chi."""
    if u.is_zero():
        return True
    base = chi.restrict(W) if chi.variant == VIR else chi
    u = _module_order_source(chi, u)
    if u.is_zero():
        return True
    ns = base.orders
    if all(n % 2 == 0 for n in ns):
        return psi_multi_apply(ns, u).is_zero()
    test = GnAnnihilatorTest(base, ns)
    image = psi_multi_apply(ns, u)
    for coeff in split_by_weyl(image).values():
        if not test.kills(coeff, spot_checks):
            return False
    return True


# ---------------------------------------------------------------- graded slices


def slice_monomials(weight: int, max_filtration: int, lo: int, hi: int, variant: str = W) -> list:
    """PBW monomials e_{i1} ... e_{ik} (i1 <= ... <= ik in [lo, hi]) of total index ``weight``."""
    alg = enveloping_witt(variant)
    out = []
    for k in range(0, max_filtration + 1):
        for combo in combinations_with_replacement(range(lo, hi + 1), k):
            if sum(combo) != weight:
                continue
            counts: dict = {}
            for i in combo:
                counts[i] = counts.get(i, 0) + 1
            mono = tuple((("e", i), e) for i, e in sorted(counts.items()))
            out.append(Element(alg, {mono: 1}))
    return out


def _kernel_of(columns: list, basis: list) -> list:
    keys = sorted({k for col in columns for k in col}, key=repr)
    if not keys:
        return basis
    index = {k: i for i, k in enumerate(keys)}
    rows = [[Fraction(0)] * len(columns) for _ in keys]
    for j, col in enumerate(columns):
        for k, c in col.items():
            rows[index[k]][j] = c
    out = []
    for vec in nullspace(rows, len(columns)):
        acc = basis[0].alg.element()
        for v, b in zip(vec, basis):
            if v:
                acc = acc + b * v
        out.append(acc)
    return out


def psi_kernel_slice(ns: Sequence[int], weight: int, max_filtration: int, lo: int, hi: int) -> list:
    """Basis of ker Psi_ns on the slice."""
    basis = slice_monomials(weight, max_filtration, lo, hi)
    if not basis:
        return []
    cols = [psi_multi_apply(ns, b).terms for b in basis]
    return _kernel_of(cols, basis)


def annihilator_slice(chi: LocalFunction, weight: int, max_filtration: int, lo: int, hi: int) -> list:
    """Basis of the slice elements annihilating M'_chi (grid-certified)."""
    base = chi.restrict(W) if chi.variant == VIR else chi
    ns = base.orders
    if all(n % 2 == 0 for n in ns):
        return psi_kernel_slice(ns, weight, max_filtration, lo, hi)
    basis = slice_monomials(weight, max_filtration, lo, hi)
    if not basis:
        return []
    test = GnAnnihilatorTest(base, ns)
    B = grid_bound(max_filtration, ns)
    cols = []
    for b in basis:
        col: dict = {}
        for wm, coeff in split_by_weyl(psi_multi_apply(ns, b)).items():
            for key, res in test.coefficient_images(coeff, B).items():
                for k2, c in res.items():
                    col[(wm, key, k2)] = c
        cols.append(col)
    return _kernel_of(cols, basis)
