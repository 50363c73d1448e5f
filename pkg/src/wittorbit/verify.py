"""Seeded verification suites shared by the CLI and the test-suite.

Every suite returns a ``Report``; a suite passes when no check failed.  Counts
default to the acceptance scales; ``trials`` replaces every sampled count.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

from .coadjoint import (
    GroupElement,
    act_on_dual,
    act_on_gn,
    act_transpose,
    group_matrix,
    odd_invariant,
    orbit_dimension,
    orbit_equal,
    orbit_reduce,
    tangent_check,
)
from .foundations import LaurentPoly, TwistObstruction, matmul, matrix_rank
from .lie import (
    VIR,
    W,
    W_GE_MINUS1,
    GnElement,
    WittElement,
    basis_bracket,
    gn_bracket,
    vir_cocycle,
    witt_bracket,
)
from .localfn import (
    LocalFunction,
    canonical_polarization,
    coadjoint_rank,
    evaluate,
    preimage_of_gn,
    project_to_gn,
    pseudo_orbit_equal,
    twist,
)
from .modules import (
    InducedEngine,
    NModel,
    a_value,
    act_witt,
    annihilates,
    apply_factors,
    direct_engine,
    module_act,
    module_create,
    psi_kernel_slice,
    reduce_to_generator,
    theta_check,
    theta_n_check,
    u_tilde,
)
from .morphisms import (
    PHI_VARIANTS,
    phi_apply,
    phiweyl_apply,
    psi_apply,
    psi_multi_apply,
    psibar_apply,
    siso_convert,
    truncate_gn,
    witt_to_env,
)
from .lie import quotient_basis
from .pbw import (
    Element,
    associated_graded_symbol,
    dcoeff,
    enveloping_gbold,
    enveloping_witt,
    poisson_bracket,
    s_algebra,
    symmetric_witt,
    tn_algebra,
    weyl_plain,
    weyl_slots,
)


@dataclass
class Report:
    name: str
    seed: int | None = None
    checks: int = 0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def check(self, ok: bool, label: str):
        self.checks += 1
        if not ok:
            self.failures.append(label)

    @property
    def passed(self) -> bool:
        return not self.failures

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        seed = "" if self.seed is None else f" seed={self.seed}"
        out = f"{status} {self.name}: {self.checks} checks, {len(self.failures)} failed{seed} ({self.seconds:.1f}s)"
        if self.failures:
            out += "\n  first failure: " + self.failures[0]
        return out

    def to_json(self):
        return {
            "suite": self.name,
            "seed": self.seed,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:20],
            "notes": self.notes,
        }


def _timed(fn):
    def run(*args, **kwargs):
        t0 = time.perf_counter()
        rep = fn(*args, **kwargs)
        rep.seconds = time.perf_counter() - t0
        return rep

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


def _n(trials, default):
    return default if trials is None else trials


# ---------------------------------------------------------------- random data


def rand_q(rng: random.Random) -> Fraction:
    num = rng.randint(-5, 5)
    return Fraction(num, rng.choice((1, 1, 1, 2, 3)))


def rand_nonzero_q(rng: random.Random) -> Fraction:
    while True:
        c = rand_q(rng)
        if c:
            return c


def rand_witt(rng: random.Random, variant: str, lo: int = -6, hi: int = 6, terms: int = 3) -> WittElement:
    if variant == W_GE_MINUS1:
        lo = max(lo, -1)
    out = WittElement.zero(variant)
    for _ in range(rng.randint(1, terms)):
        out = out + WittElement.basis(rng.randint(lo, hi), variant).scale(rand_nonzero_q(rng))
    if variant == VIR and rng.random() < 0.5:
        out = out + WittElement.z().scale(rand_q(rng))
    return out


def rand_gn(rng: random.Random, n: int) -> GnElement:
    return GnElement(n, tuple(rand_q(rng) for _ in range(n)))


def rand_word_element(rng: random.Random, alg, gens: list, max_filt: int, terms: int = 2) -> Element:
    out = alg.element()
    for _ in range(rng.randint(1, terms)):
        word = alg.unit()
        for _ in range(rng.randint(0, max_filt)):
            word = word * alg.gen(rng.choice(gens))
        out = out + word.scale(rand_nonzero_q(rng))
    return out


def witt_gens(variant: str, lo: int = -6, hi: int = 6) -> list:
    if variant == W_GE_MINUS1:
        lo = max(lo, -1)
    gens = [("e", i) for i in range(lo, hi + 1)]
    return gens + ([("z",)] if variant == VIR else [])


def rand_env(rng, variant: str, max_filt: int = 2, lo: int = -4, hi: int = 4, terms: int = 2) -> Element:
    return rand_word_element(rng, enveloping_witt(variant), witt_gens(variant, lo, hi), max_filt, terms)


def rand_group(rng: random.Random, n: int) -> GroupElement:
    cs = [rand_nonzero_q(rng)] + [rand_q(rng) for _ in range(n - 1)]
    return GroupElement(n, tuple(cs))


def _base(chi: LocalFunction) -> LocalFunction:
    return chi.restrict(W) if chi.variant == VIR else chi


# ---------------------------------------------------------------- 1. Lie algebras


@_timed
def suite_lie(seed: int = 0, trials: int | None = None) -> Report:
    """Antisymmetry and Jacobi in W, W>=-1, Vir and g_n; the Vir cocycle identity."""
    rng = random.Random(seed)
    rep = Report("lie", seed)
    T = _n(trials, 500)
    for variant in (W, W_GE_MINUS1, VIR):
        for t in range(T):
            a, b, c = (rand_witt(rng, variant) for _ in range(3))
            rep.check(witt_bracket(a, b) == -witt_bracket(b, a), f"{variant} antisymmetry #{t}: {a}, {b}")
            jac = witt_bracket(a, witt_bracket(b, c)) + witt_bracket(b, witt_bracket(c, a)) + witt_bracket(c, witt_bracket(a, b))
            rep.check(jac.is_zero(), f"{variant} Jacobi #{t}: {a}, {b}, {c}")
    # basis table against the closed form (j - i) e_{i+j} + 2(i^3 - i) delta z
    for i in range(-6, 7):
        for j in range(-6, 7):
            got = witt_bracket(WittElement.basis(i, VIR), WittElement.basis(j, VIR))
            want = WittElement.basis(i + j, VIR).scale(j - i) + WittElement.z().scale(2 * (i**3 - i) if i + j == 0 else 0)
            rep.check(got == want, f"Vir table [e{i}, e{j}]")
            table = basis_bracket(i, j, VIR)
            rep.check(table.get(i + j, 0) == j - i, f"basis_bracket({i},{j})")
    for t in range(_n(trials, 200)):
        f, g, h = (rand_witt(rng, W).f for _ in range(3))
        cyc = vir_cocycle(f, (witt_bracket(WittElement(g), WittElement(h))).f)
        cyc += vir_cocycle(g, (witt_bracket(WittElement(h), WittElement(f))).f)
        cyc += vir_cocycle(h, (witt_bracket(WittElement(f), WittElement(g))).f)
        rep.check(cyc == 0, f"cocycle identity #{t}")
        rep.check(vir_cocycle(f, g) == -vir_cocycle(g, f), f"cocycle antisymmetry #{t}")
    for n in range(1, 9):
        for t in range(T):
            a, b, c = (rand_gn(rng, n) for _ in range(3))
            rep.check(gn_bracket(a, b) == gn_bracket(b, a).scale(-1), f"g_{n} antisymmetry #{t}")
            jac = gn_bracket(a, gn_bracket(b, c)) + gn_bracket(b, gn_bracket(c, a)) + gn_bracket(c, gn_bracket(a, b))
            rep.check(jac.is_zero(), f"g_{n} Jacobi #{t}")
        # g_n is W>=0 modulo W>=n
        for i in range(n):
            for j in range(n):
                w = witt_bracket(WittElement.basis(i), WittElement.basis(j))
                want = tuple(w.components().get(k, Fraction(0)) for k in range(n))
                got = gn_bracket(GnElement.basis(n, i), GnElement.basis(n, j)).coeffs
                rep.check(got == want, f"g_{n} vs truncated W: [v{i}, v{j}]")
    return rep


# ---------------------------------------------------------------- 2. d coefficients


def product_rule_table(k: int) -> dict:
    """(f g' - f' g)^(k-1) as {(i, j): coeff of f^(i) g^(j)}, by repeated product rule."""
    terms = {(0, 1): 1, (1, 0): -1}
    for _ in range(k - 1):
        nxt: dict = {}
        for (i, j), c in terms.items():
            nxt[(i + 1, j)] = nxt.get((i + 1, j), 0) + c
            nxt[(i, j + 1)] = nxt.get((i, j + 1), 0) + c
        terms = nxt
    return terms


@_timed
def suite_dcoeff(max_sum: int = 12) -> Report:
    """dcoeff(i, j) against the brute-force expansion of (fg' - f'g)^(k-1)."""
    rep = Report("dcoeff")
    rep.check(dcoeff(0, 0) == 0, "d(0,0)")
    for k in range(1, max_sum + 1):
        table = product_rule_table(k)
        for i in range(k + 1):
            j = k - i
            rep.check(dcoeff(i, j) == table.get((i, j), 0), f"d({i},{j})")
            rep.check(dcoeff(i, j) == -dcoeff(j, i), f"antisymmetry d({i},{j})")
    return rep


# ---------------------------------------------------------------- 3. Poisson maps


def _rand_s_poly(rng, alg, n, laurent, terms=2, deg=2):
    out = alg.element()
    top = 5 if n is None else n
    for _ in range(rng.randint(1, terms)):
        mono = alg.scalar(rand_nonzero_q(rng))
        for _ in range(rng.randint(0, deg)):
            if rng.random() < 0.35:
                e = rng.randint(-2 if laurent else 0, 2)
                mono = mono * alg.gen(("t",), e) if e else mono
            else:
                mono = mono * alg.gen(("y", rng.randint(0, top)))
        out = out + mono
    return out


@_timed
def suite_poisson(seed: int = 0, trials: int | None = None) -> Report:
    """Phi maps are Poisson; the S algebras satisfy Jacobi and Leibniz; the y/e identification intertwines."""
    rng = random.Random(seed)
    rep = Report("poisson", seed)
    T = _n(trials, 300)
    for variant in PHI_VARIANTS:
        src = symmetric_witt(W if variant == "W_n" else W_GE_MINUS1)
        lo = -6 if variant == "W_n" else -1
        for t in range(T):
            n = None if variant == "W-1_inf" else rng.randint(0, 5)
            a = src.gen(("e", rng.randint(lo, 6)))
            b = src.gen(("e", rng.randint(lo, 6)))
            lhs = phi_apply(poisson_bracket(a, b), variant, n)
            rhs = poisson_bracket(phi_apply(a, variant, n), phi_apply(b, variant, n))
            rep.check(lhs == rhs, f"{variant} n={n} on {a}, {b}")
        for t in range(max(T // 10, 1)):
            n = None if variant == "W-1_inf" else rng.randint(1, 4)
            gens = [g for g in witt_gens(W, lo, 3)]
            a = rand_word_element(rng, src, gens, 2)
            b = rand_word_element(rng, src, gens, 2)
            lhs = phi_apply(poisson_bracket(a, b), variant, n)
            rhs = poisson_bracket(phi_apply(a, variant, n), phi_apply(b, variant, n))
            rep.check(lhs == rhs, f"{variant} n={n} on products {a}, {b}")
    for t in range(_n(trials, 200)):
        n = rng.choice([None, 0, 1, 2, 3, 4, 5])
        laurent = rng.random() < 0.5
        alg = s_algebra(n, laurent)
        a, b, c = (_rand_s_poly(rng, alg, n, laurent) for _ in range(3))
        jac = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) + poisson_bracket(c, poisson_bracket(a, b))
        rep.check(jac.is_zero(), f"S_{n} Jacobi #{t}")
        rep.check(poisson_bracket(a, b * c) == poisson_bracket(a, b) * c + b * poisson_bracket(a, c), f"S_{n} Leibniz #{t}")
        rep.check(poisson_bracket(a, b) == -poisson_bracket(b, a), f"S_{n} antisymmetry #{t}")
    for t in range(_n(trials, 200)):
        n = rng.choice([None, 1, 2, 3, 4, 5])
        laurent = rng.random() < 0.5
        alg = s_algebra(n, laurent)
        a, b = (_rand_s_poly(rng, alg, n, laurent) for _ in range(2))
        fa, fb = siso_convert(a), siso_convert(b)
        rep.check(siso_convert(poisson_bracket(a, b)) == poisson_bracket(fa, fb), f"identification intertwines #{t}")
        rep.check(siso_convert(fa, "backward") == a, f"identification round trip #{t}")
    return rep


# ---------------------------------------------------------------- 4. Psi maps


@_timed
def suite_hom(seed: int = 0, trials: int | None = None) -> Report:
    """Psi maps preserve brackets, lift Phi on symbols and factor through truncation; phi_m embeds U(g_2m)."""
    rng = random.Random(seed)
    rep = Report("hom", seed)
    T = _n(trials, 300)
    for variant in PHI_VARIANTS:
        src_variant = W if variant == "W_n" else W_GE_MINUS1
        for t in range(T):
            n = None if variant == "W-1_inf" else rng.randint(0, 5)
            a = rand_env(rng, src_variant, 2, -3, 3, 2)
            b = rand_env(rng, src_variant, 1, -3, 3, 2)
            lhs = psi_apply(a.commutator(b), variant, n)
            pa, pb = psi_apply(a, variant, n), psi_apply(b, variant, n)
            rep.check(lhs == pa.commutator(pb), f"{variant} n={n} bracket on {a}, {b}")
            rep.check(psi_apply(a * b, variant, n) == pa * pb, f"{variant} n={n} product on {a}, {b}")
    for t in range(max(T // 6, 1)):
        ns = tuple(rng.randint(0, 3) for _ in range(2))
        a = rand_env(rng, W, 1, -3, 3, 2)
        b = rand_env(rng, W, 1, -3, 3, 2)
        rep.check(
            psi_multi_apply(ns, a.commutator(b)) == psi_multi_apply(ns, a).commutator(psi_multi_apply(ns, b)),
            f"multi-point {ns} bracket #{t}",
        )
    for t in range(_n(trials, 100)):
        variant = rng.choice(PHI_VARIANTS)
        src_variant = W if variant == "W_n" else W_GE_MINUS1
        n = None if variant == "W-1_inf" else rng.randint(1, 5)
        u = rand_env(rng, src_variant, 3, -3, 3, 2)
        lhs = associated_graded_symbol(psi_apply(u, variant, n))
        sym = associated_graded_symbol(u, symmetric_witt(src_variant))
        rhs = siso_convert(phi_apply(sym, variant, n))
        rep.check(lhs == rhs, f"symbol of {variant} n={n} on {u}")
    for i in range(-6, 7):
        e = enveloping_witt(W).gen(("e", i))
        for n2 in range(1, 6):
            full = psi_apply(e, "W_n", n2)
            for n in range(0, n2):
                rep.check(psi_apply(e, "W_n", n) == truncate_gn(full, (n,)), f"truncation e{i}: {n2} -> {n}")
    # kernel inclusion that the truncation forces: ker Psi_4 inside ker Psi_2
    for u in psi_kernel_slice((4,), 0, 3, -6, 6):
        rep.check(psi_multi_apply((2,), u).is_zero(), f"ker Psi_4 element outside ker Psi_2: {u}")
    for m in range(1, 5):
        n = 2 * m
        alg = enveloping_gbold((n,))
        gens = [alg.gen(("v", 0, i)) for i in range(n)]
        for i in range(n):
            for j in range(n):
                lhs = phiweyl_apply(m, gens[i].commutator(gens[j]))
                rhs = phiweyl_apply(m, gens[i]).commutator(phiweyl_apply(m, gens[j]))
                rep.check(lhs == rhs, f"phi_{m} on [v{i}, v{j}]")
        monos = [alg.unit()]
        for k in range(1, 4):
            for combo in combinations_with_replacement(range(n), k):
                x = alg.unit()
                for c in combo:
                    x = x * gens[c]
                monos.append(x)
        images = [phiweyl_apply(m, x).terms for x in monos]
        keys = sorted({k for im in images for k in im})
        index = {k: r for r, k in enumerate(keys)}
        rows = [[Fraction(0)] * len(monos) for _ in keys]
        for c, im in enumerate(images):
            for k, v in im.items():
                rows[index[k]][c] = v
        rep.check(matrix_rank(rows) == len(monos), f"phi_{m} images of degree <= 3 monomials are independent")
    return rep


# ---------------------------------------------------------------- PBW engine


def _weyl_naive(a, b, c, d) -> dict:
    """x^a d^b * x^c d^d by moving one d at a time (d x^c = x^c d + c x^(c-1))."""
    terms = {(c, 0): Fraction(1)}
    for _ in range(b):
        nxt: dict = {}
        for (p, q), v in terms.items():
            nxt[(p, q + 1)] = nxt.get((p, q + 1), 0) + v
            if p:
                nxt[(p - 1, q)] = nxt.get((p - 1, q), 0) + v * p
        terms = nxt
    return {(a + p, q + d): v for (p, q), v in terms.items() if v}


@_timed
def suite_pbw(seed: int = 0, trials: int | None = None) -> Report:
    """Associativity, commutators of generators and the Weyl product against a naive rewrite."""
    rng = random.Random(seed)
    rep = Report("pbw", seed)
    T = _n(trials, 100)
    for variant in (W, W_GE_MINUS1, VIR):
        alg = enveloping_witt(variant)
        for t in range(T):
            a, b, c = (rand_env(rng, variant, 2, -3, 3, 2) for _ in range(3))
            rep.check((a * b) * c == a * (b * c), f"U({variant}) associativity #{t}")
        for i in range(-3, 4):
            for j in range(-3, 4):
                if variant == W_GE_MINUS1 and min(i, j) < -1:
                    continue
                ei, ej = alg.gen(("e", i)), alg.gen(("e", j))
                br = witt_to_env(witt_bracket(WittElement.basis(i, variant), WittElement.basis(j, variant)), alg)
                rep.check(ei * ej - ej * ei == br, f"U({variant}) [e{i}, e{j}]")
    for n in (2, 3, 5):
        alg = enveloping_gbold((n,))
        gens = [("v", 0, i) for i in range(n)]
        for t in range(T):
            a, b, c = (rand_word_element(rng, alg, gens, 3) for _ in range(3))
            rep.check((a * b) * c == a * (b * c), f"U(g_{n}) associativity #{t}")
    for a in range(-2, 4):
        for b in range(4):
            for c in range(-2, 4):
                for d in range(3):
                    alg = weyl_slots(1, True)
                    got = Element(alg, alg.mul_mono(((a, b),), ((c, d),)))
                    want = Element(alg, {((k[0], k[1]),): v for k, v in _weyl_naive(a, b, c, d).items()})
                    rep.check(got == want, f"Weyl x^{a} d^{b} * x^{c} d^{d}")
    talg = tn_algebra((3,), True)
    tgens = [(0, ("x", 0)), (0, ("d", 0))] + [(1, ("v", 0, i)) for i in range(3)]
    for t in range(T):
        a, b, c = (rand_word_element(rng, talg, tgens, 2) for _ in range(3))
        rep.check((a * b) * c == a * (b * c), f"T~_3 associativity #{t}")
    walg = weyl_plain(2)
    wgens = [("x", 0), ("x", 1), ("d", 0), ("d", 1)]
    for t in range(T):
        a, b, c = (rand_word_element(rng, walg, wgens, 3) for _ in range(3))
        rep.check((a * b) * c == a * (b * c), f"A_2 associativity #{t}")
    # the symbol of a commutator is the Poisson bracket of the symbols
    sw = symmetric_witt(W)
    for t in range(T):
        a = rand_env(rng, W, 2, -3, 3, 1)
        b = rand_env(rng, W, 2, -3, 3, 1)
        comm = a.commutator(b)
        da, db = a.filtration_degree(), b.filtration_degree()
        if comm.filtration_degree() != da + db - 1:
            continue
        lhs = associated_graded_symbol(comm, sw)
        rhs = poisson_bracket(associated_graded_symbol(a, sw), associated_graded_symbol(b, sw))
        rep.check(lhs == rhs, f"symbol of commutator #{t}")
    return rep


# ---------------------------------------------------------------- 5. modules


def module_fixtures() -> list:
    """Ten local functions: orders (0)..(5) one-point, two-point (2,2) and (1,3), a Vir datum and a twist-obstructed one."""
    return [
        ("order2", LocalFunction.one_point(1, [0, 0, 1])),
        ("order1", LocalFunction.one_point(2, [1, 3])),
        ("order0-W>=-1", LocalFunction.one_point(0, [2], W_GE_MINUS1)),
        ("order3", LocalFunction.one_point(2, [1, 3, 2, 5])),
        ("order4", LocalFunction.one_point(-1, [0, 1, -2, 1, 3])),
        ("order5", LocalFunction.one_point(3, [1, 0, 2, -1, 1, 2])),
        ("two-point(2,2)", LocalFunction(W, [(1, [0, 0, 1]), (-1, [0, 1, 3])])),
        ("two-point(1,3)", LocalFunction(W, [(2, [1, -1]), (-2, [0, 1, 1, 1])])),
        ("Vir-order3", LocalFunction.one_point(2, [1, -1, 1, Fraction(1, 2)], VIR)),
        ("obstructed", LocalFunction.one_point(1, [2, Fraction(1, 2)])),
    ]


def rand_vector(rng, h, terms: int = 3, top: int = 2) -> dict:
    out: dict = {}
    while not out:
        for _ in range(rng.randint(1, terms)):
            key = tuple(tuple(rng.randint(0, top) for _ in range(m + 1)) for m in h.ms)
            c = rand_nonzero_q(rng)
            out[key] = out.get(key, 0) + c
            if not out[key]:
                del out[key]
    return out


def rand_basis_vector(rng, h, top: int = 2) -> dict:
    return {tuple(tuple(rng.randint(0, top) for _ in range(m + 1)) for m in h.ms): Fraction(1)}


def _window_elements(chi: LocalFunction, extra: int = 4) -> list:
    spec = canonical_polarization(_base(chi))
    F = spec.modulus_poly()
    width = spec.degree() + extra
    lo = 0 if chi.variant == W_GE_MINUS1 else -width
    return [WittElement(F * LaurentPoly.monomial(j), 0, chi.variant) for j in range(lo, width + 1)]


def _scalar_vec(h, c) -> dict:
    return {k: Fraction(c) for k in h.one()} if c else {}


def _rand_q_poly(rng, x) -> LaurentPoly:
    while True:
        q = LaurentPoly({k: rand_q(rng) for k in range(3)})
        if q(x) != 0:
            return q


@_timed
def suite_module(seed: int = 0, trials: int | None = None) -> Report:
    """Presentation, the u~ vanishing lemmas, associativity, reduction to the generator and compatibilities."""
    rng = random.Random(seed)
    rep = Report("module", seed)
    for label, chi in module_fixtures():
        h = module_create(chi)
        base = _base(chi)
        chi_t = twist(base)
        one = h.one()
        # presentation: window elements of the polarization act on 1 by chi'
        window = _window_elements(chi)
        for w in window:
            want = _scalar_vec(h, evaluate(chi_t, WittElement(w.f, 0, base.variant)))
            rep.check(act_witt(h, w, one) == want, f"{label}: presentation on {w}")
        for a in window[::3]:
            for b in window[1::3]:
                rep.check(not act_witt(h, witt_bracket(a, b), one), f"{label}: [p, p] on 1")
        if h.ell == 1:
            x, n, m = h.xs[0], h.orders[0], h.ms[0]
            for j in range(m, 2 * m + 1):
                w = WittElement(LaurentPoly.t_minus(x, j + 1), 0, W)
                rep.check(h.presentation_scalars()[0][j - m] == evaluate(twist(base), WittElement(w.f, 0, base.variant)), f"{label}: scalar u_{j}")
            for t in range(_n(trials, 10)):
                q = _rand_q_poly(rng, x)
                for i in range(-3, m):
                    got = act_witt(h, u_tilde(q, n - 1 - i, x), one)
                    want = _scalar_vec(h, a_value(h, 0, q, i)) if i >= 0 else {}
                    rep.check(got == want, f"{label}: u~_(q,{n - 1 - i}) on 1")
                if n > 1:
                    alpha_n = base.points[0][1][n]
                    rep.check(a_value(h, 0, q, 0) == factorial(n) * alpha_n * q(x), f"{label}: a_(q,0) closed form")
                v = rand_basis_vector(rng, h)
                k_minus = next(iter(v))[0][0]
                for j in range(1, 3):
                    rep.check(not act_witt(h, u_tilde(q, n - 1 + j + k_minus, x), v), f"{label}: u~ kills {v}")
        # associativity of the action
        for t in range(_n(trials, 10)):
            u = rand_env(rng, chi.variant, 2, -3, 3, 2)
            v = rand_env(rng, chi.variant, 2, -3, 3, 2)
            x = rand_basis_vector(rng, h, 1)
            rep.check(module_act(h, u * v, x) == module_act(h, u, module_act(h, v, x)), f"{label}: (uv).x = u.(v.x) #{t}")
        if label == "obstructed":
            try:
                reduce_to_generator(h, h.one())
                rep.check(False, f"{label}: reduction should be obstructed")
            except TwistObstruction:
                rep.check(True, "")
            for k in range(1, 5):
                vec = {((k,),): Fraction(1)}
                for i in range(-5, 6):
                    out = act_witt(h, WittElement.basis(i, chi.variant), vec)
                    rep.check(all(key[0][0] >= 1 for key in out), f"{label}: e{i} leaves the k_-1 >= 1 span")
            continue
        for t in range(_n(trials, 50)):
            v = rand_vector(rng, h)
            r = reduce_to_generator(h, v)
            rep.check(r.c != 0 and apply_factors(h, r.factors, v) == _scalar_vec(h, r.c), f"{label}: reduction #{t} of {v}")
            if t < 3:
                rep.check(module_act(h, r.expand(), v) == _scalar_vec(h, r.c), f"{label}: expanded Y #{t}")
        # restriction to W>=-1 and the Vir projection
        if chi.variant == W and 0 not in h.xs:
            hr = module_create(chi.restrict(W_GE_MINUS1))
            for t in range(_n(trials, 10)):
                w = rand_witt(rng, W_GE_MINUS1)
                v = rand_basis_vector(rng, h)
                rep.check(act_witt(h, WittElement(w.f, 0, W), v) == act_witt(hr, w, v), f"{label}: restriction #{t}")
        if chi.variant == VIR:
            hw = module_create(chi.restrict(W))
            rep.check(not act_witt(h, WittElement.z(), one), f"{label}: z acts by 0")
            for t in range(_n(trials, 10)):
                w = rand_witt(rng, VIR)
                v = rand_basis_vector(rng, h)
                rep.check(act_witt(h, w, v) == act_witt(hw, WittElement(w.f, 0, W), v), f"{label}: Vir factors through W #{t}")
        if h.ell > 1:
            _check_tensor(rep, rng, label, chi, h, _n(trials, 15))
    return rep


def _check_tensor(rep, rng, label, chi, h, count):
    D: InducedEngine = direct_engine(chi)
    basis = quotient_basis(list(zip(h.xs, h.ms)), W)

    def embed(vec):
        out: dict = {}
        for k, c in vec.items():
            cur = h.one()
            for b in reversed(range(len(k))):
                for _ in range(k[b]):
                    cur = act_witt(h, basis[b], cur)
            for kk, cc in cur.items():
                out[kk] = out.get(kk, 0) + c * cc
        return {k: v for k, v in out.items() if v}

    for t in range(count):
        w = rand_witt(rng, W, -3, 3, 2)
        k = tuple(rng.randint(0, 1) for _ in range(D.r))
        rep.check(embed(D.act(w, {k: Fraction(1)})) == act_witt(h, w, embed({k: Fraction(1)})), f"{label}: tensor model #{t}")


# ---------------------------------------------------------------- 6. theta


@_timed
def suite_theta(seed: int = 0, trials: int | None = None) -> Report:
    """theta intertwines M'_chi with the L model, and with the N model for totally even orders."""
    rng = random.Random(seed)
    rep = Report("theta", seed)
    count = _n(trials, 100)
    for label, chi in module_fixtures():
        h = module_create(chi)
        samples = [(rand_witt(rng, chi.variant, -3, 3, 2), rand_basis_vector(rng, h)) for _ in range(count)]
        for t, s in enumerate(samples):
            rep.check(theta_check(chi, None, [s]), f"{label}: L model #{t} on {s}")
        bigger = tuple(n + 1 for n in h.orders)
        for t, s in enumerate(samples[: max(count // 5, 1)]):
            rep.check(theta_check(chi, bigger, [s]), f"{label}: L model with n^={bigger} #{t}")
        if all(n % 2 == 0 for n in h.orders):
            for t, s in enumerate(samples):
                rep.check(theta_n_check(chi, [s]), f"{label}: N model #{t} on {s}")
    return rep


# ---------------------------------------------------------------- 7. orbits


def _pair(xi, v) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(xi, v)), Fraction(0))


def rand_covector(rng, n) -> tuple:
    xi = [rand_q(rng) for _ in range(n)]
    xi[-1] = rand_nonzero_q(rng)
    return tuple(xi)


@_timed
def suite_orbit(seed: int = 0, trials: int | None = None) -> Report:
    """G_n is a group of automorphisms; normal forms, invariants and dimensions of coadjoint orbits."""
    rng = random.Random(seed)
    rep = Report("orbit", seed)
    for n in range(1, 7):
        for t in range(_n(trials, 100)):
            g, h = rand_group(rng, n), rand_group(rng, n)
            rep.check(group_matrix(g.then(h)) == matmul(group_matrix(g), group_matrix(h)), f"G_{n} matrices multiply #{t}")
            a, b = rand_gn(rng, n), rand_gn(rng, n)
            lhs = act_on_gn(g, gn_bracket(a, b).coeffs)
            rhs = gn_bracket(GnElement(n, act_on_gn(g, a.coeffs)), GnElement(n, act_on_gn(g, b.coeffs))).coeffs
            rep.check(lhs == rhs, f"G_{n} preserves brackets #{t}")
            xi = rand_covector(rng, n)
            rep.check(act_on_dual(g, act_on_dual(h, xi)) == act_on_dual(g.then(h), xi), f"G_{n} dual action #{t}")
            rep.check(_pair(act_on_dual(g, xi), act_on_gn(g, a.coeffs)) == _pair(xi, a.coeffs), f"G_{n} pairing #{t}")
        zeta = rand_nonzero_q(rng)
        xi = rand_covector(rng, n)
        rep.check(
            act_transpose(GroupElement.dilation(n, zeta), xi) == tuple(c * zeta**i for i, c in enumerate(xi)),
            f"G_{n} dilation scales v*_i by zeta^i",
        )
        m = n // 2
        for t in range(_n(trials, 200)):
            xi = rand_covector(rng, n)
            red, wit = orbit_reduce(xi)
            replay = xi
            for g in wit:
                replay = act_on_dual(g, replay)
            rep.check(replay == red, f"n={n}: witnesses reproduce the normal form #{t}")
            dim = orbit_dimension(xi)
            if n == 1:
                g = rand_group(rng, 1)
                rep.check(act_on_dual(g, xi) == xi and red == xi, f"n=1 orbit is a point #{t}")
                rep.check(dim == 0, "n=1 dimension")
            elif n % 2 == 0:
                rep.check(all(c == 0 for c in red[:-1]), f"n={n}: normal form is a multiple of v*_(n-1) #{t}")
                rep.check(orbit_equal(xi, (0,) * (n - 1) + (1,)), f"n={n}: one nondegenerate orbit #{t}")
                rep.check(dim == n, f"n={n}: dimension {dim}")
            else:
                rep.check(all(c == 0 for i, c in enumerate(red[:-1]) if i != m), f"n={n}: normal form in span(v*_m, v*_(n-1)) #{t}")
                rep.check(dim == n - 1, f"n={n}: dimension {dim}")
                g = rand_group(rng, n)
                rep.check(odd_invariant(act_on_dual(g, xi)) == odd_invariant(xi), f"n={n}: invariant along the orbit #{t}")
        if n % 2 == 1 and n > 1:
            values = [Fraction(k, 2) for k in range(-4, 5)]
            for b1 in values:
                for b2 in values:
                    x1 = [Fraction(0)] * n
                    x2 = [Fraction(0)] * n
                    x1[-1] = x2[-1] = Fraction(1)
                    x1[m], x2[m] = b1, b2
                    rep.check(orbit_equal(x1, x2) == (b1 == b2 or b1 == -b2), f"n={n}: beta={b1} vs {b2}")
    for n in range(1, 9):
        for j in range(0, n):
            s = [0] * (j + 2)
            s[j + 1] = 1
            rep.check(tangent_check(n, s), f"tangent check n={n}, s=a^{j + 1}")
    for label, chi in module_fixtures():
        if len(chi.points) != 1:
            continue
        base = _base(chi)
        chibar = project_to_gn(base)[0]
        rep.check(orbit_dimension(chibar) == coadjoint_rank(chi, 10) - 2, f"{label}: dim G_n.chibar = dim O(chi) - 2")
    return rep


# ---------------------------------------------------------------- 8. Dixmier


_KERNEL_SLICES = {1: (0, 3, -3, 3), 2: (0, 3, -3, 3), 3: (0, 4, -4, 4), 4: (0, 3, -6, 6)}


@_timed
def suite_dixmier(seed: int = 0, trials: int | None = None) -> Report:
    """Annihilators agree along pseudo-orbits; kernel elements of Psi are universal annihilators."""
    rng = random.Random(seed)
    rep = Report("dixmier", seed)
    kernels = {n: psi_kernel_slice((n,), *spec) for n, spec in _KERNEL_SLICES.items()}
    bases = [
        LocalFunction.one_point(1, [0, 0, 1]),
        LocalFunction.one_point(2, [1, 2, -1, 3]),
        LocalFunction.one_point(-1, [0, 1, 1, 1, 2]),
        LocalFunction.one_point(3, [1, 3]),
        LocalFunction.one_point(2, [0, Fraction(1, 2), 1, Fraction(-1, 3)]),
    ]
    gens = witt_gens(W, -3, 3)
    alg = enveloping_witt(W)
    for p in range(_n(trials, 20)):
        chi = bases[p % len(bases)]
        n = chi.orders[0]
        g = rand_group(rng, n)
        etabar = act_on_dual(g, project_to_gn(chi)[0])
        x = rng.choice([Fraction(k) for k in (-3, -2, 2, 3, 5)])
        eta = preimage_of_gn([etabar], [x], W, [rand_q(rng)])
        rep.check(project_to_gn(eta)[0] == etabar, f"pair {p}: lift projects back")
        rep.check(pseudo_orbit_equal(chi, eta), f"pair {p}: pseudo-orbits agree")
        ker = kernels[n]
        chosen = rng.sample(ker, min(3, len(ker)))
        rep.check(len(chosen) >= 3, f"pair {p}: fewer than 3 kernel elements for n={n}")
        sample = chosen + [rand_word_element(rng, alg, gens, 4, 2) for _ in range(_n(trials, 30) - len(chosen))]
        for s, u in enumerate(sample):
            a, b = annihilates(chi, u), annihilates(eta, u)
            rep.check(a == b, f"pair {p} element {s}: {chi} vs {eta} on {u}")
            if s < len(chosen):
                rep.check(a and b, f"pair {p}: kernel element {s} annihilates")
    chi = LocalFunction.one_point(1, [0, 0, 1])
    h = module_create(chi)
    witness = next((u for u in kernels[2] if not u.is_zero() and annihilates(chi, u)), None)
    rep.check(witness is not None, "no annihilating element found for chi_{1;0,0,1}")
    if witness is not None:
        rep.notes.append(f"annihilator of chi_{{1;0,0,1}}: {witness}")
        vecs = [h.basis_vector([[a, b]]) for a in range(10) for b in range(5)]
        rep.check(all(not module_act(h, witness, v) for v in vecs), "witness kills 50 basis vectors")
    return rep


# ---------------------------------------------------------------- 9. negative results


@_timed
def suite_negative() -> Report:
    """e_-1 is not in the annihilator of an order-2 module; the GK-codimension claim is not checked."""
    rep = Report("negative")
    u = enveloping_witt(W).gen(("e", -1))
    image = psibar_apply((1,), u)
    rep.check(not image.is_zero(), "psi-bar_2(e_-1) is nonzero")
    alg = image.alg
    rep.check(image == alg.gen(("d", 0)), f"psi-bar_2(e_-1) = d, got {image}")
    chi = LocalFunction.one_point(1, [0, 0, 1])
    rep.check(not annihilates(chi, u), "annihilates(chi, e_-1) is false")
    h = module_create(chi)
    rep.check(bool(module_act(h, u, h.one())), "e_-1 moves the generator")
    N = NModel(chi)
    rep.check(N.act(image, N.one()) == {(1, 0): Fraction(1)}, "e_-1 . 1 = d . 1 in the N model")
    rep.notes.append("Gelfand-Kirillov codimension of the annihilators is not computed (out of scope)")
    return rep


SUITES = {
    "jacobi": suite_lie,
    "dcoeff": suite_dcoeff,
    "poisson": suite_poisson,
    "hom": suite_hom,
    "pbw": suite_pbw,
    "module": suite_module,
    "theta": suite_theta,
    "orbit": suite_orbit,
    "dixmier": suite_dixmier,
    "negative": suite_negative,
}


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> list:
    """Run one named suite (``module`` includes theta, ``dixmier`` the negative results, ``all`` everything)."""
    if name == "all":
        names = list(SUITES)
    elif name == "module":
        names = ["module", "theta"]
    elif name == "dixmier":
        names = ["dixmier", "negative"]
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(name)
    out = []
    for nm in names:
        fn = SUITES[nm]
        if nm == "dcoeff":
            out.append(fn())
        elif nm == "negative":
            out.append(fn())
        else:
            out.append(fn(seed=seed, trials=trials))
    return out
