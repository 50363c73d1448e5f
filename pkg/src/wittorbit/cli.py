"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (the error class name is
printed), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .coadjoint import (
    GroupElement,
    act_on_dual,
    closure_leq,
    group_matrix,
    orbit_dimension,
    orbit_equal,
    orbit_reduce,
    tangent_check,
)
from .foundations import DomainError, SizeMismatch, format_q
from .lie import VIR, W, W_GE_MINUS1, format_witt, witt_bracket
from .localfn import (
    canonical_polarization,
    check_polarization,
    evaluate,
    order_and_support,
    pseudo_orbit_equal,
    project_to_gn,
    twist,
)
from .modules import (
    annihilates,
    module_act,
    module_create,
    reduce_to_generator,
    theta_check,
)
from .morphisms import (
    coproduct_power,
    phi_apply,
    phiweyl_apply,
    psi_apply,
    psi_multi_apply,
    psibar_apply,
)
from .parser import (
    algebra_from_name,
    element_to_json,
    parse_element,
    parse_localfn,
    parse_rationals,
    parse_witt,
    vector_from_json,
    vector_to_json,
    witt_to_json,
)
from .pbw import EnvelopingAlgebra, PoissonPolyAlgebra, poisson_bracket
from .verify import SUITES, rand_basis_vector, rand_witt, run_suite

_WITT_NAMES = {"W": W, "W-1": W_GE_MINUS1, "Vir": VIR}


class UsageError(Exception):
    pass


def _q(x: Fraction) -> str:
    return str(x) if x.denominator != 1 else str(x.numerator)


def _qs(xs) -> list:
    return [_q(Fraction(x)) for x in xs]


def _vector_text(vec: dict) -> str:
    if not vec:
        return "0"
    parts = []
    for key, c in sorted(vec.items()):
        parts.append(f"{_q(c)} * {list(map(list, key))}")
    return " + ".join(parts)


def _element(text: str, algebra: str):
    return parse_element(text, algebra_from_name(algebra))


def _variant(args) -> str:
    name = args.algebra or "W"
    if name not in _WITT_NAMES:
        raise UsageError(f"--algebra must be one of W, W-1, Vir here, not {name!r}")
    return _WITT_NAMES[name]


def _sized(text: str, n: int | None) -> list:
    xs = parse_rationals(text)
    if n is not None and len(xs) != n:
        raise SizeMismatch(f"expected {n} coordinates, got {len(xs)}")
    return xs


# ---------------------------------------------------------------- verbs


def cmd_bracket(args):
    name = args.algebra or "W"
    if name in _WITT_NAMES:
        a, b = parse_witt(args.a, _WITT_NAMES[name]), parse_witt(args.b, _WITT_NAMES[name])
        c = witt_bracket(a, b)
        return witt_to_json(c), format_witt(c)
    alg = algebra_from_name(name)
    a, b = parse_element(args.a, alg), parse_element(args.b, alg)
    c = poisson_bracket(a, b) if isinstance(alg, PoissonPolyAlgebra) else a * b - b * a
    return element_to_json(c), str(c)


def cmd_normal_form(args):
    e = _element(args.expr, args.algebra or "W")
    return element_to_json(e), str(e)


def cmd_phi(args):
    default = "S:W-1" if args.variant.startswith("W-1") else "S:W"
    e = phi_apply(_element(args.expr, args.algebra or default), args.variant, args.n)
    return element_to_json(e), str(e)


def cmd_psi(args):
    default = "W-1" if args.variant.startswith("W-1") else "W"
    e = psi_apply(_element(args.expr, args.algebra or default), args.variant, args.n)
    return element_to_json(e), str(e)


def cmd_psi_multi(args):
    e = psi_multi_apply(parse_ints(args.ns), _element(args.expr, args.algebra or "W"))
    return element_to_json(e), str(e)


def cmd_psibar(args):
    e = psibar_apply(parse_ints(args.ms), _element(args.expr, args.algebra or "W"))
    return element_to_json(e), str(e)


def cmd_phiweyl(args):
    e = phiweyl_apply(args.m, _element(args.expr, args.algebra or f"g:{2 * args.m}"))
    return element_to_json(e), str(e)


def cmd_coproduct(args):
    e = coproduct_power(_element(args.expr, args.algebra or "W"), args.ell)
    return element_to_json(e), str(e)


def parse_ints(text: str) -> tuple:
    try:
        return tuple(int(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def cmd_localfn(args):
    variant = _variant(args)
    chi = parse_localfn(args.chi, variant)
    op = args.op
    if op == "eval":
        if not args.rest:
            raise UsageError("localfn eval needs a Witt element")
        v = evaluate(chi, parse_witt(args.rest[0], variant))
        return format_q(v), _q(v)
    if op == "order":
        orders, xs, ms, dim = order_and_support(chi)
        data = {"orders": list(orders), "support": _qs(xs), "m": list(ms), "orbit_dimension": dim}
        return data, f"orders {list(orders)} at {_qs(xs)}, m = {list(ms)}, orbit dimension {dim}"
    if op == "twist":
        t = twist(chi)
        return t.to_json(), repr(t)
    if op == "project":
        nhat = parse_ints(args.nhat) if args.nhat else None
        blocks = project_to_gn(chi, nhat)
        data = [_qs(b) for b in blocks]
        return data, "; ".join(",".join(b) for b in data)
    if op == "polarization":
        spec = canonical_polarization(chi)
        failure = check_polarization(chi, spec, args.degree_window)
        data = {"modulus": [[_q(x), k] for x, k in spec.modulus], "valid": failure is None, "failure": failure}
        mod = " ".join(f"(t - {_q(x)})^{k}" for x, k in spec.modulus)
        return data, f"W({mod}): " + ("valid" if failure is None else failure)
    if op == "orbit-equal":
        if not args.rest:
            raise UsageError("localfn orbit-equal needs a second local function")
        eq = pseudo_orbit_equal(chi, parse_localfn(args.rest[0], variant))
        return eq, str(eq).lower()
    raise UsageError(f"unknown localfn operation {op!r}")


def cmd_orbit(args):
    xi = _sized(args.xi, args.n)
    op = args.op
    if op == "reduce":
        red, witness = orbit_reduce(xi)
        data = {"normal_form": _qs(red), "witness": [_qs(g.coeffs) for g in witness]}
        return data, ",".join(data["normal_form"])
    if op == "dim":
        d = orbit_dimension(xi)
        return d, str(d)
    if op in ("equal", "closure"):
        if args.eta is None:
            raise UsageError(f"orbit {op} needs a second covector")
        eta = _sized(args.eta, args.n)
        r = orbit_equal(xi, eta) if op == "equal" else closure_leq(xi, eta)
        return r, str(r).lower()
    raise UsageError(f"unknown orbit operation {op!r}")


def cmd_group(args):
    coeffs = parse_rationals(args.coeffs)
    n = args.n if args.n is not None else len(coeffs)
    op = args.op
    if op == "tangent-check":
        ok = tangent_check(n, [Fraction(0)] + coeffs)
        return ok, str(ok).lower()
    g = GroupElement(n, tuple(coeffs))
    if op == "matrix":
        M = [_qs(row) for row in group_matrix(g)]
        return M, "\n".join(" ".join(row) for row in M)
    if op == "act":
        if args.xi is None:
            raise UsageError("group act needs a covector")
        out = _qs(act_on_dual(g, _sized(args.xi, n)))
        return out, ",".join(out)
    raise UsageError(f"unknown group operation {op!r}")


def _module_source(args, variant: str) -> EnvelopingAlgebra:
    return algebra_from_name(args.algebra or {W: "W", W_GE_MINUS1: "W-1", VIR: "Vir"}[variant])


def cmd_module(args):
    variant = _variant(args)
    chi = parse_localfn(args.chi, variant)
    h = module_create(chi)
    vec = vector_from_json(args.vector) if args.vector else h.one()
    op = args.op
    if op == "act":
        if args.expr is None:
            raise UsageError("module act needs an element of U(g)")
        out = module_act(h, parse_element(args.expr, _module_source(args, variant)), vec)
        return vector_to_json(out), _vector_text(out)
    if op == "reduce":
        red = reduce_to_generator(h, vec)
        y = red.expand()
        return {"Y": element_to_json(y), "c": format_q(red.c)}, f"Y = {y}\nc = {_q(red.c)}"
    if op == "check-theta":
        rng = random.Random(args.seed)
        samples = [(rand_witt(rng, variant, -3, 3, 2), rand_basis_vector(rng, h)) for _ in range(args.trials or 20)]
        nhat = parse_ints(args.nhat) if args.nhat else None
        ok = theta_check(chi, nhat, samples)
        return ok, str(ok).lower()
    raise UsageError(f"unknown module operation {op!r}")


def cmd_ann(args):
    if args.op != "test":
        raise UsageError(f"unknown ann operation {args.op!r}")
    variant = _variant(args)
    chi = parse_localfn(args.chi, variant)
    u = parse_element(args.expr, _module_source(args, variant))
    ok = annihilates(chi, u)
    return ok, str(ok).lower()


def cmd_verify(args):
    try:
        reports = run_suite(args.suite, args.seed, args.trials)
    except KeyError:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(['all', *SUITES])}") from None
    text = "\n".join(r.line() for r in reports)
    data = [r.to_json() for r in reports]
    return data, text, all(r.passed for r in reports)


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="algebra name (see docs/syntax.md)")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int)
    common.add_argument("--degree-window", type=int, help="index window for sampled or windowed checks")

    p = argparse.ArgumentParser(prog="wittorbit", description="Exact computations with Witt algebras, local functions and induced modules.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("bracket", parents=[common], help="Lie or Poisson bracket of two expressions")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(fn=cmd_bracket)

    s = sub.add_parser("normal-form", parents=[common], help="PBW normal form of an expression")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_normal_form)

    variants = ["W-1_inf", "W-1_n", "W_n"]
    for verb, fn, helptext in (("phi", cmd_phi, "Poisson map on S(W) or S(W>=-1)"), ("psi", cmd_psi, "algebra map on U(W) or U(W>=-1)")):
        s = sub.add_parser(verb, parents=[common], help=helptext)
        s.add_argument("expr")
        s.add_argument("--variant", choices=variants, default="W_n")
        s.add_argument("--n", type=int)
        s.set_defaults(fn=fn)

    s = sub.add_parser("psi-multi", parents=[common], help="multi-point map (Psi_n1 x ... x Psi_nl) o coproduct")
    s.add_argument("expr")
    s.add_argument("--ns", required=True, help="orders, e.g. 2,3")
    s.set_defaults(fn=cmd_psi_multi)

    s = sub.add_parser("psibar", parents=[common], help="Psi-bar for totally even orders 2m")
    s.add_argument("expr")
    s.add_argument("--ms", required=True, help="half-orders, e.g. 1,2")
    s.set_defaults(fn=cmd_psibar)

    s = sub.add_parser("phiweyl", parents=[common], help="the map U(g_2m) -> A_m")
    s.add_argument("expr")
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(fn=cmd_phiweyl)

    s = sub.add_parser("coproduct", parents=[common], help="iterated coproduct into l slots")
    s.add_argument("expr")
    s.add_argument("--ell", type=int, default=2)
    s.set_defaults(fn=cmd_coproduct)

    s = sub.add_parser("localfn", parents=[common], help="local functions")
    s.add_argument("op", choices=["eval", "order", "twist", "project", "polarization", "orbit-equal"])
    s.add_argument("chi", help='"x:a0,a1,...;x:..." or JSON')
    s.add_argument("rest", nargs="*")
    s.add_argument("--nhat", help="target orders for project")
    s.set_defaults(fn=cmd_localfn)

    s = sub.add_parser("orbit", parents=[common], help="coadjoint G_n-orbits in the dual of g_n")
    s.add_argument("op", choices=["reduce", "equal", "dim", "closure"])
    s.add_argument("xi")
    s.add_argument("eta", nargs="?")
    s.add_argument("--n", type=int)
    s.set_defaults(fn=cmd_orbit)

    s = sub.add_parser("group", parents=[common], help="the group G_n of truncated coordinate changes")
    s.add_argument("op", choices=["matrix", "act", "tangent-check"])
    s.add_argument("coeffs", help="c1,...,cn of s(a) = c1 a + ... + cn a^n")
    s.add_argument("xi", nargs="?")
    s.add_argument("--n", type=int)
    s.set_defaults(fn=cmd_group)

    s = sub.add_parser("module", parents=[common], help="canonical induced modules")
    s.add_argument("op", choices=["act", "reduce", "check-theta"])
    s.add_argument("chi")
    s.add_argument("expr", nargs="?")
    s.add_argument("--vector", help="JSON module vector (default: the generator)")
    s.add_argument("--nhat", help="orders of the L model for check-theta")
    s.set_defaults(fn=cmd_module)

    s = sub.add_parser("ann", parents=[common], help="annihilator membership")
    s.add_argument("op", choices=["test"])
    s.add_argument("chi")
    s.add_argument("expr")
    s.set_defaults(fn=cmd_ann)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite")
    s.set_defaults(fn=cmd_verify)
    for sp in sub.choices.values():
        sp.set_defaults(usage=sp.format_usage())
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
    except DomainError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return 1
    except (UsageError, ValueError) as exc:
        print(args.usage, end="", file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ok = True
    if len(result) == 3:
        data, text, ok = result
    else:
        data, text = result
    print(json.dumps(data) if args.json else text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
