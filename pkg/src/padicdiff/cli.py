"""Command-line entry point.

Every subcommand prints one JSON document (keys sorted) whose header records
the configuration and seed.  Exit codes: 0 success, 2 domain error,
3 precision or convergence error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import diffeo as dg
from . import flows as fl
from . import mahler as mh
from . import profinite as pf
from . import reps as rp
from . import symplectic as sy
from .config import RunConfig
from .errors import DomainError, IntegrityError, PrecisionError
from .padic import INF, PadicNumber, Val

EXIT_OK, EXIT_DOMAIN, EXIT_PRECISION = 0, 2, 3


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------

def _rationals(text: str) -> list[Fraction]:
    return [Fraction(t.strip()) for t in text.split(",") if t.strip()]


def _ints(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _read_json(path: str | None):
    if path is None:
        return None
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _val(v: Val):
    return v.to_json()


def parse_diffeo(spec: str, cfg: RunConfig, degree: int) -> dg.Diffeo:
    """Diffeo from a short spec or a JSON file given as @path.

    Specs: ``poly:b0,b1,..`` (monomial coefficients of f - id),
    ``translate:c``, ``scale:lam``, ``swap:a,b``, ``bump:r,c`` (x + c on
    the ball r + pZ_p), ``id``.
    """
    kw = {"precision": cfg.precision, "degree": degree, "level": cfg.level}
    if spec.startswith("@"):
        return dg.Diffeo.from_json(_read_json(spec[1:]))
    kind, _, arg = spec.partition(":")
    p = cfg.p
    if kind == "id":
        return dg.Diffeo.identity(p, **kw)
    if kind == "poly":
        return dg.Diffeo.from_poly(_rationals(arg), p, **kw)
    if kind == "translate":
        return dg.Diffeo.translation(Fraction(arg), p, **kw)
    if kind == "scale":
        return dg.Diffeo.scaling(Fraction(arg), p, **kw)
    if kind == "swap":
        a, b = _ints(arg)
        return pf.ball_swap_diffeo(a, b, p, 1, table_level=cfg.level,
                                   precision=cfg.precision, degree=degree)
    if kind == "bump":
        r, c = _ints(arg)
        return dg.Diffeo.locally_constant(lambda x: c if x == r else 0, p, 1, **kw)
    raise DomainError(f"unknown diffeomorphism spec {spec!r}")


def parse_field(text: str, cfg: RunConfig, degree: int) -> fl.VectorField:
    """Field from monomial coefficients ``a0,a1,..`` or a JSON file @path."""
    if text.startswith("@"):
        return fl.VectorField.from_json(_read_json(text[1:]))
    return fl.VectorField.from_monomial(_rationals(text), cfg.p, cfg.precision, degree)


def parse_matrix(text: str) -> list[list[Fraction]]:
    return [_rationals(row) for row in text.split(";")]


def _padic(text: str, cfg: RunConfig) -> PadicNumber:
    return PadicNumber.from_rational(Fraction(text), cfg.p, cfg.precision)


def _perm_list(text: str) -> list[tuple[int, ...]]:
    return [tuple(_ints(chunk)) for chunk in text.split(";") if chunk.strip()]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_mahler(args, cfg: RunConfig) -> dict:
    D = cfg.degree_or(mh.DEFAULT_DEGREE)
    if args.action == "extract":
        if args.values:
            values = _rationals(args.values)
        else:
            values = [Fraction(str(v)) for v in _read_json(args.input)["values"]]
        s = mh.mahler_coeffs(values, min(D, len(values) - 1), cfg.p, cfg.precision)
        return {"series": s.to_json()}
    s = _series_input(args, cfg)
    if args.action == "eval":
        return {"x": args.x, "value": mh.evaluate(s, _padic(args.x, cfg)).to_json()}
    if args.action == "norm":
        rep = mh.norm_Ct(s, args.t, dg._default_level(args.t, cfg.level))
        return {"t": args.t, "level": rep.level, "value": _val(rep.value),
                "stabilized": rep.stabilized}
    ok, margin = mh.is_analytic(s)
    out = {"analytic": ok, "margin": _val(margin)}
    if ok:
        a, b = mh.analytic_norm_pair(s)
        out["norm_pair"] = [_val(a), _val(b)]
    return out


def _series_input(args, cfg) -> mh.MahlerSeries:
    if args.coeffs:
        return mh.MahlerSeries.from_values(_rationals(args.coeffs), cfg.p, cfg.precision)
    obj = _read_json(args.input or "-")
    return mh.MahlerSeries.from_json(obj.get("series", obj))


def cmd_group(args, cfg: RunConfig) -> dict:
    D = cfg.degree_or(dg.DEFAULT_DEGREE)
    f = parse_diffeo(args.f, cfg, D)
    if args.action == "compose":
        g = parse_diffeo(args.g, cfg, D)
        h = dg.compose(f, g)
        return {"diffeo": h.to_json()}
    if args.action == "invert":
        return {"diffeo": dg.invert(f).to_json()}
    if args.action == "dist":
        g = parse_diffeo(args.g or "id", cfg, D)
        return {"t": args.t, "distance": _val(dg.distance(f, g, args.t))}
    return {"t": args.t, "in_W": dg.in_W(f, args.t),
            "isometry": dg.is_isometry(f, cfg.level),
            "weighted_norm": _val(dg.weighted_norm_a(f, 0)[0]),
            "weighted_count": dg.weighted_norm_a(f, 0)[1]}


def cmd_flow(args, cfg: RunConfig) -> dict:
    D = cfg.degree_or(fl.DEFAULT_DEGREE)
    if args.action == "exp":
        A = parse_field(args.field, cfg, D)
        return {"flow": fl.exp_field(A, _padic(args.q, cfg), level=cfg.level).to_json()}
    if args.action == "log":
        f = parse_diffeo(args.f, cfg, D)
        res = fl.log_iteration(f, args.max_iter)
        return {"field": res.field.to_json(), "steps": [s.to_json() for s in res.steps],
                "P_val": _val(res.p_val), "bounds_hold": res.bounds_hold()}
    if args.action == "monomial":
        s = fl.monomial_flow(args.m, _padic(args.q, cfg), args.terms, cfg.p, cfg.precision)
        return {"series": s.to_json(),
                "monomial": [c.to_json() for c in fl.monomial_flow_poly(
                    args.m, _padic(args.q, cfg), args.terms, cfg.p, cfg.precision)]}
    if args.action == "bch":
        u, v = parse_field(args.u, cfg, D), parse_field(args.v, cfg, D)
        return {"order": args.order, "bch": fl.bch(u, v, args.order).to_json(),
                "discrepancy": _val(fl.bch_discrepancy(u, v, args.order, cfg.level))}
    A = parse_field(args.field, cfg, D)
    return {"one_param": _val(fl.one_param_check(A, _padic(args.q1, cfg), _padic(args.q2, cfg))),
            "ode": _val(fl.flow_ode_check(A, _padic(args.q1, cfg)))}


def cmd_profinite(args, cfg: RunConfig) -> dict:
    D = cfg.degree_or(dg.DEFAULT_DEGREE)
    if args.action == "truncate":
        return {"map": pf.truncate(parse_diffeo(args.f, cfg, D), args.l).to_json()}
    if args.action == "check-tower":
        f = parse_diffeo(args.f, cfg, D)
        return {"levels": {str(l): pf.reduction_consistency(f, l) for l in range(2, f.level + 1)},
                "bijective": {str(l): pf.truncate(f, l).is_permutation()
                              for l in range(1, f.level + 1)}}
    gens = [pf.truncate(parse_diffeo(s, cfg, D), args.l) for s in args.gens.split(";")]
    G = pf.group_closure(gens, cfg.group_cap)
    return {"group": G.to_json()}


def cmd_symp(args, cfg: RunConfig) -> dict:
    n = args.n
    A = sy.linear_form(sy.standard_epsilon(n))
    if args.action == "dA":
        F = sy.exterior_derivative(A)
        ok, v = sy.is_nondegenerate(F, p=cfg.p)
        return {"form": F.to_json(), "nondegenerate": ok, "det_val": _val(v)}
    if args.action == "kernel":
        r = sy.lie_derivative_kernel(A, cfg.degree_or(2), cfg.p)
        return {"kernel": r.to_json(), "expected": n * (n + 1) // 2}
    M = parse_matrix(args.matrix)
    if args.action == "sp":
        return {"sp": sy.sp_membership(M)}
    g = sy.PolyMap.linear(M)
    F = sy.exterior_derivative(A)
    return {"symplectic": sy.check_symplectic(g, F), "potential": sy.check_potential(g, A),
            "sp": sy.sp_membership(M)}


def _subgroup(G: rp.FiniteGroup, text: str | None, name: str) -> rp.Subgroup:
    if not text:
        return rp.Subgroup.whole(G)
    gens = [rp.perm_index(G, p) for p in _perm_list(text)]
    return rp.Subgroup.generated(G, gens, name)


def _char_json(chi) -> list:
    return [v.to_json() for v in chi]


def cmd_reps(args, cfg: RunConfig) -> dict:
    G = rp.named_group(args.group)
    e = G.exponent
    if args.action == "table":
        return {"table": rp.character_table(G, cfg.order_cap, cfg.seed).to_json()}
    if args.action == "regular":
        T = rp.character_table(G, cfg.order_cap, cfg.seed)
        return {"degrees": T.degrees, "multiplicities": rp.decompose_regular(G, T)}
    K = _subgroup(G, args.K, "K")
    chi = rp.subgroup_characters(K, e)[args.chi]
    if args.action == "induce":
        ind = rp.induce(K, chi)
        T = rp.character_table(G, cfg.order_cap, cfg.seed)
        return {"induced": _char_json(ind), "decomposition": [str(m) for m in T.decompose(ind)]}
    N = _subgroup(G, args.N, "N")
    if args.action == "mackey":
        rep = rp.mackey_restriction_check(K, N, chi)
    else:
        psi = rp.subgroup_characters(N, e)[args.psi]
        rep = rp.tensor_product_check(K, N, chi, psi)
    return rep.to_json(with_certificate=args.certificate)


def cmd_demo(args, cfg: RunConfig) -> dict:
    from . import demos

    return demos.run(args.name, cfg, args)


COMMANDS = {"mahler": cmd_mahler, "group": cmd_group, "flow": cmd_flow,
            "profinite": cmd_profinite, "symp": cmd_symp, "reps": cmd_reps, "demo": cmd_demo}


# ---------------------------------------------------------------------------
# argument parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="prime (default 3)")
    common.add_argument("--precision", type=int, default=16, help="working precision N")
    common.add_argument("--degree", type=int, default=None, help="degree bound D")
    common.add_argument("--level", type=int, default=4, help="grid/table level L")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="compact JSON output")
    common.add_argument("--certificate", action="store_true",
                        help="include per-double-coset certificates")

    parser = argparse.ArgumentParser(prog="padicdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mahler", parents=[common], help="Mahler expansions")
    m.add_argument("action", choices=["extract", "eval", "norm", "analytic"])
    m.add_argument("--values", help="comma-separated f(0), f(1), ...")
    m.add_argument("--coeffs", help="comma-separated Mahler coefficients")
    m.add_argument("--input", help="JSON file or - for stdin")
    m.add_argument("--x", default="0")
    m.add_argument("--t", type=int, default=0)

    g = sub.add_parser("group", parents=[common], help="diffeomorphism group operations")
    g.add_argument("action", choices=["compose", "invert", "dist", "check-w"])
    g.add_argument("--f", default="id", help="spec: poly:..|translate:c|scale:l|swap:a,b|bump:r,c|@file")
    g.add_argument("--g", default=None)
    g.add_argument("--t", type=int, default=0)

    f = sub.add_parser("flow", parents=[common], help="flows, logarithms and brackets")
    f.add_argument("action", choices=["exp", "log", "monomial", "bch", "check"])
    f.add_argument("--field", default="0", help="monomial coefficients of a(x)")
    f.add_argument("--f", default="id")
    f.add_argument("--q", default="1")
    f.add_argument("--q1", default="1")
    f.add_argument("--q2", default="1")
    f.add_argument("--m", type=int, default=2)
    f.add_argument("--terms", type=int, default=25)
    f.add_argument("--u", default="0,0,9")
    f.add_argument("--v", default="0,0,0,9")
    f.add_argument("--order", type=int, default=4)
    f.add_argument("--max-iter", dest="max_iter", type=int, default=None)

    pr = sub.add_parser("profinite", parents=[common], help="finite quotients Z/p^l")
    pr.add_argument("action", choices=["truncate", "closure", "check-tower"])
    pr.add_argument("--f", default="id")
    pr.add_argument("--l", type=int, default=2)
    pr.add_argument("--gens", default="swap:0,1;swap:1,2")

    s = sub.add_parser("symp", parents=[common], help="potential and symplectic structures")
    s.add_argument("action", choices=["dA", "check", "kernel", "sp"])
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--matrix", default="1,1;0,1", help="rows separated by ';'")

    r = sub.add_parser("reps", parents=[common], help="finite-group characters")
    r.add_argument("action", choices=["table", "regular", "induce", "mackey", "tensor"])
    r.add_argument("--group", default="s3")
    r.add_argument("--K", default=None, help="subgroup generators as permutations 'a,b,c;...'")
    r.add_argument("--N", default=None)
    r.add_argument("--chi", type=int, default=0)
    r.add_argument("--psi", type=int, default=0)

    d = sub.add_parser("demo", parents=[common], help="reproduce the acceptance experiments")
    d.add_argument("name", choices=["exp-log", "mackey", "bch", "tower", "symplectic", "reps"])
    d.add_argument("--group", default="s3")
    d.add_argument("--count", type=int, default=5)
    return parser


def run(argv=None) -> tuple[dict, int]:
    """Parse arguments, execute, return (document, exit code)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    header = {"command": [args.command] + [getattr(args, k) for k in ("action", "name")
                                           if hasattr(args, k)]}
    try:
        cfg = RunConfig(p=args.p, precision=args.precision, degree=args.degree,
                        level=args.level, seed=args.seed)
        header["config"] = cfg.to_json()
        result = COMMANDS[args.command](args, cfg)
        return {**header, "status": "ok", "result": result}, EXIT_OK
    except PrecisionError as exc:
        return {**header, "status": "precision-error", "error": str(exc)}, EXIT_PRECISION
    except (DomainError, IntegrityError) as exc:
        return {**header, "status": "domain-error", "error": str(exc)}, EXIT_DOMAIN


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, float) and o == INF:
        return "inf"
    raise TypeError(f"cannot serialize {type(o).__name__}")


def main(argv=None) -> int:
    doc, code = run(argv)
    compact = argv is not None and "--json" in argv or (argv is None and "--json" in sys.argv)
    text = json.dumps(doc, sort_keys=True, default=_default,
                      indent=None if compact else 2)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
