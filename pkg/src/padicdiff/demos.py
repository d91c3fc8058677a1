"""Reproducible experiments shared by the CLI ``demo`` command and scripts/."""

from __future__ import annotations

from . import diffeo as dg
from . import flows as fl
from . import profinite as pf
from . import reps as rp
from . import symplectic as sy
from .config import RunConfig
from .errors import DomainError
from .padic import INF


def _exp(e):
    return "inf" if e == INF else int(e)


def exp_log(cfg: RunConfig, count: int = 5) -> dict:
    """exp then log on random fields: recovered field, flow agreement, step bounds."""
    rng = cfg.rng()
    D = cfg.degree_or(fl.DEFAULT_DEGREE)
    rows = []
    for i in range(count):
        A = fl.random_field(rng, cfg.p, cfg.precision, D)
        g = fl.exp_field(A, level=cfg.level).g_q
        res = fl.log_iteration(g)
        g2 = fl.exp_field(res.field, level=cfg.level).g_q
        rows.append({"case": i, "field_norm": A.norm.to_json(),
                     "field_agreement": _exp(A.agreement(res.field)),
                     "flow_agreement": _exp(dg.agreement(g, g2)),
                     "iterations": len(res.steps), "bounds_hold": res.bounds_hold()})
    return {"cases": rows,
            "min_field_agreement": _exp(min(r["field_agreement"] if r["field_agreement"] != "inf"
                                             else INF for r in rows)),
            "all_bounds_hold": all(r["bounds_hold"] for r in rows)}


def bch_table(cfg: RunConfig, u_coeffs=(0, 0, 9), v_coeffs=(0, 0, 0, 9)) -> dict:
    """Discrepancy exponent between exp(BCH_k(u, v)) and the product flow, k = 1..4."""
    D = cfg.degree_or(fl.DEFAULT_DEGREE)
    u = fl.VectorField.from_monomial(list(u_coeffs), cfg.p, cfg.precision, D)
    v = fl.VectorField.from_monomial(list(v_coeffs), cfg.p, cfg.precision, D)
    rows = [{"order": k, "discrepancy": fl.bch_discrepancy(u, v, k, cfg.level).to_json()}
            for k in range(1, fl.MAX_BCH_ORDER + 1)]
    return {"u": [str(c) for c in u_coeffs], "v": [str(c) for c in v_coeffs], "rows": rows}


def tower(cfg: RunConfig, count: int = 20) -> dict:
    """Reduction consistency and table-versus-rule agreement for random W elements."""
    rng = cfg.rng()
    D = cfg.degree_or(dg.DEFAULT_DEGREE)
    failures = []
    for i in range(count):
        f = pf.random_w_element(rng, cfg.p, cfg.level, cfg.precision, D)
        g = pf.random_w_element(rng, cfg.p, cfg.level, cfg.precision, D)
        h, fi = dg.compose(f, g), dg.invert(f)
        for l in range(1, cfg.level + 1):
            ok = (pf.truncate(h, l) == pf.truncate_from_rule(h, l)
                  and pf.truncate(fi, l) == pf.truncate_from_rule(fi, l)
                  and pf.truncate(h, l) == pf.truncate(f, l) @ pf.truncate(g, l)
                  and (l == 1 or pf.reduction_consistency(h, l)))
            if not ok:
                failures.append({"case": i, "level": l})
    return {"elements": count, "levels": cfg.level, "failures": failures}


def symplectic(cfg: RunConfig, samples: int = 5) -> dict:
    """Nondegeneracy of dA, kernel dimensions of L_xi A, and Sp membership samples."""
    rng = cfg.rng()
    out = {}
    for n in (2, 4):
        eps = sy.standard_epsilon(n)
        A = sy.linear_form(eps)
        ok, v = sy.is_nondegenerate(sy.exterior_derivative(A), p=cfg.p)
        dims = {str(D): sy.lie_derivative_kernel(A, D, cfg.p).dimension
                for D in ((1, 2, 3) if n == 2 else (1, 2))}
        mats = [sy.random_symplectic_matrix(rng, n) for _ in range(samples)]
        out[str(n)] = {"dA_nondegenerate": ok, "det_val": v.to_json(),
                       "kernel_dimensions": dims, "expected_dimension": n * (n + 1) // 2,
                       "sp_samples_pass": all(sy.sp_membership(M) for M in mats),
                       "perturbed_samples_fail": not any(sy.sp_membership(sy.perturb(M, cfg.p))
                                                         for M in mats)}
    return out


def reps_table(cfg: RunConfig, group: str = "s3") -> dict:
    """Character table, orthogonality and the regular decomposition."""
    G = rp.named_group(group)
    T = rp.character_table(G, cfg.order_cap, cfg.seed)
    return {"group": group, "order": G.n, "degrees": T.degrees,
            "orthogonal": rp.check_orthogonality(T),
            "regular_multiplicities": rp.decompose_regular(G, T),
            "table": T.to_json()}


def subgroup_catalogue(G: rp.FiniteGroup) -> list[rp.Subgroup]:
    """Cyclic subgroups, subgroups generated by pairs of involutions, and G."""
    seen, out = set(), []

    def add(H):
        key = frozenset(H.elements)
        if key not in seen:
            seen.add(key)
            out.append(H)

    for a in range(G.n):
        add(rp.Subgroup.generated(G, [a], f"<{a}>"))
    inv = [a for a in range(G.n) if G.element_order(a) == 2]
    for i, a in enumerate(inv):
        for b in inv[i + 1:]:
            add(rp.Subgroup.generated(G, [a, b], f"<{a},{b}>"))
    add(rp.Subgroup.whole(G))
    return out


def mackey_cases(G: rp.FiniteGroup, limit: int = 40) -> list[tuple]:
    """(K, N, chi_index) triples with K, N proper nontrivial where possible."""
    subs = [H for H in subgroup_catalogue(G) if 1 < H.order < G.n] or subgroup_catalogue(G)
    subs.sort(key=lambda H: (H.order, sorted(H.elements)))
    cases = []
    for K in subs:
        for N in subs:
            if K is N and len(subs) > 1:
                continue
            cases.append((K, N))
    step = max(1, len(cases) // limit)
    return cases[::step][:limit]


def mackey(cfg: RunConfig, group: str = "s3", certificate: bool = False) -> dict:
    """Mackey restriction and tensor identities over a catalogue of subgroup pairs."""
    G = rp.named_group(group)
    e = G.exponent
    rows = []
    for K, N in mackey_cases(G):
        chars_K = rp.subgroup_characters(K, e)
        chars_N = rp.subgroup_characters(N, e)
        i, j = len(chars_K) - 1, len(chars_N) - 1
        mr = rp.mackey_restriction_check(K, N, chars_K[i])
        tp = rp.tensor_product_check(K, N, chars_K[i], chars_N[j])
        row = {"K_order": K.order, "N_order": N.order, "chi": i, "psi": j,
               "double_cosets": len(rp.double_cosets(K, N)),
               "mackey": mr.holds, "tensor": tp.holds}
        if certificate:
            row["certificate"] = mr.certificate
        rows.append(row)
    return {"group": group, "cases": rows,
            "all_hold": all(r["mackey"] and r["tensor"] for r in rows)}


def run(name: str, cfg: RunConfig, args=None) -> dict:
    count = getattr(args, "count", 5)
    group = getattr(args, "group", "s3")
    if name == "exp-log":
        return exp_log(cfg, count)
    if name == "bch":
        return bch_table(cfg)
    if name == "tower":
        return tower(cfg, count)
    if name == "symplectic":
        return symplectic(cfg)
    if name == "reps":
        return reps_table(cfg, group)
    if name == "mackey":
        return mackey(cfg, group, getattr(args, "certificate", False))
    raise DomainError(f"unknown demo {name!r}")
