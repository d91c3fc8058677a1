"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line."""

import random
import time
from math import factorial

import pytest

from padicdiff import diffeo as dg
from padicdiff import flows as fl
from padicdiff import profinite as pf
from padicdiff import reps as rp
from padicdiff import symplectic as sy
from padicdiff.demos import mackey_cases
from padicdiff.mahler import MahlerSeries, evaluate, mahler_coeffs, norm_Ct
from padicdiff.padic import INF, PadicNumber, Val, exp_scalar, vp

P = 3
GUARD = 4


@pytest.fixture
def report(capsys, request):
    def emit(ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {request.node.name}: {detail}")
        assert ok, detail
    return emit


def test_crit01_mahler_round_trip(report):
    N, D = 12, 10
    rng = random.Random(101)
    mod = P**N
    t0 = time.perf_counter()
    bad = 0
    for _ in range(50):
        b = [rng.randrange(mod) for _ in range(rng.randrange(D + 1) + 1)]
        f = lambda x: sum(c * x**i for i, c in enumerate(b))
        s = mahler_coeffs(f, D, P, N)
        for x in range(81):
            # integer Horner evaluation is the oracle
            if (evaluate(s, x) - f(x)).val_lower_bound() < N:
                bad += 1
    dt = time.perf_counter() - t0
    report(bad == 0 and dt < 5, f"50 polynomials x 81 points, mismatches={bad}, {dt:.2f}s (< 5s)")


def test_crit02_c0_orthonormality(report):
    rng = random.Random(202)
    bad = []
    for i in range(50):
        D = rng.randrange(1, 15)
        coeffs = [P**rng.randrange(0, 6) * rng.randrange(1, P**4) * rng.choice([0, 1, 1])
                  for _ in range(D + 1)]
        s = MahlerSeries.from_values(coeffs, P, 16)
        expected = max((Val(vp(c, P)) for c in coeffs), default=Val(INF))
        # stabilized by L=3: the L=4 report agrees with its L=3 predecessor
        n3, n4 = norm_Ct(s, 0, 3), norm_Ct(s, 0, 4)
        if not (n3.value == n4.value == expected and n4.stabilized):
            bad.append(i)
    report(not bad, f"50 truncated series, norm at L=3 equals max|a_m| and L=4 value; failures={bad}")


def random_fields(count, seed=303, N=16, D=24):
    rng = random.Random(seed)
    return [fl.random_field(rng, P, N, D) for _ in range(count)]


def test_crit03_exp_log_round_trip(report):
    N = 16
    t0 = time.perf_counter()
    worst, bounds = INF, True
    for A in random_fields(20):
        res = fl.log_iteration(fl.exp_field(A).g_q)
        worst = min(worst, A.agreement(res.field))
        bounds = bounds and res.bounds_hold()
    dt = time.perf_counter() - t0
    ok = worst >= N - GUARD and bounds and dt < 30
    report(ok, f"20 fields, min agreement exponent={worst} (>= {N - GUARD}), "
               f"step bounds hold={bounds}, {dt:.1f}s (< 30s)")


def test_crit04_one_parameter_law(report):
    N = 16
    rng = random.Random(404)
    worst = INF
    for A in random_fields(20):
        q1 = PadicNumber.from_rational(rng.randrange(P**3), P, N)
        q2 = PadicNumber.from_rational(rng.randrange(P**3), P, N)
        g12 = fl.exp_field(A, q1 + q2, level=2).g_q
        comp = dg.compose(fl.exp_field(A, q1, level=2).g_q, fl.exp_field(A, q2, level=2).g_q)
        worst = min(worst, dg.agreement(g12, comp))
    T = fl.VectorField.from_monomial([9], P, N, 24)
    exact = all(fl.one_param_check(T, a, b) == Val(INF) for a, b in [(1, 2), (5, 7), (0, 4)])
    report(worst >= N - GUARD and exact,
           f"min agreement exponent={worst} (>= {N - GUARD}), translations exact={exact}")


def test_crit05_monomial_flows(report):
    N = 16
    q = PadicNumber.from_rational(3, P, N)
    b0 = fl.monomial_flow_poly(0, q, 6, P, N)
    m0 = b0[0] == 3 and b0[1] == 1 and all(c.is_exact_zero() or c.is_zero() for c in b0[2:])
    b1 = fl.monomial_flow_poly(1, q, 40, P, N)
    m1 = all(fl.gamma(k, 1) == 1 for k in range(1, 40)) and \
        (b1[1] - exp_scalar(q)).val_lower_bound() >= N - GUARD
    b2 = fl.monomial_flow_poly(2, q, 25, P, N)
    unit = all(fl.gamma(k, 2) == factorial(k) for k in range(26))
    # x / (1 - q x) expanded term by term
    closed = [PadicNumber.zero(P)] + [q**k for k in range(26)]
    m2 = unit and all(a == c for a, c in zip(b2, closed)) and len(b2) == len(closed)
    report(m0 and m1 and m2, f"m=0 translation={m0}, m=1 scalar exp={m1}, m=2 geometric to D=25={m2}")


def test_crit06_ad_power_formula(report):
    bad = []
    for m in range(5):
        for n in range(5):
            u = fl.VectorField.monomial(2, m, P, 16, 24)
            v = fl.VectorField.monomial(5, n, P, 16, 24)
            for s in range(1, 5):
                if (fl.ad_power(u, v, s) - fl.iterated_bracket(u, v, s)).norm != Val(INF):
                    bad.append((m, n, s))
    report(not bad, f"100 cases (m, n <= 4, s <= 4), mismatches={bad}")


def test_crit07_bch_discrepancy(report):
    N, D = 16, 24
    u = fl.VectorField.from_monomial([0, 0, 9], P, N, D)
    v = fl.VectorField.from_monomial([0, 0, 0, 9], P, N, D)
    d = fl.bch_discrepancy(u, v, 4)
    c = fl.bch_discrepancy(u, u.scale(3), 4)
    differ = d.exponent != INF
    report(differ and c == Val(INF),
           f"noncommuting exponent={d.exponent} (finite), commuting exponent={c.exponent} (inf)")


def test_crit08_profinite_homomorphism(report):
    rng = random.Random(808)
    bad = 0
    for _ in range(50):
        f = pf.random_w_element(rng, P, 4, 16, 24)
        g = pf.random_w_element(rng, P, 4, 16, 24)
        fg, fi = dg.compose(f, g), dg.invert(f)
        for l in range(1, 5):
            ok = (pf.truncate_from_rule(fg, l) == pf.truncate(f, l) @ pf.truncate(g, l)
                  and pf.truncate_from_rule(fi, l) == pf.truncate(f, l).inverse()
                  and pf.truncate(f, l).is_permutation()
                  and pf.truncate(fg, l).is_permutation())
            bad += not ok
    report(bad == 0, f"50 element pairs x levels 1..4, failures={bad}")


def test_crit09_kernel_dimensions(report):
    t0 = time.perf_counter()
    dims = {}
    for n in (2, 4):
        A = sy.linear_form(sy.standard_epsilon(n))
        for D in (1, 2, 3):
            dims[(n, D)] = sy.lie_derivative_kernel(A, D, P).dimension
    dt = time.perf_counter() - t0
    ok = all(d == n * (n + 1) // 2 for (n, _), d in dims.items()) and dt < 10
    report(ok, f"dimensions {dims} (expect 3 and 10), {dt:.2f}s (< 10s)")


def test_crit10_sp_consistency(report):
    rng = random.Random(1010)
    good = bad = implication = 0
    for _ in range(20):
        n = rng.choice([2, 4])
        eps = sy.standard_epsilon(n)
        A = sy.linear_form(eps)
        F = sy.exterior_derivative(A)
        M = sy.random_symplectic_matrix(rng, n)
        Q = sy.perturb(M, P)
        for mat in (M, Q):
            g = sy.PolyMap.linear(mat)
            pot, sym = sy.check_potential(g, A), sy.check_symplectic(g, F)
            implication += (not pot) or sym
        g, h = sy.PolyMap.linear(M), sy.PolyMap.linear(Q)
        good += sy.check_symplectic(g, F) and sy.sp_membership(M)
        bad += (not sy.check_symplectic(h, F)) and (not sy.sp_membership(Q))
    report(good == 20 and bad == 20 and implication == 40,
           f"symplectic pass {good}/20, perturbed fail {bad}/20, potential=>symplectic {implication}/40")


def ball_swap_group():
    tables = [pf.truncate(pf.ball_swap_diffeo(a, b, P, 1, table_level=2), 2).table
              for a, b in [(0, 1), (1, 2)]]
    tables.append(pf.translation_map(3, P, 2).table)
    return rp.group_from_tables(tables, "swaps+translation")


def test_crit11_representation_suite(report):
    groups = [rp.cyclic_group(n) for n in range(1, 13)]
    groups += [rp.symmetric_group(3), rp.symmetric_group(4), rp.dihedral_group(4),
               rp.quaternion_group(), ball_swap_group()]
    bad = []
    for G in groups:
        T = rp.character_table(G)
        ok = (rp.check_orthogonality(T) and sum(d * d for d in T.degrees) == G.n
              and rp.decompose_regular(G, T) == T.degrees)
        if not ok:
            bad.append(G.name)
    report(not bad, f"{len(groups)} groups (ball-swap group order {groups[-1].n}), failures={bad}")


def test_crit12_mackey_tensor(report):
    t0 = time.perf_counter()
    cases = failures = 0
    per_group = {}
    for name in ("s3", "s4", "d4"):
        G = rp.named_group(name)
        e = G.exponent
        for K, N in mackey_cases(G, limit=8):
            for chi in rp.subgroup_characters(K, e):
                psi = rp.subgroup_characters(N, e)[-1]
                ok = (rp.mackey_restriction_check(K, N, chi).holds
                      and rp.tensor_product_check(K, N, chi, psi).holds)
                cases += 1
                failures += not ok
                per_group[name] = per_group.get(name, 0) + 1
    dt = time.perf_counter() - t0
    report(failures == 0 and cases >= 10 and dt < 20,
           f"{cases} cases {per_group}, failures={failures}, {dt:.1f}s (< 20s)")


def test_crit13_isometry_and_invariance(report):
    rng = random.Random(1313)
    L = 4
    iso = inv = right = 0
    count = 20
    ident = dg.Diffeo.identity(P, precision=16, degree=24, level=L)
    for _ in range(count):
        f, g, h = (pf.random_w_element(rng, P, L, 16, 24) for _ in range(3))
        iso += dg.is_isometry(f, L)
        inv += dg.distance(dg.invert(f), ident, 0) == dg.distance(f, ident, 0)
        right += all(dg.distance_mod(dg.compose(f, h), dg.compose(g, h), l) == dg.distance_mod(f, g, l)
                     for l in range(1, L + 1))
    report(iso == inv == right == count,
           f"isometry {iso}/{count}, inverse distance {inv}/{count}, right invariance {right}/{count}")
