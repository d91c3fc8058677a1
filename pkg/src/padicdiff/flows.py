"""Vector fields a(x)d/dx on Z_p, their flows and logarithms.

Fields are stored by monomial coefficients, where the Gauss norm max |b_k|
is multiplicative and d/dx does not increase it; this is the norm the
convergence bounds below are stated in.  The time-q flow is the operator
exponential g^q(x) = sum_s q^s A^s(x) / s!.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import poly
from .diffeo import Diffeo, compose, distance, in_W
from .errors import ConvergenceError, DomainError, PrecisionError
from .mahler import MahlerSeries
from .padic import INF, PadicNumber, Val, factorial_valuation, is_prime

DEFAULT_PRECISION = 16
DEFAULT_DEGREE = 24
MAX_BCH_ORDER = 4


def _padic(x, p: int, precision: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    return PadicNumber.from_rational(x, p, precision)


def min_field_val(p: int) -> int:
    """Smallest Gauss-norm exponent for which the exp series is certified."""
    return 3 if p == 2 else 2


@dataclass(frozen=True)
class VectorField:
    """A = a(x) d/dx with a(x) = sum_k coeffs[k] x^k."""

    p: int
    precision: int
    degree: int
    coeffs: tuple[PadicNumber, ...]

    @classmethod
    def from_monomial(cls, coeffs, p: int, precision: int = DEFAULT_PRECISION,
                      degree: int = DEFAULT_DEGREE) -> "VectorField":
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        b = poly.trim([_padic(c, p, precision) for c in coeffs])
        return cls(p, precision, degree, tuple(b))

    @classmethod
    def monomial(cls, xi, m: int, p: int, precision: int = DEFAULT_PRECISION,
                 degree: int = DEFAULT_DEGREE) -> "VectorField":
        """xi x^m d/dx."""
        return cls.from_monomial([0] * m + [xi], p, precision, degree)

    @classmethod
    def zero(cls, p: int, precision: int = DEFAULT_PRECISION,
             degree: int = DEFAULT_DEGREE) -> "VectorField":
        return cls(p, precision, degree, ())

    @classmethod
    def from_mahler(cls, s: MahlerSeries, degree: int | None = None) -> "VectorField":
        d = degree if degree is not None else max(s.degree, DEFAULT_DEGREE)
        return cls(s.p, s.precision, d, tuple(poly.trim(s.monomial())))

    @property
    def norm(self) -> Val:
        """Gauss norm max_k |b_k| of the coefficient a."""
        return poly.gauss_val(self.coeffs)

    @property
    def series(self) -> MahlerSeries:
        return MahlerSeries(self.p, self.precision, tuple(poly.monomial_to_mahler(list(self.coeffs))))

    def as_monomial(self) -> tuple[PadicNumber, int]:
        """(xi, m) if the field is xi x^m d/dx."""
        nz = [k for k, c in enumerate(self.coeffs) if not c.is_zero()]
        if len(nz) != 1:
            raise DomainError("field is not a single monomial")
        return self.coeffs[nz[0]], nz[0]

    def _like(self, coeffs) -> "VectorField":
        return VectorField(self.p, self.precision, self.degree, tuple(poly.trim(coeffs)))

    def __add__(self, other: "VectorField") -> "VectorField":
        _check(self, other)
        return self._like(poly.add(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        _check(self, other)
        return self._like(poly.sub(list(self.coeffs), list(other.coeffs)))

    def __neg__(self) -> "VectorField":
        return self._like([-c for c in self.coeffs])

    def scale(self, c) -> "VectorField":
        return self._like(poly.scale(list(self.coeffs), c))

    def distance(self, other: "VectorField") -> Val:
        return (self - other).norm

    def agreement(self, other: "VectorField"):
        """Largest e with all coefficients congruent mod p^e (precision-aware)."""
        return min((c.val_lower_bound() for c in (self - other).coeffs), default=INF)

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.precision, "D": self.degree,
                "monomial": [c.to_json() for c in self.coeffs],
                "norm": self.norm.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "VectorField":
        p = int(obj["p"])
        N = int(obj.get("N", DEFAULT_PRECISION))
        D = int(obj.get("D", DEFAULT_DEGREE))
        if "monomial" in obj:
            coeffs = [PadicNumber.from_json(c) if isinstance(c, dict)
                      else PadicNumber.from_rational(Fraction(str(c)), p, N)
                      for c in obj["monomial"]]
            return cls.from_monomial(coeffs, p, N, D)
        return cls.from_mahler(MahlerSeries.from_json(obj["series"]), D)


def _check(u: VectorField, v: VectorField):
    if u.p != v.p:
        raise DomainError(f"mismatched primes {u.p} and {v.p}")


def apply_field(a: Sequence[PadicNumber], t: Sequence[PadicNumber], p: int, D: int):
    """(a * t', dropped): the operator A = a d/dx on a polynomial, cut at degree D."""
    return poly.mul(list(a), poly.deriv(list(t)), p, D)


# ---------------------------------------------------------------------------
# brackets
# ---------------------------------------------------------------------------

def bracket(u: VectorField, v: VectorField) -> VectorField:
    """[u, v] = (a_u a_v' - a_v a_u') d/dx, computed without truncation."""
    _check(u, v)
    p = u.p
    a, b = list(u.coeffs), list(v.coeffs)
    left, _ = poly.mul(a, poly.deriv(b), p)
    right, _ = poly.mul(b, poly.deriv(a), p)
    out = poly.trim(poly.sub(left, right))
    return VectorField(p, min(u.precision, v.precision), max(u.degree, v.degree), tuple(out))


def ad_power_closed_form(xi, m: int, zeta, n: int, s: int):
    """(coefficient, exponent) of (ad xi x^m d)^s (zeta x^n d).

    The coefficient is xi^s zeta prod_{i<s} (n - m + i(m - 1)).
    """
    if s < 1:
        raise DomainError("s must be >= 1")
    c = 1
    for i in range(s):
        c *= n - m + i * (m - 1)
    return (xi**s) * zeta * c, n + s * (m - 1)


def ad_power(u: VectorField, v: VectorField, s: int) -> VectorField:
    """(ad u)^s (v) for monomial fields by the closed form."""
    _check(u, v)
    xi, m = u.as_monomial()
    zeta, n = v.as_monomial()
    c, e = ad_power_closed_form(xi, m, zeta, n, s)
    if e < 0:
        return VectorField.zero(u.p, u.precision, u.degree)
    return VectorField.from_monomial([0] * e + [c], u.p, min(u.precision, v.precision),
                                     max(u.degree, v.degree))


def iterated_bracket(u: VectorField, v: VectorField, s: int) -> VectorField:
    w = v
    for _ in range(s):
        w = bracket(u, w)
    return w


# ---------------------------------------------------------------------------
# exponential
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FlowResult:
    g_q: Diffeo
    q: PadicNumber
    terms_used: int
    precision: int
    coeffs: tuple[PadicNumber, ...] = field(repr=False, default=())

    def to_json(self) -> dict:
        return {"q": self.q.to_json(), "terms_used": self.terms_used,
                "precision": self.precision,
                "monomial": [c.to_json() for c in self.coeffs],
                "diffeo": self.g_q.to_json()}


def _check_exp_domain(A: VectorField):
    v = A.norm.exponent
    if v != INF and v < min_field_val(A.p):
        raise ConvergenceError(
            f"field norm p^-{v} exceeds the exp ball p^-{min_field_val(A.p)}",
            residual=Val(v))
    return v


def _stop_index(v, N, p, shift=0):
    """First s >= 1 with s*v + shift - (s-1)/(p-1) >= N (monotone in s)."""
    s = 1
    while Fraction(s * v + shift) - Fraction(s - 1, p - 1) < N:
        s += 1
    return s


def flow_terms(A: VectorField, D: int | None = None, N: int | None = None):
    """The polynomials t_s = A^s(x) for s below the stopping index.

    Returns (terms, error_vals): error_vals[s] bounds the Gauss valuation of
    the truncation error carried by t_s.
    """
    p = A.p
    D = D if D is not None else A.degree
    N = N if N is not None else A.precision
    v = _check_exp_domain(A)
    x = [PadicNumber.zero(p), PadicNumber.one(p, N)]
    terms, errs = [x], [INF]
    if v == INF:
        return terms, errs
    stop = _stop_index(v, N, p)
    a = list(A.coeffs)
    t, err = x, INF
    for s in range(1, stop):
        t, dropped = apply_field(a, t, p, D)
        err = min(dropped, err + v)
        terms.append(t)
        errs.append(err)
    return terms, errs


def exp_field(A: VectorField, q=1, D: int | None = None, N: int | None = None,
              level: int = 4) -> FlowResult:
    """Time-q flow g^q(x) = sum_s q^s A^s(x)/s! as a Diffeo.

    Every coefficient carries the certified absolute precision: the minimum
    of N, the first omitted term bound and the truncation error bound.
    """
    p = A.p
    D = D if D is not None else A.degree
    N = N if N is not None else A.precision
    q = _padic(q, p, N)
    if q.valuation < 0:
        raise DomainError("flow time must satisfy |q| <= 1")
    terms, errs = flow_terms(A, D, N)
    v = A.norm.exponent
    vq = q.valuation if q.valuation != INF else N
    bound = N
    g: list = []
    qs = PadicNumber.one(p, N)
    for s, (t, e) in enumerate(zip(terms, errs)):
        if s > 0:
            qs = qs * q
            if e != INF:
                bound = min(bound, e + s * vq - factorial_valuation(s, p))
        g = poly.add(g, poly.scale(t, qs / poly.factorial(s)))
    if v != INF and len(terms) > 1:
        s = len(terms)
        bound = min(bound, int(s * v + s * vq - factorial_valuation(s, p)))
    bound = int(bound)
    coeffs = [c.add_bigoh(bound) for c in g]
    displacement = poly.sub(coeffs, [PadicNumber.zero(p), PadicNumber.one(p, N)])
    displacement = [c.add_bigoh(bound) for c in displacement]
    diffeo = Diffeo.from_poly(displacement, p, precision=N, degree=D, level=level)
    return FlowResult(diffeo, q, len(terms), bound, tuple(coeffs))


def one_param_check(A: VectorField, q1, q2, level: int = 4) -> Val:
    """C(0) distance between g^(q1+q2) and g^q1 o g^q2."""
    p, N = A.p, A.precision
    q1, q2 = _padic(q1, p, N), _padic(q2, p, N)
    g12 = exp_field(A, q1 + q2, level=level).g_q
    comp = compose(exp_field(A, q1, level=level).g_q, exp_field(A, q2, level=level).g_q)
    return distance(g12, comp, 0)


def flow_ode_check(A: VectorField, q, level: int = 2) -> Val:
    """Compare the q-difference quotient of g^q with a(g^q(x)) on a grid.

    The quotient uses the increment h = p^N and is expanded exactly:
    ((q+h)^s - q^s)/h = sum_{i>=1} binom(s,i) q^(s-i) h^(i-1).
    """
    p, N = A.p, A.precision
    q = _padic(q, p, N)
    h = p**N
    res = exp_field(A, q)
    terms, _ = flow_terms(A)
    quotient: list = []
    for s, t in enumerate(terms):
        if s == 0:
            continue
        c = PadicNumber.zero(p)
        for i in range(1, s + 1):
            c = c + (q ** (s - i)) * (_binom(s, i) * h ** (i - 1))
        quotient = poly.add(quotient, poly.scale(t, c / poly.factorial(s)))
    quotient = [c.add_bigoh(res.precision) for c in quotient]
    a = list(A.coeffs)
    worst = INF
    for x in range(p**level):
        gx = poly.evaluate(list(res.coeffs), x, p)
        diff = poly.evaluate(quotient, x, p) - poly.evaluate(a, gx, p)
        worst = min(worst, diff.valuation)
    return Val(worst)


def _binom(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


# ---------------------------------------------------------------------------
# logarithm
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogStep:
    j: int
    norm_change_exponent: int | float
    field_norm_exponent: int | float
    inner_iterations: int

    def to_json(self) -> dict:
        enc = (lambda e: "inf" if e == INF else int(e))
        return {"j": self.j, "norm_change_exponent": enc(self.norm_change_exponent),
                "field_norm_exponent": enc(self.field_norm_exponent),
                "inner_iterations": self.inner_iterations}


@dataclass(frozen=True)
class LogResult:
    field: VectorField
    steps: tuple[LogStep, ...]
    p_val: Val

    def bounds_hold(self) -> bool:
        """Per-step decrease by p^-(j+1) |P| and norm preservation |A(j)| = |P|."""
        vP = self.p_val.exponent
        for st in self.steps:
            if st.norm_change_exponent < (st.j + 1) + vP:
                return False
            if st.field_norm_exponent != vP:
                return False
        return True


def _series_operator(a, b, p: int, D: int, N: int, v):
    """S_a(b) = sum_{r>=1} A^r(b) / (r+1)! with A = a d/dx, cut at degree D."""
    vb = poly.gauss_val(b).exponent
    if vb == INF or v == INF:
        return []
    out: list = []
    t = list(b)
    r = 0
    while True:
        r += 1
        if r * v + vb - Fraction(r, p - 1) >= N + vb:
            break
        t, _ = apply_field(a, t, p, D)
        if not t or poly.gauss_val(t).is_zero:
            break
        out = poly.add(out, poly.scale(t, PadicNumber.one(p, N) / poly.factorial(r + 1)))
    return out


def _displacement_poly(f: Diffeo) -> list:
    if f.poly is not None:
        return list(f.poly)
    return f.series.monomial()


def log_iteration(f: Diffeo, max_iter: int | None = None, D: int | None = None,
                  N: int | None = None, inner_cap: int = 64) -> LogResult:
    """Vector field A with exp(A) = f.

    Writing P = f - id, the field solves P = sum_{r>=0} A^r(a)/(r+1)!.  Start
    from A(0) = P; step j+1 solves the linear equation B + S_{A(j)}(B) = P by
    the Neumann iteration B <- P - S_{A(j)}(B), warm-started at A(j).
    """
    p = f.p
    N = N if N is not None else f.precision
    D = D if D is not None else f.degree
    J = max_iter if max_iter is not None else N
    if not in_W(f, 0):
        raise DomainError("diffeomorphism is not in W")
    P = poly.trim(_displacement_poly(f))[: D + 1]
    vP = poly.gauss_val(P)
    if vP.exponent == INF:
        return LogResult(VectorField.zero(p, N, D), (), vP)
    if vP.exponent < min_field_val(p):
        raise DomainError(f"|f - id| = p^-{vP.exponent} lies outside the series ball")
    steps = []
    A = list(P)
    for j in range(J):
        v = poly.gauss_val(A).exponent
        B = list(A)
        inner = 0
        while True:
            inner += 1
            nxt = poly.sub(P, _series_operator(A, B, p, D, N, v))
            change = poly.gauss_val(poly.sub(nxt, B))
            B = nxt
            if change.is_zero:
                break
            if inner >= inner_cap:
                raise ConvergenceError("Neumann iteration stagnated", residual=change)
        step_change = poly.gauss_val(poly.sub(B, A))
        A = B
        steps.append(LogStep(j, step_change.exponent, poly.gauss_val(A).exponent, inner))
        if step_change.is_zero:
            break
    else:
        if not Val(steps[-1].norm_change_exponent) <= Val(min(J, N)):
            raise ConvergenceError("log iteration did not settle",
                                   residual=Val(steps[-1].norm_change_exponent))
    field_ = VectorField(p, N, D, tuple(poly.trim(A)))
    return LogResult(field_, tuple(steps), vP)


def log_diffeo(f: Diffeo, max_iter: int | None = None, **kw) -> VectorField:
    return log_iteration(f, max_iter, **kw).field


# ---------------------------------------------------------------------------
# monomial flows
# ---------------------------------------------------------------------------

def gamma(k: int, m: int) -> int:
    """prod_{j=1}^{k-1} (jm - j + 1); the empty product gives gamma(1, m) = 1."""
    out = 1
    for j in range(1, k):
        out *= j * m - j + 1
    return out


def monomial_flow_poly(m: int, q, K: int, p: int, precision: int = DEFAULT_PRECISION) -> list:
    """Monomial coefficients of g^q_m(x) = sum_k q^k gamma(k,m)/k! x^(k(m-1)+1)."""
    if m < 0 or K < 0:
        raise DomainError("m and K must be >= 0")
    q = _padic(q, p, precision)
    if q.valuation < 0:
        raise DomainError("|q| must be <= 1")
    out: dict[int, PadicNumber] = {}
    vals = []
    for k in range(K + 1):
        e = k * (m - 1) + 1
        g = gamma(k, m)
        if e < 0 or g == 0:
            continue
        c = (q**k) * Fraction(g, poly.factorial(k))
        vals.append(c.valuation)
        out[e] = out.get(e, PadicNumber.zero(p)) + c
    if m >= 2 and len(vals) >= 4:
        half = len(vals) // 2
        if min(vals[half:]) <= min(vals[1:half]):
            raise ConvergenceError("monomial flow terms do not decay",
                                   residual=Val(min(vals[half:])))
    deg = max(out) if out else 0
    return [out.get(i, PadicNumber.zero(p)) for i in range(deg + 1)]


def monomial_flow(m: int, q, K: int, p: int, precision: int = DEFAULT_PRECISION) -> MahlerSeries:
    """The closed-form flow of x^m d/dx at time q as a Mahler series."""
    b = monomial_flow_poly(m, q, K, p, precision)
    return MahlerSeries.from_monomial(b, p, precision)


# ---------------------------------------------------------------------------
# Campbell-Hausdorff
# ---------------------------------------------------------------------------

def bch(u: VectorField, v: VectorField, order: int = MAX_BCH_ORDER) -> VectorField:
    """log(e^u e^v) through the given order in brackets (order <= 4)."""
    if not 1 <= order <= MAX_BCH_ORDER:
        raise DomainError(f"BCH order must be in 1..{MAX_BCH_ORDER}")
    w = u + v
    if order >= 2:
        uv = bracket(u, v)
        w = w + uv.scale(Fraction(1, 2))
    if order >= 3:
        w = w + bracket(u, uv).scale(Fraction(1, 12)) + bracket(v, bracket(v, u)).scale(Fraction(1, 12))
    if order >= 4:
        w = w - bracket(v, bracket(u, uv)).scale(Fraction(1, 24))
    return w


def bch_discrepancy(u: VectorField, v: VectorField, order: int = MAX_BCH_ORDER,
                    level: int = 4) -> Val:
    """C(0) distance between the flow of BCH(u, v) and the product flow.

    As operators on functions e^u e^v phi = phi o g_v o g_u, so the product
    is compared with compose(g_v, g_u).
    """
    w = bch(u, v, order)
    gw = exp_field(w, 1, level=level).g_q
    prod = compose(exp_field(v, 1, level=level).g_q, exp_field(u, 1, level=level).g_q)
    return distance(gw, prod, 0)


# ---------------------------------------------------------------------------
# commutators
# ---------------------------------------------------------------------------

def unit_field(p: int, precision: int = DEFAULT_PRECISION, degree: int = DEFAULT_DEGREE):
    """The constant field d/dx."""
    return VectorField.from_monomial([1], p, precision, degree)


def solve_commutator(C: VectorField, min_absprec: int = 1) -> VectorField:
    """A with [A, d/dx] = C, namely A = -(antiderivative of c) d/dx."""
    b = poly.antiderivative(list(C.coeffs))
    for k, c in enumerate(b):
        if c.absprec < min_absprec:
            raise PrecisionError(f"precision exhausted at degree {k} (absprec {c.absprec})")
    return C._like([-c for c in b])


# ---------------------------------------------------------------------------
# sampling
# ---------------------------------------------------------------------------

def random_field(rng: random.Random, p: int, precision: int = DEFAULT_PRECISION,
                 degree: int = DEFAULT_DEGREE, max_deg: int = 3, scale_val: int = 2) -> VectorField:
    """a(x) = p^scale_val * (random integer polynomial of degree <= max_deg)."""
    coeffs = [p**scale_val * rng.randrange(p**4) for _ in range(max_deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[0] = p**scale_val
    coeffs[rng.randrange(max_deg + 1)] = p**scale_val * (1 + p * rng.randrange(p**3))
    return VectorField.from_monomial(coeffs, p, precision, degree)
