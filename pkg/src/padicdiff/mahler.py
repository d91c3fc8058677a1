"""Continuous functions Z_p -> Q_p in the binomial (Mahler) basis.

Covers coefficient extraction by forward differences, evaluation, the
recursive difference quotients, grid suprema for the C(t) pseudonorms and
the basis norms J(t, m), the analyticity test and antidifferentiation.
"""

from __future__ import annotations

import math
from fractions import Fraction
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Callable, Sequence

from . import poly
from .errors import DomainError, PrecisionError
from .padic import INF, PadicNumber, Val, factorial_valuation, sup_val, vp

MAX_T = 3
DEFAULT_DEGREE = 32
DEFAULT_LEVEL = 4


def check_t(t: int, max_t: int = MAX_T) -> int:
    if not isinstance(t, int) or t < 0 or t > max_t:
        raise DomainError(f"smoothness order must be an integer in [0, {max_t}], got {t!r}")
    return t


def _to_padic(x, p: int, precision: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        if x.p != p:
            raise DomainError(f"mismatched primes {x.p} and {p}")
        return x
    return PadicNumber.from_rational(x, p, precision)


@dataclass(frozen=True)
class MahlerSeries:
    """Truncated expansion sum_{m<=D} a_m binom(x, m) plus a tail bound.

    ``tail_val`` bounds |a_m| for m > D; ``Val(INF)`` means the function is
    exactly the stored polynomial.
    """

    p: int
    precision: int
    coeffs: tuple[PadicNumber, ...]
    tail_val: Val = field(default=Val(INF))

    @classmethod
    def from_values(cls, coeffs, p: int, precision: int, tail_val: Val = Val(INF)):
        return cls(p, precision, tuple(_to_padic(c, p, precision) for c in coeffs), tail_val)

    @classmethod
    def from_monomial(cls, b, p: int, precision: int, tail_val: Val = Val(INF)):
        b = [_to_padic(c, p, precision) for c in b]
        return cls(p, precision, tuple(poly.monomial_to_mahler(b)), tail_val)

    @classmethod
    def zero(cls, p: int, precision: int):
        return cls(p, precision, ())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def absprec(self):
        """Smallest absolute precision among the stored coefficients."""
        return poly.absprec(self.coeffs)

    def coeff(self, m: int) -> PadicNumber:
        if m < len(self.coeffs):
            return self.coeffs[m]
        return PadicNumber.zero(self.p)

    def sup_norm(self) -> Val:
        """max_m |a_m|, including the tail bound (the C(0) norm)."""
        return max(poly.gauss_val(self.coeffs), self.tail_val)

    def is_integral(self) -> bool:
        """True iff the function maps Z_p into Z_p."""
        return self.sup_norm() <= Val(0)

    def monomial(self) -> list[PadicNumber]:
        return poly.mahler_to_monomial(list(self.coeffs))

    def _combine(self, other: "MahlerSeries", sign: int) -> "MahlerSeries":
        if other.p != self.p:
            raise DomainError("mismatched primes")
        b = list(other.coeffs) if sign > 0 else [-c for c in other.coeffs]
        return MahlerSeries(self.p, min(self.precision, other.precision),
                            tuple(poly.add(list(self.coeffs), b)),
                            max(self.tail_val, other.tail_val))

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "MahlerSeries":
        tail = self.tail_val
        if tail.exponent != INF:
            tail = Val(tail.exponent + vp(c, self.p))
        return MahlerSeries(self.p, self.precision, tuple(a * c for a in self.coeffs), tail)

    def truncate(self, D: int) -> "MahlerSeries":
        if D >= self.degree:
            return self
        dropped = sup_val(Val(c.valuation) for c in self.coeffs[D + 1:])
        return MahlerSeries(self.p, self.precision, self.coeffs[: D + 1],
                            max(self.tail_val, dropped))

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.precision, "D": self.degree,
                "coeffs": [c.to_json() for c in self.coeffs],
                "tail_val": self.tail_val.to_json()}

    @classmethod
    def from_json(cls, obj: dict) -> "MahlerSeries":
        p = int(obj["p"])
        N = int(obj.get("N", obj.get("precision", 20)))
        coeffs = []
        for c in obj["coeffs"]:
            if isinstance(c, dict):
                coeffs.append(PadicNumber.from_json(c))
            else:
                coeffs.append(PadicNumber.from_rational(_parse_rational(c), p, N))
        return cls(p, N, tuple(coeffs), Val.from_json(obj.get("tail_val", "inf")))

    def __call__(self, x):
        return evaluate(self, x)


def _parse_rational(s):
    return Fraction(str(s))


# ---------------------------------------------------------------------------
# coefficient extraction and evaluation
# ---------------------------------------------------------------------------

def forward_differences(values: Sequence) -> list:
    """[Delta^m f(0) for m < len(values)] from f(0), f(1), ..."""
    row = list(values)
    out = []
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def mahler_coeffs(values, D: int, p: int, precision: int = 20,
                  tail_val: Val | None = None) -> MahlerSeries:
    """Mahler coefficients a_m = Delta^m f(0) for m <= D.

    ``values`` is a callable on nonnegative integers or a table f(0), f(1), ...
    A table longer than D + 1 also yields an observed tail bound from the
    extra coefficients.
    """
    if D < 0:
        raise DomainError("degree bound must be >= 0")
    if callable(values):
        table = [values(k) for k in range(D + 1)]
    else:
        table = list(values)
        if len(table) <= D:
            raise DomainError(f"table of length {len(table)} cannot determine {D + 1} coefficients")
    table = [_to_padic(v, p, precision) for v in table]
    diffs = forward_differences(table)
    coeffs = diffs[: D + 1]
    if tail_val is None:
        tail_val = sup_val(Val(c.valuation) for c in diffs[D + 1:])
    return MahlerSeries(p, precision, tuple(coeffs), tail_val)


def _binomials(x: PadicNumber, D: int) -> list[PadicNumber]:
    out = [PadicNumber.one(x.p, max(x.precision, 1) if x.valuation != INF else 20)]
    for m in range(1, D + 1):
        out.append(out[-1] * (x - (m - 1)) / m)
    return out


def evaluate(s: MahlerSeries, x) -> PadicNumber:
    """sum_m a_m binom(x, m), correct to min(precision, tail bound)."""
    p = s.p
    if isinstance(x, int):
        acc = PadicNumber.zero(p)
        if x >= 0:
            for m, a in enumerate(s.coeffs):
                if m > x:
                    break
                acc = acc + a * math.comb(x, m)
        else:
            for m, a in enumerate(s.coeffs):
                acc = acc + a * _int_binom(x, m)
    else:
        x = _to_padic(x, p, s.precision)
        if x.valuation < 0:
            raise DomainError("evaluation point must satisfy |x| <= 1")
        acc = PadicNumber.zero(p)
        for a, b in zip(s.coeffs, _binomials(x, s.degree)):
            acc = acc + a * b
    if s.tail_val.exponent != INF:
        acc = acc.add_bigoh(s.tail_val.exponent)
    return acc


def _int_binom(x: int, m: int) -> int:
    num = 1
    for i in range(m):
        num *= x - i
    return num // math.factorial(m)


def difference_quotient(f, order: int, x, hs: Sequence, zetas: Sequence):
    """The recursive quotient Phi^n f(x; h_1..h_n; zeta_1..zeta_n) (integer order).

    Phi^0 f = f and
    Phi^n f(x; ...) = (Phi^{n-1} f(x + zeta_n h_n; ...) - Phi^{n-1} f(x; ...)) / zeta_n.
    """
    if len(hs) < order or len(zetas) < order:
        raise DomainError("need one increment and one scalar per order")
    func = f.__call__ if isinstance(f, MahlerSeries) else f
    for h, z in zip(hs[:order], zetas[:order]):
        if h == 0 or z == 0:
            raise DomainError("zero increment in a difference quotient")

    def phi(n, y):
        if n == 0:
            return func(y)
        h, z = hs[n - 1], zetas[n - 1]
        diff = phi(n - 1, y + z * h) - phi(n - 1, y)
        if isinstance(diff, PadicNumber) or isinstance(z, PadicNumber):
            return diff / z
        return Fraction(diff) / Fraction(z)

    return phi(order, x)


# ---------------------------------------------------------------------------
# grid suprema
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NormReport:
    value: Val
    level: int
    stabilized: bool


def increment_set(p: int, level: int) -> list[int]:
    """Increments zeta*h with zeta in 1..p^L-1 and h in {1, p, .., p^(L-1)}.

    Unit factors of h are absorbed into zeta; only the products matter for the
    normalized quotient |Phi^v f| / |h_1 ... h_v|.
    """
    q = p**level
    return sorted({z * p**k for z in range(1, q) for k in range(level)})


def _valuation(x, p: int):
    if isinstance(x, PadicNumber):
        return x.valuation
    return vp(x, p)


def _grid_sup(value, p: int, t: int, level: int) -> Val:
    cache = {}

    def f(k):
        r = cache.get(k)
        if r is None:
            r = cache[k] = value(k)
        return r

    q = p**level
    best = INF
    for x in range(q):
        best = min(best, _valuation(f(x), p))
    if t >= 1:
        deltas = increment_set(p, level)
        dv = {d: vp(d, p) for d in deltas}
        for v in range(1, t + 1):
            for combo in combinations_with_replacement(deltas, v):
                denom = sum(dv[d] for d in combo)
                subsets = _signed_subset_sums(combo)
                for x in range(q):
                    acc = 0
                    for sgn, off in subsets:
                        acc = acc + (f(x + off) if sgn > 0 else -f(x + off))
                    e = _valuation(acc, p)
                    if e != INF and e - denom < best:
                        best = e - denom
    return Val(best)


def _signed_subset_sums(combo):
    v = len(combo)
    out = []
    for mask in range(1 << v):
        off = 0
        bits = 0
        for i in range(v):
            if mask >> i & 1:
                off += combo[i]
                bits += 1
        out.append((1 if (v - bits) % 2 == 0 else -1, off))
    return out


def grid_norm(value: Callable[[int], object], p: int, t: int, level: int = DEFAULT_LEVEL) -> NormReport:
    """C(t) grid supremum of a function given by its values at integers."""
    check_t(t)
    if level < 1:
        raise DomainError("grid level must be >= 1")
    val = _grid_sup(value, p, t, level)
    stable = level >= 2 and _grid_sup(value, p, t, level - 1) == val
    return NormReport(val, level, stable)


def norm_Ct(f, t: int, level: int = DEFAULT_LEVEL, p: int | None = None) -> NormReport:
    """Grid supremum of |Phi^v f| / |h_1...h_v| over v <= t.

    ``f`` is a MahlerSeries or a callable on integers (then ``p`` is required).
    """
    if isinstance(f, MahlerSeries):
        return grid_norm(lambda k: evaluate(f, k), f.p, t, level)
    if p is None:
        raise DomainError("p is required for a callable")
    return grid_norm(f, p, t, level)


@lru_cache(maxsize=None)
def basis_norm_J(t: int, m: int, p: int, level: int = DEFAULT_LEVEL) -> Val:
    """Grid C(t) norm of the basis function binom(x, m)."""
    check_t(t)
    if m < 0:
        raise DomainError("degree must be >= 0")
    if t == 0:
        return Val(0)
    return grid_norm(lambda k: _int_binom(k, m), p, t, level).value


# ---------------------------------------------------------------------------
# analyticity
# ---------------------------------------------------------------------------

def _scaled_exponents(s: MahlerSeries) -> list:
    """v(a_m / m!) for each stored coefficient (INF for zeros)."""
    return [c.valuation - factorial_valuation(m, s.p) if c.valuation != INF else INF
            for m, c in enumerate(s.coeffs)]


def is_analytic(s: MahlerSeries) -> tuple[bool, Val]:
    """Truncated test of |a_m / m!| -> 0 (analytic on the closed unit disc).

    The suffix minima of v(a_m / m!) must increase strictly between the first
    and the second half of the stored range; an exactly polynomial series
    (tail bound INF) is always analytic.  The margin is the gained decay.
    """
    e = _scaled_exponents(s)
    if s.tail_val.exponent == INF:
        return True, Val(INF)
    if not e:
        return False, Val(-INF)
    suffix = list(e)
    for i in range(len(suffix) - 2, -1, -1):
        suffix[i] = min(suffix[i], suffix[i + 1])
    mid = (len(e) + 1) // 2
    head = suffix[0]
    tail = suffix[mid] if mid < len(e) else INF
    gain = tail - head
    if gain == INF or math.isnan(gain):
        return True, Val(INF)
    return gain > 0, Val(gain)


def analytic_norm_pair(s: MahlerSeries) -> tuple[Val, Val]:
    """(sup_m |a_m / m!|, sup_k |b_k|) with b the monomial coefficients."""
    ok, _ = is_analytic(s)
    if not ok:
        raise DomainError("series fails the analyticity test")
    scaled = sup_val(Val(x) for x in _scaled_exponents(s))
    mono = poly.gauss_val(s.monomial())
    return scaled, mono


# ---------------------------------------------------------------------------
# calculus
# ---------------------------------------------------------------------------

def derivative(s: MahlerSeries) -> MahlerSeries:
    """Termwise derivative computed in the monomial basis."""
    b = poly.deriv(s.monomial())
    return MahlerSeries(s.p, s.precision, tuple(poly.monomial_to_mahler(b)), s.tail_val)


def antiderivative(s: MahlerSeries, min_absprec: int = 1) -> MahlerSeries:
    """Series S with S' = s and S(0) = 0.

    Raises PrecisionError naming the first degree whose coefficient is no
    longer known to absolute precision ``min_absprec``.
    """
    b = poly.antiderivative(s.monomial())
    coeffs = poly.monomial_to_mahler(b)
    for m, c in enumerate(coeffs):
        if c.absprec < min_absprec:
            raise PrecisionError(f"precision exhausted at degree {m} (absprec {c.absprec})")
    return MahlerSeries(s.p, s.precision, tuple(coeffs), s.tail_val)
