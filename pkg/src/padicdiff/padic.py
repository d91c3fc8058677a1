"""Fixed-precision arithmetic in Q_p with exact valuation bookkeeping.

A nonzero element is stored as ``p**valuation * unit`` where ``unit`` is a
p-adic unit known modulo ``p**precision`` (relative precision).  Zero has
valuation ``INF``; for zero the ``precision`` field holds the *absolute*
precision, i.e. the value is only known to be ``0 mod p**precision``.  An exact
zero carries ``precision == INF``.

Norms are never floats: they are reported as :class:`Val` objects holding the
integer exponent ``w`` of ``p**(-w)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import DomainError

INF = math.inf
DEFAULT_PRECISION = 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def vp_int(n: int, p: int):
    """p-adic valuation of an integer (INF for 0)."""
    if n == 0:
        return INF
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp(x, p: int):
    """Valuation of an int, Fraction or PadicNumber.

    Zeros (exact or to precision) give INF.
    """
    if isinstance(x, PadicNumber):
        return x.valuation
    if isinstance(x, Fraction):
        if x == 0:
            return INF
        return vp_int(x.numerator, p) - vp_int(x.denominator, p)
    return vp_int(x, p)


def factorial_valuation(k: int, p: int) -> int:
    """v_p(k!) by Legendre's digit-sum formula."""
    if k < 0:
        raise DomainError("factorial_valuation needs k >= 0")
    s, n = 0, k
    while n:
        s += n % p
        n //= p
    return (k - s) // (p - 1)


@total_ordering
@dataclass(frozen=True, slots=True)
class Val:
    """The norm value ``p**(-exponent)``; ordered by norm, not by exponent."""

    exponent: int | float

    def __lt__(self, other):
        if not isinstance(other, Val):
            return NotImplemented
        return self.exponent > other.exponent

    def __eq__(self, other):
        if not isinstance(other, Val):
            return NotImplemented
        return self.exponent == other.exponent

    def __hash__(self):
        return hash(self.exponent)

    @property
    def is_zero(self) -> bool:
        return self.exponent == INF

    @classmethod
    def of(cls, x, p: int | None = None) -> "Val":
        """Norm of a scalar; a zero known only to some precision counts as 0."""
        if isinstance(x, PadicNumber):
            return cls(x.valuation)
        return cls(vp(x, p))

    def to_json(self):
        return "inf" if self.exponent == INF else int(self.exponent)

    @classmethod
    def from_json(cls, obj) -> "Val":
        return cls(INF if obj in ("inf", None) else int(obj))

    def __str__(self):
        if self.exponent == INF:
            return "0"
        return f"p^{-self.exponent}"


def sup_val(vals) -> Val:
    """Largest norm in an iterable of Val (the ultrametric sup); empty -> 0."""
    e = INF
    for v in vals:
        if v.exponent < e:
            e = v.exponent
    return Val(e)


@dataclass(frozen=True, slots=True)
class PadicNumber:
    p: int
    precision: int | float
    valuation: int | float
    unit: int

    # -- construction -------------------------------------------------
    @classmethod
    def zero(cls, p: int, absprec=INF) -> "PadicNumber":
        return cls(p, absprec, INF, 0)

    @classmethod
    def from_rational(cls, x, p: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        """Element of Q_p from an int or Fraction, with relative precision."""
        if isinstance(x, PadicNumber):
            return x
        if precision < 1:
            raise DomainError("precision must be positive")
        if isinstance(x, int):
            if x == 0:
                return cls.zero(p)
            v = vp_int(x, p)
            mod = p**precision
            return cls(p, precision, v, (x // p**v) % mod)
        x = Fraction(x)
        if x == 0:
            return cls.zero(p)
        num, den = x.numerator, x.denominator
        vn, vd = vp_int(num, p), vp_int(den, p)
        num //= p**vn
        den //= p**vd
        mod = p**precision
        unit = (num * pow(den, -1, mod)) % mod
        return cls(p, precision, vn - vd, unit)

    from_int = from_rational

    @classmethod
    def one(cls, p: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(p, precision, 0, 1)

    # -- basic queries ------------------------------------------------
    @property
    def absprec(self):
        if self.valuation == INF:
            return self.precision
        return self.valuation + self.precision

    def is_zero(self) -> bool:
        return self.valuation == INF

    def is_exact_zero(self) -> bool:
        return self.valuation == INF and self.precision == INF

    @property
    def norm(self) -> Val:
        return Val(self.valuation)

    def val_lower_bound(self):
        """Valuation if nonzero; for a zero, the absolute precision."""
        return self.valuation if self.valuation != INF else self.precision

    def to_fraction(self) -> Fraction:
        if self.valuation == INF:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def residue(self, k: int) -> int:
        """Integer representative in [0, p**k) of an element of Z_p."""
        if k <= 0:
            return 0
        if self.valuation == INF:
            if self.precision < k:
                raise DomainError(f"zero known only mod p^{self.precision}, need p^{k}")
            return 0
        if self.valuation < 0:
            raise DomainError("element is not in Z_p")
        if self.absprec < k:
            raise DomainError(f"value known only mod p^{self.absprec}, need p^{k}")
        if self.valuation >= k:
            return 0
        return (self.unit * self.p**self.valuation) % self.p**k

    def add_bigoh(self, absprec) -> "PadicNumber":
        """Reduce absolute precision to at most ``absprec``."""
        if absprec >= self.absprec:
            return self
        if self.valuation >= absprec:
            return PadicNumber.zero(self.p, absprec)
        prec = absprec - self.valuation
        return PadicNumber(self.p, prec, self.valuation, self.unit % self.p**prec)

    # -- coercion -----------------------------------------------------
    def _check(self, other: "PadicNumber"):
        if other.p != self.p:
            raise DomainError(f"mismatched primes {self.p} and {other.p}")

    def _coerce_add(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicNumber.zero(self.p)
            a = self.absprec
            if a == INF:
                return PadicNumber.from_rational(other, self.p, DEFAULT_PRECISION)
            v = vp(other, self.p)
            if v >= a:
                return PadicNumber.zero(self.p, a)
            return PadicNumber.from_rational(other, self.p, a - v)
        return NotImplemented

    def _coerce_mul(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return PadicNumber.zero(self.p)
            prec = self.precision if self.valuation != INF else DEFAULT_PRECISION
            if prec == INF:
                prec = DEFAULT_PRECISION
            return PadicNumber.from_rational(other, self.p, prec)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        y = self._coerce_add(other)
        if y is NotImplemented:
            return y
        x, p = self, self.p
        a = min(x.absprec, y.absprec)
        v = min(x.valuation, y.valuation)
        if v == INF or v >= a:
            return PadicNumber.zero(p, a)
        s = 0
        if x.valuation != INF:
            s += x.unit * p ** (x.valuation - v)
        if y.valuation != INF:
            s += y.unit * p ** (y.valuation - v)
        s %= p ** (a - v)
        if s == 0:
            return PadicNumber.zero(p, a)
        w = 0
        while s % p == 0:
            s //= p
            w += 1
        return PadicNumber(p, a - v - w, v + w, s)

    __radd__ = __add__

    def __neg__(self):
        if self.valuation == INF:
            return self
        return PadicNumber(self.p, self.precision, self.valuation,
                           (-self.unit) % self.p**self.precision)

    def __sub__(self, other):
        y = self._coerce_add(other)
        if y is NotImplemented:
            return y
        return self + (-y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        y = self._coerce_mul(other)
        if y is NotImplemented:
            return y
        x, p = self, self.p
        if x.valuation == INF or y.valuation == INF:
            if x.valuation == INF and y.valuation == INF:
                a = x.precision + y.precision
            elif x.valuation == INF:
                a = x.precision + y.valuation
            else:
                a = y.precision + x.valuation
            return PadicNumber.zero(p, a)
        prec = min(x.precision, y.precision)
        return PadicNumber(p, prec, x.valuation + y.valuation,
                           (x.unit * y.unit) % p**prec)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.valuation == INF:
            raise ZeroDivisionError("p-adic zero has no inverse")
        m = self.p**self.precision
        return PadicNumber(self.p, self.precision, -self.valuation, pow(self.unit, -1, m))

    def __truediv__(self, other):
        y = self._coerce_mul(other)
        if y is NotImplemented:
            return y
        return self * y.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if n == 0:
            prec = self.precision if self.valuation != INF else DEFAULT_PRECISION
            return PadicNumber.one(self.p, prec if prec != INF else DEFAULT_PRECISION)
        if self.valuation == INF:
            return PadicNumber.zero(self.p, self.precision * n)
        m = self.p**self.precision
        return PadicNumber(self.p, self.precision, self.valuation * n, pow(self.unit, n, m))

    def __eq__(self, other):
        """Equality up to the joint precision of both operands."""
        if isinstance(other, PadicNumber) and other.p != self.p:
            return False
        if not isinstance(other, (PadicNumber, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    # -- serialization --------------------------------------------------
    def to_json(self) -> dict:
        def enc(v):
            return "inf" if v == INF else int(v)

        return {"p": self.p, "precision": enc(self.precision),
                "valuation": enc(self.valuation), "unit": str(self.unit)}

    @classmethod
    def from_json(cls, obj: dict) -> "PadicNumber":
        def dec(v):
            return INF if v == "inf" else int(v)

        p = int(obj["p"])
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        x = cls(p, dec(obj["precision"]), dec(obj["valuation"]), int(obj["unit"]))
        if x.valuation != INF and (x.unit % p == 0 or not 0 <= x.unit < p**x.precision):
            raise DomainError("unit must be a p-adic unit reduced mod p^precision")
        return x

    def __repr__(self):
        if self.valuation == INF:
            return "0" if self.precision == INF else f"O({self.p}^{self.precision})"
        return f"{self.unit}*{self.p}^{self.valuation} + O({self.p}^{self.absprec})"


def _ilog(n: int, p: int) -> int:
    """floor(log_p n), an upper bound for v_p(n)."""
    k = 0
    while p ** (k + 1) <= n:
        k += 1
    return k


def _exp_domain_ok(v, p: int) -> bool:
    return v >= (2 if p == 2 else 1)


def exp_scalar(x: PadicNumber) -> PadicNumber:
    """p-adic exponential on its convergence disc.

    The result is correct modulo ``p**x.absprec``; precision lost through the
    ``n!`` denominators is tracked by the relative-precision arithmetic.
    """
    p = x.p
    if x.valuation == INF:
        a = x.precision if x.precision != INF else DEFAULT_PRECISION
        return PadicNumber.one(p, a)
    if not _exp_domain_ok(x.valuation, p):
        raise DomainError(f"exp needs v(x) >= {2 if p == 2 else 1}, got {x.valuation}")
    target = x.absprec
    term = PadicNumber.one(p, target)
    total = term
    n = 0
    while True:
        n += 1
        # lower bound for v(x^n / n!) using v(n!) <= (n-1)/(p-1)
        if n * x.valuation - (n - 1) / (p - 1) >= target:
            break
        term = term * x / n
        total = total + term
    return total.add_bigoh(target)


def log_scalar(y: PadicNumber) -> PadicNumber:
    """p-adic logarithm on 1 + pZ_p."""
    p = y.p
    z = y - 1
    if z.valuation == INF:
        return PadicNumber.zero(p, z.precision)
    if z.valuation < 1:
        raise DomainError(f"log needs v(y - 1) >= 1, got {z.valuation}")
    target = z.absprec
    total = PadicNumber.zero(p)
    power = z
    n = 1
    while True:
        if n > 1 and n * z.valuation - _ilog(n, p) >= target:
            break
        term = power / n
        total = total + (term if n % 2 else -term)
        power = power * z
        n += 1
    return total.add_bigoh(target)
