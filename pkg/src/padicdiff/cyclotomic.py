"""Exact arithmetic in the cyclotomic field Q(zeta_e).

Elements are coefficient vectors in the basis 1, zeta, .., zeta^(phi(e)-1),
reduced modulo the e-th cyclotomic polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    """Exact quotient of integer polynomials (coefficient lists, low degree first)."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        out[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Phi_n as integer coefficients, low degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _field(e: int):
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    # red[j] = coefficients of x^j mod Phi_e for j < max(e, 2 deg)
    red = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(max(e, 2 * deg)):
        red.append(tuple(cur))
        top = cur[-1]
        nxt = [Fraction(0)] + cur[:-1]
        if top:
            nxt = [c - top * phi[i] for i, c in enumerate(nxt)]
        cur = nxt
    return deg, tuple(red)


class Cyclotomic:
    """An element of Q(zeta_e)."""

    __slots__ = ("e", "c")

    def __init__(self, e: int, coeffs):
        deg, _ = _field(e)
        c = tuple(Fraction(x) for x in coeffs)
        if len(c) < deg:
            c = c + (Fraction(0),) * (deg - len(c))
        elif len(c) > deg:
            c = _reduce(e, c)
        self.e = e
        self.c = c

    @classmethod
    def rational(cls, e: int, x) -> "Cyclotomic":
        return cls(e, [x])

    @classmethod
    def root(cls, e: int, k: int) -> "Cyclotomic":
        """zeta_e^k."""
        _, red = _field(e)
        return cls(e, red[k % e])

    @classmethod
    def from_multiplicities(cls, e: int, mult) -> "Cyclotomic":
        """sum_k mult[k] zeta^k."""
        deg, red = _field(e)
        acc = [Fraction(0)] * deg
        for k, m in enumerate(mult):
            if m:
                for i, r in enumerate(red[k % e]):
                    acc[i] += m * r
        return cls(e, acc)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.e != self.e:
                raise ValueError(f"mixed cyclotomic orders {self.e} and {other.e}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.e, [other])
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, [-a for a in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        deg = len(self.c)
        prod = [Fraction(0)] * (2 * deg - 1) if deg else []
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return Cyclotomic(self.e, prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.e, [a / other for a in self.c])
        return NotImplemented

    def conj(self) -> "Cyclotomic":
        """Image under zeta -> zeta^-1 (complex conjugation)."""
        deg, red = _field(self.e)
        acc = [Fraction(0)] * deg
        for i, a in enumerate(self.c):
            if a:
                for k, r in enumerate(red[(-i) % self.e]):
                    acc[k] += a * r
        return Cyclotomic(self.e, acc)

    def is_rational(self) -> bool:
        return all(x == 0 for x in self.c[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.c[0] if self.c else Fraction(0)

    def is_zero(self) -> bool:
        return not any(self.c)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.e, self.c))

    def to_json(self) -> list:
        return [str(x) for x in self.c]

    def __repr__(self):
        terms = []
        for i, a in enumerate(self.c):
            if a:
                terms.append(f"{a}" if i == 0 else f"{a}*z^{i}")
        return " + ".join(terms) if terms else "0"


def _reduce(e: int, coeffs) -> tuple[Fraction, ...]:
    deg, red = _field(e)
    acc = [Fraction(0)] * deg
    for j, a in enumerate(coeffs):
        if a:
            r = red[j] if j < len(red) else _power(e, j)
            for i, x in enumerate(r):
                acc[i] += a * x
    return tuple(acc)


def _power(e: int, j: int):
    _, red = _field(e)
    return red[j % e]
