"""Univariate polynomials over Q_p in the monomial basis.

Polynomials are plain lists of :class:`PadicNumber` (index = degree).  These
helpers back the Mahler-space conversions and the vector-field algebra.
"""

from __future__ import annotations

from functools import lru_cache

from .padic import INF, PadicNumber, Val, sup_val


@lru_cache(maxsize=None)
def stirling2_row(k: int) -> tuple[int, ...]:
    """S(k, m) for m = 0..k (second kind)."""
    if k == 0:
        return (1,)
    prev = stirling2_row(k - 1)
    row = [0] * (k + 1)
    for m in range(1, k + 1):
        left = prev[m - 1]
        right = prev[m] if m < len(prev) else 0
        row[m] = left + m * right
    return tuple(row)


@lru_cache(maxsize=None)
def stirling1_row(m: int) -> tuple[int, ...]:
    """Signed s(m, k) for k = 0..m: x(x-1)...(x-m+1) = sum_k s(m,k) x^k."""
    if m == 0:
        return (1,)
    prev = stirling1_row(m - 1)
    row = [0] * (m + 1)
    for k in range(m + 1):
        a = prev[k - 1] if k >= 1 else 0
        b = prev[k] if k < len(prev) else 0
        row[k] = a - (m - 1) * b
    return tuple(row)


@lru_cache(maxsize=None)
def factorial(n: int) -> int:
    return 1 if n < 2 else n * factorial(n - 1)


def zero(p: int):
    return PadicNumber.zero(p)


def trim(a: list) -> list:
    """Drop trailing exact zeros."""
    a = list(a)
    while a and a[-1].is_exact_zero():
        a.pop()
    return a


def gauss_val(a) -> Val:
    """Gauss norm max |a_k| of a coefficient list."""
    return sup_val(Val(c.valuation) for c in a)


def absprec(a):
    """Smallest absolute precision among the coefficients."""
    return min((c.absprec for c in a), default=INF)


def add(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        if i >= len(a):
            out.append(b[i])
        elif i >= len(b):
            out.append(a[i])
        else:
            out.append(a[i] + b[i])
    return out


def sub(a: list, b: list) -> list:
    return add(a, [-c for c in b])


def scale(a: list, c) -> list:
    return [x * c for x in a]


def mul(a: list, b: list, p: int, trunc: int | None = None):
    """Product truncated above degree ``trunc``.

    Returns ``(poly, dropped)`` where ``dropped`` is the valuation lower bound
    of the discarded coefficients (INF if nothing nonzero was dropped).
    """
    if not a or not b:
        return [], INF
    n = len(a) + len(b) - 1
    keep = n if trunc is None else min(n, trunc + 1)
    acc = [None] * n
    for i, x in enumerate(a):
        if x.is_exact_zero():
            continue
        for j, y in enumerate(b):
            if y.is_exact_zero():
                continue
            k = i + j
            if k >= keep:
                # only a valuation bound is needed for dropped terms
                bound = x.val_lower_bound() + y.val_lower_bound()
                acc[k] = bound if acc[k] is None else min(acc[k], bound)
                continue
            t = x * y
            acc[k] = t if acc[k] is None else acc[k] + t
    out = [c if c is not None else zero(p) for c in acc[:keep]]
    dropped = INF
    for c in acc[keep:]:
        if c is not None:
            dropped = min(dropped, c)
    return out, dropped


def deriv(a: list) -> list:
    return [a[k] * k for k in range(1, len(a))]


def antiderivative(a: list) -> list:
    """Termwise integral with zero constant term."""
    if not a:
        return []
    p = a[0].p
    return [zero(p)] + [a[k] / (k + 1) for k in range(len(a))]


def evaluate(a: list, x, p: int) -> PadicNumber:
    """Horner evaluation; ``x`` may be an int or a PadicNumber."""
    acc = zero(p)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def monomial_to_mahler(b: list) -> list:
    """Mahler coefficients of sum_k b_k x^k; integer multipliers, no loss."""
    if not b:
        return []
    p = b[0].p
    out = [zero(p) for _ in b]
    for k, c in enumerate(b):
        if c.is_exact_zero():
            continue
        row = stirling2_row(k)
        for m in range(k + 1):
            if row[m]:
                out[m] = out[m] + c * (row[m] * factorial(m))
    return out


def mahler_to_monomial(a: list) -> list:
    """Monomial coefficients of sum_m a_m binom(x, m); divides by m!."""
    if not a:
        return []
    p = a[0].p
    out = [zero(p) for _ in a]
    for m, c in enumerate(a):
        if c.is_exact_zero():
            continue
        row = stirling1_row(m)
        cm = c / factorial(m)
        for k in range(m + 1):
            if row[k]:
                out[k] = out[k] + cm * row[k]
    return out
