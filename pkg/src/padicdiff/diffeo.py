"""Near-identity diffeomorphisms of Z_p.

A :class:`Diffeo` is held in two ways at once: an exact rule that evaluates
f on p-adic integers, and permutation tables of Z/p^l for l = 1..L.  Group
operations act on both; the Mahler series of f - id is re-extracted from
exact values when it is asked for.
"""

from __future__ import annotations

from functools import cached_property
from typing import Callable, Sequence

from . import poly
from .errors import DomainError, IntegrityError
from .mahler import (
    MahlerSeries,
    basis_norm_J,
    check_t,
    evaluate,
    grid_norm,
    mahler_coeffs,
)
from .padic import INF, PadicNumber, Val, is_prime, vp

DEFAULT_PRECISION = 16
DEFAULT_DEGREE = 24
DEFAULT_LEVEL = 4

Table = tuple[int, ...]


def _as_padic(x, p: int, precision: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    return PadicNumber.from_rational(x, p, precision)


def reduce_table(table: Sequence[int], p: int, l: int) -> Table:
    """The level-l table of a map given by a table at a higher level."""
    q = p**l
    return tuple(table[x] % q for x in range(q))


def is_permutation(table: Sequence[int]) -> bool:
    n = len(table)
    return sorted(table) == list(range(n))


def invert_table(table: Sequence[int]) -> Table:
    if not is_permutation(table):
        raise IntegrityError("table is not a bijection")
    inv = [0] * len(table)
    for x, y in enumerate(table):
        inv[y] = x
    return tuple(inv)


def compose_tables(f: Sequence[int], g: Sequence[int]) -> Table:
    """(f o g)(x) = f(g(x))."""
    return tuple(f[y] for y in g)


def tower_consistent(upper: Sequence[int], lower: Sequence[int], p: int) -> bool:
    """pi(upper(x)) = lower(pi(x)) for the reduction pi from level l to l - 1."""
    q = len(lower)
    return all(upper[x] % q == lower[x % q] for x in range(len(upper)))


def table_isometry(table: Sequence[int], p: int, l: int) -> bool:
    """|f(x) - f(y)| = |x - y| for all x, y mod p^l.

    Equivalent to: for every k < l, x = y mod p^k iff f(x) = f(y) mod p^k.
    """
    if not is_permutation(table):
        return False
    for k in range(1, l):
        q = p**k
        image = {}
        for x, y in enumerate(table):
            r = image.setdefault(x % q, y % q)
            if r != y % q:
                return False
        if len(set(image.values())) != q:
            return False
    return True


class Diffeo:
    """A map f: Z_p -> Z_p near the identity.

    ``rule`` evaluates f exactly (to working precision) at ints and
    PadicNumbers.  ``poly`` optionally holds the monomial coefficients of
    f - id, making the series exact.  ``kind`` is "series" or "value-table";
    the latter marks locally constant perturbations whose series is known
    only through the tail bound ``tail_val``.
    """

    def __init__(self, p: int, rule: Callable, *, precision: int = DEFAULT_PRECISION,
                 degree: int = DEFAULT_DEGREE, level: int = DEFAULT_LEVEL,
                 kind: str = "series", poly_coeffs: Sequence[PadicNumber] | None = None,
                 tables: dict[int, Table] | None = None, tail_val: Val | None = None,
                 series: MahlerSeries | None = None,
                 rule_mod: Callable[[int, int], int] | None = None):
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if level < 1:
            raise DomainError("table level must be >= 1")
        if kind not in ("series", "value-table"):
            raise DomainError(f"unknown representation kind {kind!r}")
        self.p = p
        self.rule = rule
        self.rule_mod = rule_mod
        self.precision = precision
        self.degree = degree
        self.level = level
        self.kind = kind
        self.poly = tuple(poly_coeffs) if poly_coeffs is not None else None
        self._tail_val = tail_val
        if series is not None:
            self.__dict__["series"] = series
        if tables is None:
            top = self.rule_table(level)
            tables = {l: reduce_table(top, p, l) for l in range(1, level + 1)}
        self.tables = dict(tables)

    # -- constructors ---------------------------------------------------
    @classmethod
    def identity(cls, p: int, **kw) -> "Diffeo":
        return cls.from_poly([], p, **kw)

    @classmethod
    def from_poly(cls, coeffs, p: int, precision: int = DEFAULT_PRECISION, **kw) -> "Diffeo":
        """f(x) = x + sum_k b_k x^k from monomial coefficients b of f - id."""
        b = [_as_padic(c, p, precision) for c in coeffs]

        def rule(x):
            return poly.evaluate(b, x, p) + x

        return cls(p, rule, precision=precision, poly_coeffs=b, **kw)

    @classmethod
    def translation(cls, c, p: int, **kw) -> "Diffeo":
        return cls.from_poly([c], p, **kw)

    @classmethod
    def scaling(cls, lam, p: int, precision: int = DEFAULT_PRECISION, **kw) -> "Diffeo":
        lam = _as_padic(lam, p, precision)
        return cls.from_poly([0, lam - 1], p, precision=precision, **kw)

    @classmethod
    def from_mahler(cls, s: MahlerSeries, **kw) -> "Diffeo":
        """f = id + s for a Mahler series s of f - id."""
        kw.setdefault("precision", s.precision)

        def rule(x):
            return evaluate(s, x) + x

        return cls(s.p, rule, series=s, **kw)

    @classmethod
    def locally_constant(cls, shift: Callable[[int], int], p: int, radius: int,
                         **kw) -> "Diffeo":
        """f(x) = x + shift(x mod p^radius) for an integer-valued shift.

        Mahler coefficients of a function periodic mod p^r satisfy
        v(a_m) >= v(sup) + floor(m / p^r), which gives the tail bound.
        """
        q = p**radius
        precision = kw.setdefault("precision", DEFAULT_PRECISION)
        degree = kw.get("degree", DEFAULT_DEGREE)
        shifts = [shift(r) for r in range(q)]
        sup = min((vp(s, p) for s in shifts), default=INF)

        def rule(x):
            x = _as_padic(x, p, precision)
            return x + shifts[x.residue(radius)]

        tail = Val(sup + (degree + 1) // q) if sup != INF else Val(INF)
        return cls(p, rule, kind="value-table", tail_val=tail, **kw)

    # -- evaluation -----------------------------------------------------
    def __call__(self, x) -> PadicNumber:
        return _as_padic(self.rule(x), self.p, self.precision)

    def displacement(self, x) -> PadicNumber:
        """f(x) - x."""
        return self(x) - x

    def rule_table(self, l: int) -> Table:
        """Level-l table computed afresh from the rule."""
        q = self.p**l
        if self.rule_mod is not None:
            return tuple(self.rule_mod(x, l) for x in range(q))
        return tuple(self(x).residue(l) for x in range(q))

    def table(self, l: int) -> Table:
        if l not in self.tables:
            raise DomainError(f"no cached table at level {l} (cached: 1..{self.level})")
        return self.tables[l]

    @cached_property
    def series(self) -> MahlerSeries:
        """Mahler series of f - id to degree D."""
        p, N, D = self.p, self.precision, self.degree
        if self.poly is not None:
            full = poly.monomial_to_mahler(list(self.poly))
            return MahlerSeries(p, N, tuple(full[: D + 1]), poly.gauss_val(full[D + 1:]))
        if self._tail_val is not None:
            s = mahler_coeffs(self.displacement, D, p, N, tail_val=self._tail_val)
            return s
        # no structural bound: record the decay observed on the next D coefficients
        values = [self.displacement(k) for k in range(2 * D + 2)]
        return mahler_coeffs(values, D, p, N)

    # -- group operations -----------------------------------------------
    def _check_compatible(self, other: "Diffeo"):
        if other.p != self.p:
            raise DomainError(f"mismatched primes {self.p} and {other.p}")
        if other.level != self.level:
            raise DomainError(f"mismatched table levels {self.level} and {other.level}")

    def compose(self, other: "Diffeo") -> "Diffeo":
        """self o other."""
        return compose(self, other)

    def __matmul__(self, other):
        return compose(self, other)

    def inverse(self) -> "Diffeo":
        return invert(self)

    def w_member(self, t: int = 0) -> bool:
        return in_W(self, t)

    def to_json(self) -> dict:
        return {"p": self.p, "N": self.precision, "D": self.degree, "L": self.level,
                "kind": self.kind, "series": self.series.to_json(),
                "tables": {str(l): list(tb) for l, tb in sorted(self.tables.items())},
                "w_member": in_W(self, 0)}

    @classmethod
    def from_json(cls, obj: dict) -> "Diffeo":
        level = int(obj.get("L", DEFAULT_LEVEL))
        kw = {"degree": int(obj.get("D", DEFAULT_DEGREE)), "level": level}
        if obj.get("kind", "series") == "value-table":
            p = int(obj["p"])
            top = obj["tables"][str(level)]
            q = p**level
            shift = [(top[r] - r) for r in range(q)]
            return cls.locally_constant(lambda r: shift[r], p, level,
                                        precision=int(obj.get("N", DEFAULT_PRECISION)), **kw)
        s = MahlerSeries.from_json(obj["series"])
        return cls.from_mahler(s, **kw)

    def __repr__(self):
        return f"Diffeo(p={self.p}, kind={self.kind}, N={self.precision}, D={self.degree}, L={self.level})"


def compose(f: Diffeo, g: Diffeo) -> Diffeo:
    """f o g: tables composed level by level, rule composed, series re-extracted."""
    f._check_compatible(g)
    p = f.p
    tables = {l: compose_tables(f.tables[l], g.tables[l]) for l in f.tables}
    precision = min(f.precision, g.precision)
    degree = min(f.degree, g.degree)
    coeffs = None
    if f.poly is not None and g.poly is not None:
        coeffs = _compose_poly(list(f.poly), list(g.poly), p)
    kind = "value-table" if "value-table" in (f.kind, g.kind) else "series"
    tail = None
    if kind == "value-table":
        tail = max(f.series.tail_val, g.series.tail_val)

    def rule(x):
        return f(g(x))

    return Diffeo(p, rule, precision=precision, degree=degree, level=f.level, kind=kind,
                  poly_coeffs=coeffs, tables=tables, tail_val=tail)


def _compose_poly(bf, bg, p):
    """Monomial coefficients of (f o g) - id with f = id + bf, g = id + bg."""
    prec = max((c.precision for c in bf + bg if c.precision != INF), default=DEFAULT_PRECISION)
    inner = poly.add(bg, [PadicNumber.zero(p), PadicNumber.one(p, prec)])
    acc: list = []
    for c in reversed(bf):
        acc, _ = poly.mul(acc, inner, p) if acc else ([], INF)
        acc = poly.add(acc, [c])
    return poly.add(acc, bg)


def _lift_inverse(f: Diffeo, y: PadicNumber, digits: int) -> PadicNumber:
    """x with f(x) = y mod p^digits.

    Near the identity the iteration x <- x - (f(x) - y) gains digits at every
    step; when it stalls, fall back to choosing one p-adic digit at a time.
    """
    p = f.p
    try:
        x = y.residue(digits)
        for _ in range(digits + 1):
            r = f(x) - y
            if r.val_lower_bound() >= digits:
                return PadicNumber.from_rational(x, p, digits).add_bigoh(digits)
            nx = (x - r).residue(digits)
            if nx == x:
                break
            x = nx
    except DomainError:
        pass
    return _lift_digits(f, y, digits)


def _lift_digits(f: Diffeo, y: PadicNumber, digits: int) -> PadicNumber:
    p = f.p
    x = 0
    for k in range(1, digits + 1):
        step = p ** (k - 1)
        found = None
        for d in range(p):
            cand = x + d * step
            r = f(cand) - y
            if r.val_lower_bound() >= k:
                if found is not None:
                    raise IntegrityError(f"map is not injective mod p^{k}")
                found = cand
        if found is None:
            raise IntegrityError(f"map is not surjective mod p^{k}")
        x = found
    return PadicNumber.from_rational(x, p, digits).add_bigoh(digits)


def invert(f: Diffeo) -> Diffeo:
    """Two-sided inverse: tables inverted per level, rule by digit lifting."""
    p = f.p
    tables = {l: invert_table(tb) for l, tb in f.tables.items()}
    for l in range(2, f.level + 1):
        if not tower_consistent(tables[l], tables[l - 1], p):
            raise IntegrityError(f"inverse tables are not tower compatible at level {l}")

    def rule(y):
        y = _as_padic(y, p, f.precision)
        digits = f.precision if y.absprec == INF else min(f.precision, int(y.absprec))
        return _lift_inverse(f, y, digits)

    def rule_mod(y, l):
        return _lift_inverse(f, PadicNumber.from_rational(y, p, l), l).residue(l)

    tail = f._tail_val if f.kind == "value-table" else None
    return Diffeo(p, rule, precision=f.precision, degree=f.degree, level=f.level,
                  kind=f.kind, tables=tables, tail_val=tail, rule_mod=rule_mod)


# ---------------------------------------------------------------------------
# metric structure
# ---------------------------------------------------------------------------

def distance(f: Diffeo, g: Diffeo, t: int = 0, level: int | None = None) -> Val:
    """Grid C(t) norm of f - g (a Val; +inf exponent means agreement)."""
    check_t(t)
    if f.p != g.p:
        raise DomainError("mismatched primes")
    if f is g:
        return Val(INF)
    level = level if level is not None else _default_level(t, f.level)
    return grid_norm(lambda k: f(k) - g(k), f.p, t, level).value


def agreement(f: Diffeo, g: Diffeo, level: int | None = None):
    """Largest e with f(x) = g(x) mod p^e certified at every grid point.

    Unlike :func:`distance`, a difference that vanishes to working precision
    contributes its precision rather than +inf.
    """
    level = level if level is not None else f.level
    return min((f(k) - g(k)).val_lower_bound() for k in range(f.p**level))


def _default_level(t: int, level: int) -> int:
    return max(1, min(level, 4 - max(0, t - 1)))


def distance_mod(f: Diffeo, g: Diffeo, l: int) -> Val:
    """C(0) distance of the level-l tables, capped at l."""
    tf, tg = f.table(l), g.table(l)
    q = f.p**l
    e = INF
    for a, b in zip(tf, tg):
        d = (a - b) % q
        if d:
            e = min(e, vp(d, f.p))
    return Val(e)


def in_W(f: Diffeo, t: int = 0) -> bool:
    """distance(f, id, tau) <= p^-2 for every tau <= t."""
    check_t(t)
    ident = Diffeo.identity(f.p, precision=f.precision, degree=f.degree, level=f.level)
    return all(distance(f, ident, tau) <= Val(2) for tau in range(t + 1))


def is_isometry(f: Diffeo, level: int | None = None) -> bool:
    """|f(x) - f(y)| = |x - y| for all x, y mod p^level."""
    level = level if level is not None else f.level
    return table_isometry(f.table(level), f.p, level)


def weighted_norm_a(f: Diffeo, t: int = 0, level: int | None = None) -> tuple[Val, int]:
    """(sup_m |a_m| J(t,m) p^(1+m), #{m : |a_m| J(t,m) p^(1+m) > p^-2}).

    a_m are the stored Mahler coefficients of f - id.
    """
    check_t(t)
    s = f.series
    lev = level if level is not None else _default_level(t, f.level)
    best, count = INF, 0
    for m, a in enumerate(s.coeffs):
        if a.valuation == INF:
            continue
        e = a.valuation + basis_norm_J(t, m, f.p, lev).exponent - (1 + m)
        best = min(best, e)
        if e < 2:
            count += 1
    return Val(best), count
