"""Finite quotients Z/p^l of the diffeomorphism group.

Elements reduce to permutations of Z/p^l; the reductions form a tower of
surjections l -> l-1.  Also provides group closure of permutation tables and
the ball-swap elements that realise symmetric groups on residue balls.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diffeo import (
    DEFAULT_LEVEL,
    Diffeo,
    compose_tables,
    invert_table,
    is_permutation,
    reduce_table,
    tower_consistent,
)
from .errors import DomainError
from .padic import is_prime

DEFAULT_CAP = 20000


@dataclass(frozen=True)
class FiniteMap:
    """A self-map of Z/p^l given by its table."""

    p: int
    l: int
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.p**self.l:
            raise DomainError(f"table length {len(self.table)} != {self.p}^{self.l}")
        if any(not 0 <= y < len(self.table) for y in self.table):
            raise DomainError("table entries must lie in 0..p^l - 1")

    @classmethod
    def identity(cls, p: int, l: int) -> "FiniteMap":
        return cls(p, l, tuple(range(p**l)))

    def __call__(self, x: int) -> int:
        return self.table[x % len(self.table)]

    def __matmul__(self, other: "FiniteMap") -> "FiniteMap":
        """self o other."""
        if (self.p, self.l) != (other.p, other.l):
            raise DomainError("maps live on different levels")
        return FiniteMap(self.p, self.l, compose_tables(self.table, other.table))

    def inverse(self) -> "FiniteMap":
        return FiniteMap(self.p, self.l, invert_table(self.table))

    def is_permutation(self) -> bool:
        return is_permutation(self.table)

    def reduce(self, l: int) -> "FiniteMap":
        """The induced map on Z/p^l; assumes 1-Lipschitz."""
        if l > self.l or l < 1:
            raise DomainError(f"cannot reduce from level {self.l} to {l}")
        return FiniteMap(self.p, l, reduce_table(self.table, self.p, l))

    def to_json(self) -> dict:
        return {"p": self.p, "l": self.l, "table": list(self.table)}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteMap":
        return cls(int(obj["p"]), int(obj["l"]), tuple(int(y) for y in obj["table"]))


def truncate(f: Diffeo, l: int) -> FiniteMap:
    """The map induced by f on Z/p^l (from the cached tables)."""
    if not 1 <= l <= f.level:
        raise DomainError(f"level {l} outside cached range 1..{f.level}")
    return FiniteMap(f.p, l, f.table(l))


def truncate_from_rule(f: Diffeo, l: int) -> FiniteMap:
    """The level-l map recomputed from the rule of f, bypassing cached tables."""
    return FiniteMap(f.p, l, f.rule_table(l))


def maps_consistent(upper: FiniteMap, lower: FiniteMap) -> bool:
    """pi o upper = lower o pi for the reduction pi: Z/p^l -> Z/p^(l-1)."""
    if upper.p != lower.p or upper.l != lower.l + 1:
        raise DomainError("maps are not on adjacent levels")
    return tower_consistent(upper.table, lower.table, upper.p)


def reduction_consistency(f: Diffeo, l: int) -> bool:
    if not 2 <= l <= f.level:
        raise DomainError(f"need levels {l} and {l - 1} within 1..{f.level}")
    return maps_consistent(truncate(f, l), truncate(f, l - 1))


@dataclass(frozen=True)
class FinitePolyGroup:
    p: int
    l: int
    elements: tuple[tuple[int, ...], ...]
    generators: tuple[FiniteMap, ...]
    complete: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    def multiplication_table(self) -> list[list[int]]:
        """table[i][j] = index of elements[i] o elements[j]."""
        if not self.complete:
            raise DomainError("closure is incomplete (cap exceeded)")
        idx = self.index()
        return [[idx[compose_tables(a, b)] for b in self.elements] for a in self.elements]

    def to_json(self) -> dict:
        return {"p": self.p, "l": self.l, "order": self.order, "complete": self.complete,
                "generators": [g.to_json() for g in self.generators]}


def group_closure(generators, cap: int = DEFAULT_CAP) -> FinitePolyGroup:
    """Group generated by permutation tables, by breadth-first closure.

    Stops at ``cap`` elements and reports ``complete = False``.
    """
    gens = list(generators)
    if not gens:
        raise DomainError("need at least one generator")
    p, l = gens[0].p, gens[0].l
    for g in gens:
        if (g.p, g.l) != (p, l):
            raise DomainError("generators live on different levels")
        if not g.is_permutation():
            raise DomainError("generator is not a permutation")
    ident = tuple(range(p**l))
    seen = {ident: None}
    order = [ident]
    frontier = [ident]
    tables = [g.table for g in gens]
    complete = True
    while frontier and complete:
        nxt = []
        for a in frontier:
            for t in tables:
                c = compose_tables(t, a)
                if c not in seen:
                    if len(order) >= cap:
                        complete = False
                        break
                    seen[c] = None
                    order.append(c)
                    nxt.append(c)
            if not complete:
                break
        frontier = nxt
    # a finite monoid generated by permutations is already a group
    return FinitePolyGroup(p, l, tuple(order), tuple(gens), complete)


def ball_swap_diffeo(a: int, b: int, p: int, level: int = 1, table_level: int = DEFAULT_LEVEL,
                     **kw) -> Diffeo:
    """Swap the balls a + p^level Z_p and b + p^level Z_p by translation.

    ``a`` and ``b`` are residues mod p^level; every other ball is fixed.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    q = p**level
    if not (0 <= a < q and 0 <= b < q):
        raise DomainError("ball labels must be residues mod p^level")
    if a == b:
        raise DomainError("cannot swap a ball with itself")

    def shift(r):
        if r == a:
            return b - a
        if r == b:
            return a - b
        return 0

    return Diffeo.locally_constant(shift, p, level, level=table_level, **kw)


def translation_map(c: int, p: int, l: int) -> FiniteMap:
    q = p**l
    return FiniteMap(p, l, tuple((x + c) % q for x in range(q)))


def random_w_element(rng: random.Random, p: int, level: int = DEFAULT_LEVEL,
                     precision: int = 16, degree: int = 24) -> Diffeo:
    """A random element of W: a polynomial, a locally constant bump or a translation.

    Polynomials x + p^2 c(x) and bumps x + p^2 c 1_{r + pZ_p} have C(0) and C(1)
    distance at most p^-2 from the identity.
    """
    kind = rng.randrange(3)
    kw = {"level": level, "precision": precision, "degree": degree}
    if kind == 0:
        deg = rng.randrange(1, 5)
        coeffs = [p**2 * rng.randrange(p**3) for _ in range(deg + 1)]
        return Diffeo.from_poly(coeffs, p, **kw)
    if kind == 1:
        r = rng.randrange(p)
        c = rng.randrange(1, p**3)
        return Diffeo.locally_constant(lambda x: p**2 * c if x == r else 0, p, 1, **kw)
    return Diffeo.translation(p**2 * rng.randrange(1, p**3), p, **kw)
