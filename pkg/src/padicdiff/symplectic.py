"""Potential and symplectic structures on Q_p^n with polynomial data.

Polynomials in x^1..x^n are sparse dicts {exponent tuple: Fraction}.  The
test data are rational, so exact arithmetic in Q (a subfield of Q_p) is used;
p-adic valuations enter through the pivot rule and determinant valuations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import DomainError
from .padic import INF, Val, is_prime, vp

DEFAULT_DEGREE_CAP = 8
DEFAULT_UNKNOWN_CAP = 4000

Poly = dict  # {tuple[int, ...]: Fraction}


# ---------------------------------------------------------------------------
# sparse multivariate polynomials
# ---------------------------------------------------------------------------

def _clean(a: Poly) -> Poly:
    return {e: c for e, c in a.items() if c != 0}


def padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return _clean(out)


def pscale(a: Poly, c) -> Poly:
    return _clean({e: v * c for e, v in a.items()})


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pscale(b, -1))


def pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(i + j for i, j in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return _clean(out)


def pderiv(a: Poly, i: int) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = out.get(tuple(f), 0) + c * e[i]
    return _clean(out)


def pdegree(a: Poly) -> int:
    return max((sum(e) for e in a), default=-1)


def pconst(c, n: int) -> Poly:
    return _clean({(0,) * n: Fraction(c)})


def pvar(i: int, n: int) -> Poly:
    e = [0] * n
    e[i] = 1
    return {tuple(e): Fraction(1)}


def pevaluate(a: Poly, x: Sequence) -> Fraction:
    total = Fraction(0)
    for e, c in a.items():
        term = Fraction(c)
        for xi, k in zip(x, e):
            if k:
                term *= Fraction(xi) ** k
        total += term
    return total


def psubstitute(a: Poly, g: Sequence[Poly], n: int, cap: int = DEFAULT_DEGREE_CAP) -> Poly:
    """a(g^1(x), .., g^n(x)), refusing results above degree ``cap``."""
    if pdegree(a) * max((pdegree(gi) for gi in g), default=0) > cap:
        raise DomainError(f"composition degree exceeds the cap {cap}")
    out: Poly = {}
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            powers[key] = pconst(1, n) if k == 0 else pmul(power(i, k - 1), g[i])
        return powers[key]

    for e, c in a.items():
        term = pconst(c, n)
        for i, k in enumerate(e):
            if k:
                term = pmul(term, power(i, k))
        out = padd(out, term)
    return out


def poly_to_json(a: Poly) -> list:
    return [{"exp": list(e), "coeff": str(c)} for e, c in sorted(a.items())]


def poly_from_json(obj, n: int) -> Poly:
    out: Poly = {}
    for item in obj:
        e = tuple(int(k) for k in item["exp"])
        if len(e) != n:
            raise DomainError("exponent vector has the wrong length")
        out[e] = out.get(e, 0) + Fraction(str(item["coeff"]))
    return _clean(out)


# ---------------------------------------------------------------------------
# maps and forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolyMap:
    """y^a = g^a(x), a = 1..n."""

    n: int
    components: tuple

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(n, tuple(pvar(i, n) for i in range(n)))

    @classmethod
    def linear(cls, M: Sequence[Sequence]) -> "PolyMap":
        n = len(M)
        comps = []
        for row in M:
            g: Poly = {}
            for j, c in enumerate(row):
                g = padd(g, pscale(pvar(j, n), Fraction(c)))
            comps.append(g)
        return cls(n, tuple(comps))

    def jacobian(self) -> list[list[Poly]]:
        """J[m][a] = dg^m / dx^a."""
        return [[pderiv(g, a) for a in range(self.n)] for g in self.components]

    def compose(self, other: "PolyMap", cap: int = DEFAULT_DEGREE_CAP) -> "PolyMap":
        """self o other."""
        return PolyMap(self.n, tuple(psubstitute(g, other.components, self.n, cap)
                                     for g in self.components))

    def degree(self) -> int:
        return max((pdegree(g) for g in self.components), default=-1)

    def matrix(self) -> list[list[Fraction]]:
        """Matrix of a linear map; nonlinear or affine input is a domain error."""
        n = self.n
        M = [[Fraction(0)] * n for _ in range(n)]
        for a, g in enumerate(self.components):
            for e, c in g.items():
                if sum(e) != 1:
                    raise DomainError("map is not linear")
                M[a][e.index(1)] = Fraction(c)
        return M

    def to_json(self) -> dict:
        return {"n": self.n, "components": [poly_to_json(g) for g in self.components]}

    @classmethod
    def from_json(cls, obj: dict) -> "PolyMap":
        n = int(obj["n"])
        return cls(n, tuple(poly_from_json(g, n) for g in obj["components"]))


@dataclass(frozen=True)
class OneForm:
    """A = A_a(x) dx^a."""

    n: int
    components: tuple

    def to_json(self) -> dict:
        return {"n": self.n, "components": [poly_to_json(g) for g in self.components]}

    @classmethod
    def from_json(cls, obj: dict) -> "OneForm":
        n = int(obj["n"])
        return cls(n, tuple(poly_from_json(g, n) for g in obj["components"]))


@dataclass(frozen=True)
class TwoForm:
    """F = F_ab dx^a ^ dx^b / 2 with F_ab = -F_ba."""

    n: int
    entries: tuple  # n x n tuple of Poly

    def __post_init__(self):
        for a in range(self.n):
            for b in range(self.n):
                if psub(self.entries[a][b], pscale(self.entries[b][a], -1)):
                    raise DomainError("two-form is not antisymmetric")

    @classmethod
    def constant(cls, M: Sequence[Sequence]) -> "TwoForm":
        n = len(M)
        return cls(n, tuple(tuple(pconst(c, n) for c in row) for row in M))

    def at(self, x: Sequence) -> list[list[Fraction]]:
        return [[pevaluate(self.entries[a][b], x) for b in range(self.n)] for a in range(self.n)]

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[poly_to_json(e) for e in row] for row in self.entries]}


def standard_epsilon(n: int) -> list[list[int]]:
    """eps_{a,a+1} = 1, eps_{a+1,a} = -1 for consecutive indices, 0 elsewhere."""
    eps = [[0] * n for _ in range(n)]
    for a in range(n - 1):
        eps[a][a + 1] = 1
        eps[a + 1][a] = -1
    return eps


def linear_form(c: Sequence[Sequence]) -> OneForm:
    """A = c_{a,v} x^v dx^a."""
    n = len(c)
    comps = []
    for a in range(n):
        g: Poly = {}
        for v in range(n):
            if c[a][v]:
                g = padd(g, pscale(pvar(v, n), Fraction(c[a][v])))
        comps.append(g)
    return OneForm(n, tuple(comps))


def exterior_derivative(A: OneForm) -> TwoForm:
    """F_ab = d_a A_b - d_b A_a."""
    n = A.n
    rows = []
    for a in range(n):
        rows.append(tuple(psub(pderiv(A.components[b], a), pderiv(A.components[a], b))
                          for b in range(n)))
    return TwoForm(n, tuple(rows))


# ---------------------------------------------------------------------------
# determinants and linear algebra
# ---------------------------------------------------------------------------

def _pivot_row(rows, col, start, p):
    """Row index (>= start) whose entry in ``col`` has the largest p-adic norm."""
    best, best_v = None, INF
    for r in range(start, len(rows)):
        c = rows[r][col]
        if c != 0:
            v = vp(c, p)
            if v < best_v:
                best, best_v = r, v
    return best


def determinant(M: Sequence[Sequence], p: int = 3) -> Fraction:
    """Exact determinant by elimination with maximal-norm pivots."""
    rows = [[Fraction(c) for c in row] for row in M]
    n = len(rows)
    det = Fraction(1)
    for col in range(n):
        r = _pivot_row(rows, col, col, p)
        if r is None:
            return Fraction(0)
        if r != col:
            rows[col], rows[r] = rows[r], rows[col]
            det = -det
        piv = rows[col][col]
        det *= piv
        for i in range(col + 1, n):
            f = rows[i][col] / piv
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[col])]
    return det


def nullspace(M: Sequence[Sequence], ncols: int, p: int = 3) -> list[list[Fraction]]:
    """Basis of {v : M v = 0} by reduced row echelon form with maximal-norm pivots."""
    rows = [[Fraction(c) for c in row] for row in M if any(row)]
    pivots = []
    r = 0
    for col in range(ncols):
        if r >= len(rows):
            break
        k = _pivot_row(rows, col, r, p)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][col]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fcol]
        basis.append(v)
    return basis


def is_nondegenerate(F: TwoForm, points: Sequence[Sequence] | None = None,
                     p: int = 3) -> tuple[bool, Val]:
    """det(F(x)) != 0 at every sampled point; also the smallest det valuation.

    For odd n an antisymmetric matrix is always singular.
    """
    n = F.n
    if points is None:
        points = [tuple(x) for x in product(range(2), repeat=n)]
    worst = Val(INF)
    ok = True
    for x in points:
        d = determinant(F.at(x), p)
        if d == 0:
            return False, Val(INF)
        worst = max(worst, Val(vp(d, p)))
    return ok, worst


# ---------------------------------------------------------------------------
# invariance conditions
# ---------------------------------------------------------------------------

def pullback_one_form(g: PolyMap, A: OneForm, cap: int = DEFAULT_DEGREE_CAP) -> OneForm:
    """(g*A)_a = A_m(g(x)) dg^m/dx^a."""
    n = A.n
    if g.n != n:
        raise DomainError("dimension mismatch")
    J = g.jacobian()
    Ag = [psubstitute(A.components[m], g.components, n, cap) for m in range(n)]
    comps = []
    for a in range(n):
        acc: Poly = {}
        for m in range(n):
            acc = padd(acc, pmul(Ag[m], J[m][a]))
        if pdegree(acc) > cap:
            raise DomainError(f"pullback degree exceeds the cap {cap}")
        comps.append(acc)
    return OneForm(n, tuple(comps))


def pullback_two_form(g: PolyMap, F: TwoForm, cap: int = DEFAULT_DEGREE_CAP) -> list[list[Poly]]:
    """(g*F)_ab = F_mv(g(x)) dg^m/dx^a dg^v/dx^b."""
    n = F.n
    if g.n != n:
        raise DomainError("dimension mismatch")
    J = g.jacobian()
    Fg = [[psubstitute(F.entries[m][v], g.components, n, cap) for v in range(n)] for m in range(n)]
    out = []
    for a in range(n):
        row = []
        for b in range(n):
            acc: Poly = {}
            for m in range(n):
                if not J[m][a]:
                    continue
                for v in range(n):
                    if Fg[m][v] and J[v][b]:
                        acc = padd(acc, pmul(pmul(Fg[m][v], J[m][a]), J[v][b]))
            if pdegree(acc) > cap:
                raise DomainError(f"pullback degree exceeds the cap {cap}")
            row.append(acc)
        out.append(row)
    return out


def check_potential(g: PolyMap, A: OneForm, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """A_a = A_m(g(x)) dg^m/dx^a as polynomial identities."""
    pb = pullback_one_form(g, A, cap)
    return all(not psub(x, y) for x, y in zip(pb.components, A.components))


def check_symplectic(g: PolyMap, F: TwoForm, cap: int = DEFAULT_DEGREE_CAP) -> bool:
    """F_ab = F_mv(g(x)) dg^m/dx^a dg^v/dx^b as polynomial identities."""
    pb = pullback_two_form(g, F, cap)
    return all(not psub(pb[a][b], F.entries[a][b]) for a in range(F.n) for b in range(F.n))


def _matmul(A, B):
    return [[sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0))
             for j in range(len(B[0]))] for i in range(len(A))]


def _transpose(A):
    return [list(r) for r in zip(*A)]


def sp_membership(g, eps: Sequence[Sequence] | None = None) -> bool:
    """g^t eps g = eps for a linear map (PolyMap or matrix), n even."""
    M = g.matrix() if isinstance(g, PolyMap) else [[Fraction(c) for c in row] for row in g]
    n = len(M)
    if n % 2:
        raise DomainError("symplectic groups need even dimension")
    eps = eps if eps is not None else standard_epsilon(n)
    E = [[Fraction(c) for c in row] for row in eps]
    return _matmul(_matmul(_transpose(M), E), M) == E


# ---------------------------------------------------------------------------
# Lie derivative kernel
# ---------------------------------------------------------------------------

def monomials(n: int, D: int) -> list[tuple[int, ...]]:
    out = []
    for d in range(D + 1):
        for e in product(range(d + 1), repeat=n):
            if sum(e) == d:
                out.append(e)
    return out


def lie_derivative(xi: Sequence[Poly], A: OneForm) -> list[Poly]:
    """(L_xi A)_a = xi^m d_m A_a + A_m d_a xi^m."""
    n = A.n
    out = []
    for a in range(n):
        acc: Poly = {}
        for m in range(n):
            acc = padd(acc, pmul(xi[m], pderiv(A.components[a], m)))
            acc = padd(acc, pmul(A.components[m], pderiv(xi[m], a)))
        out.append(acc)
    return out


@dataclass(frozen=True)
class KernelResult:
    dimension: int
    basis: tuple  # each element: tuple of n Poly (components of xi)
    unknowns: int

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "unknowns": self.unknowns,
                "basis": [[poly_to_json(c) for c in xi] for xi in self.basis]}


def lie_derivative_kernel(A: OneForm, D: int, p: int = 3,
                          unknown_cap: int = DEFAULT_UNKNOWN_CAP) -> KernelResult:
    """Polynomial vector fields xi of degree <= D with L_xi A = 0."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = A.n
    mons = monomials(n, D)
    unknowns = [(m, e) for m in range(n) for e in mons]
    if len(unknowns) > unknown_cap:
        raise DomainError(f"{len(unknowns)} unknowns exceed the cap {unknown_cap}")
    columns = []
    keys: dict = {}
    for m, e in unknowns:
        xi = [{} for _ in range(n)]
        xi[m] = {e: Fraction(1)}
        col = {}
        for a, comp in enumerate(lie_derivative(xi, A)):
            for mon, c in comp.items():
                k = keys.setdefault((a, mon), len(keys))
                col[k] = c
        columns.append(col)
    matrix = [[Fraction(0)] * len(unknowns) for _ in range(len(keys))]
    for j, col in enumerate(columns):
        for k, c in col.items():
            matrix[k][j] = c
    null = nullspace(matrix, len(unknowns), p)
    basis = []
    for v in null:
        xi = [{} for _ in range(n)]
        for (m, e), c in zip(unknowns, v):
            if c:
                xi[m][e] = c
        basis.append(tuple(xi))
    return KernelResult(len(basis), tuple(basis), len(unknowns))


# ---------------------------------------------------------------------------
# samples
# ---------------------------------------------------------------------------

def transvection(v: Sequence[int], lam, eps: Sequence[Sequence]) -> list[list[Fraction]]:
    """x -> x + lam (v^t eps x) v, an element of Sp(eps)."""
    n = len(v)
    return [[Fraction(int(i == j)) + Fraction(lam) * v[i] * sum(v[k] * eps[k][j] for k in range(n))
             for j in range(n)] for i in range(n)]


def random_symplectic_matrix(rng: random.Random, n: int, factors: int = 3,
                             eps: Sequence[Sequence] | None = None) -> list[list[Fraction]]:
    eps = eps if eps is not None else standard_epsilon(n)
    M = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(factors):
        v = [rng.randrange(-2, 3) for _ in range(n)]
        if not any(v):
            v[rng.randrange(n)] = 1
        M = _matmul(M, transvection(v, rng.randrange(-3, 4) or 1, eps))
    return M


def perturb(M: Sequence[Sequence], p: int) -> list[list[Fraction]]:
    """M diag(1+p, 1, .., 1): determinant 1+p, so never symplectic."""
    return [[c * (1 + p) if j == 0 else c for j, c in enumerate(row)] for row in M]


def random_general_form(rng: random.Random, n: int, eps: Sequence[Sequence] | None = None,
                        p: int = 3) -> OneForm:
    """Linear part eps plus random quadratic terms with p-divisible coefficients."""
    eps = eps if eps is not None else standard_epsilon(n)
    base = linear_form(eps)
    comps = []
    for a in range(n):
        g = dict(base.components[a])
        for e in monomials(n, 2):
            if sum(e) == 2 and rng.random() < 0.5:
                g = padd(g, {e: Fraction(p * rng.randrange(-3, 4))})
        comps.append(g)
    return OneForm(n, tuple(comps))
