"""Characters of finite groups: tables, induction, Mackey and tensor identities.

Character tables are computed by the class-sum eigenvector method over a
prime field F_q with q = 1 mod exp(G), then lifted to exact values in
Q(zeta_e) through eigenvalue multiplicities.  Characters are stored as
lists of values indexed by group elements.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cyclotomic import Cyclotomic
from .errors import DomainError, IntegrityError
from .padic import is_prime

DEFAULT_ORDER_CAP = 2000


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

class FiniteGroup:
    """Group on 0..n-1 given by a multiplication table mul[a][b] = a*b."""

    def __init__(self, mul: Sequence[Sequence[int]], name: str = "G", check: bool = True):
        self.mul = [list(row) for row in mul]
        self.n = len(self.mul)
        self.name = name
        if any(len(row) != self.n for row in self.mul):
            raise IntegrityError("multiplication table is not square")
        ids = [a for a in range(self.n)
               if all(self.mul[a][b] == b and self.mul[b][a] == b for b in range(self.n))]
        if len(ids) != 1:
            raise IntegrityError("no unique two-sided identity")
        self.identity = ids[0]
        self.inv = [0] * self.n
        for a in range(self.n):
            row = self.mul[a]
            try:
                b = row.index(self.identity)
            except ValueError:
                raise IntegrityError(f"element {a} has no inverse") from None
            if self.mul[b][a] != self.identity:
                raise IntegrityError(f"element {a} has no two-sided inverse")
            self.inv[a] = b
        if check and self.n <= 200:
            self.check_associative()

    def check_associative(self):
        m = self.mul
        for a in range(self.n):
            ma = m[a]
            for b in range(self.n):
                ab = ma[b]
                mab, mb = m[ab], m[b]
                for c in range(self.n):
                    if mab[c] != ma[mb[c]]:
                        raise IntegrityError(f"associativity fails at ({a}, {b}, {c})")

    @property
    def order(self) -> int:
        return self.n

    def conj(self, x: int, g: int) -> int:
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul[x][a]
            k += 1
        return k

    @cached_property
    def exponent(self) -> int:
        e = 1
        for a in range(self.n):
            e = math.lcm(e, self.element_order(a))
        return e

    def power(self, a: int, k: int) -> int:
        x = self.identity
        for _ in range(k % self.element_order(a)):
            x = self.mul[x][a]
        return x

    @cached_property
    def classes(self) -> "ClassData":
        return conjugacy_classes(self)

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.n, "identity": self.identity,
                "mul": self.mul}

    @classmethod
    def from_json(cls, obj: dict) -> "FiniteGroup":
        return cls(obj["mul"], obj.get("name", "G"))

    @classmethod
    def from_permutations(cls, gens: Sequence[Sequence[int]], name: str = "G",
                          cap: int = DEFAULT_ORDER_CAP) -> "FiniteGroup":
        """Group generated by permutations (tuples of images), composed as maps."""
        gens = [tuple(g) for g in gens]
        if not gens:
            raise DomainError("need at least one generator")
        ident = tuple(range(len(gens[0])))
        elems = [ident]
        index = {ident: 0}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = tuple(g[y] for y in a)
                    if c not in index:
                        if len(elems) >= cap:
                            raise DomainError(f"group order exceeds the cap {cap}")
                        index[c] = len(elems)
                        elems.append(c)
                        nxt.append(c)
            frontier = nxt
        mul = [[index[tuple(a[y] for y in b)] for b in elems] for a in elems]
        G = cls(mul, name, check=False)
        G.perms = elems
        return G


@dataclass(frozen=True)
class ClassData:
    reps: tuple[int, ...]
    sizes: tuple[int, ...]
    class_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]

    def to_json(self) -> dict:
        return {"reps": list(self.reps), "sizes": list(self.sizes)}


def conjugacy_classes(G: FiniteGroup) -> ClassData:
    class_of = [-1] * G.n
    reps, sizes, members = [], [], []
    order = sorted(range(G.n), key=lambda a: (a != G.identity, a))
    for a in order:
        if class_of[a] >= 0:
            continue
        k = len(reps)
        cls = sorted({G.conj(a, g) for g in range(G.n)})
        for x in cls:
            class_of[x] = k
        reps.append(a)
        sizes.append(len(cls))
        members.append(tuple(cls))
    for s in sizes:
        if G.n % s:
            raise IntegrityError("class size does not divide the group order")
    return ClassData(tuple(reps), tuple(sizes), tuple(class_of), tuple(members))


class Subgroup:
    """H <= G given by the G-indices of its elements."""

    def __init__(self, G: FiniteGroup, elements, name: str = "H"):
        els = sorted(set(elements))
        s = set(els)
        if G.identity not in s:
            raise DomainError("subset does not contain the identity")
        for a in els:
            if G.inv[a] not in s:
                raise DomainError("subset is not closed under inverses")
            for b in els:
                if G.mul[a][b] not in s:
                    raise DomainError("subset is not closed under multiplication")
        self.G = G
        self.elements = tuple(els)
        self.name = name
        self.pos = {a: i for i, a in enumerate(els)}

    @classmethod
    def generated(cls, G: FiniteGroup, gens: Sequence[int], name: str = "H") -> "Subgroup":
        els = {G.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    c = G.mul[a][g]
                    if c not in els:
                        els.add(c)
                        nxt.append(c)
            frontier = nxt
        return cls(G, els, name)

    @classmethod
    def whole(cls, G: FiniteGroup) -> "Subgroup":
        return cls(G, range(G.n), G.name)

    @classmethod
    def trivial(cls, G: FiniteGroup) -> "Subgroup":
        return cls(G, [G.identity], "1")

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, a: int) -> bool:
        return a in self.pos

    @cached_property
    def group(self) -> FiniteGroup:
        els = self.elements
        mul = [[self.pos[self.G.mul[a][b]] for b in els] for a in els]
        return FiniteGroup(mul, self.name, check=False)

    def conjugate(self, g: int) -> "Subgroup":
        """g^-1 H g."""
        G = self.G
        return Subgroup(G, [G.conj(h, G.inv[g]) for h in self.elements], f"{self.name}^g")

    def intersect(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.G, [a for a in self.elements if a in other.pos],
                        f"{self.name}&{other.name}")


# ---------------------------------------------------------------------------
# modular linear algebra
# ---------------------------------------------------------------------------

def _rref_mod(rows: list[list[int]], q: int) -> tuple[list[list[int]], list[int]]:
    rows = [[x % q for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        k = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if k is None:
            continue
        rows[r], rows[k] = rows[k], rows[r]
        inv = pow(rows[r][c], -1, q)
        rows[r] = [x * inv % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace_mod(A: list[list[int]], ncols: int, q: int) -> list[list[int]]:
    if not A:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    R, piv = _rref_mod(A, q)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = (-R[i][f]) % q
        basis.append(v)
    return basis


def _charpoly_mod(A: list[list[int]], q: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg reduction."""
    n = len(A)
    H = [[x % q for x in row] for row in A]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if H[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            H[i], H[m] = H[m], H[i]
            for row in H:
                row[i], row[m] = row[m], row[i]
        inv = pow(H[m][m - 1], -1, q)
        for i in range(m + 1, n):
            u = H[i][m - 1] * inv % q
            if u:
                H[i] = [(x - u * y) % q for x, y in zip(H[i], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[i]) % q
    polys = [[1]]
    for m in range(1, n + 1):
        # (x - h_mm) p_{m-1}
        prev = polys[m - 1]
        cur = [0] + prev
        for k, c in enumerate(prev):
            cur[k] = (cur[k] - H[m - 1][m - 1] * c) % q
        t = 1
        for i in range(1, m):
            t = t * H[m - i][m - i - 1] % q
            coef = H[m - i - 1][m - 1] * t % q
            if coef:
                for k, c in enumerate(polys[m - i - 1]):
                    cur[k] = (cur[k] - coef * c) % q
        polys.append(cur)
    return polys[n]


def _roots_mod(poly: list[int], q: int) -> list[int]:
    roots = []
    for x in range(q):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % q
        if acc == 0:
            roots.append(x)
    return roots


def _matvec_cols(M: list[list[int]], B: list[list[int]], q: int) -> list[list[int]]:
    """Rows of (M b) for each row b of B."""
    return [[sum(M[i][k] * b[k] for k in range(len(b))) % q for i in range(len(M))] for b in B]


def _choose_prime(e: int, order: int) -> int:
    q = e + 1
    while not (is_prime(q) and q * q > 4 * order):
        q += e
    return q


def _primitive_root_of_unity(e: int, q: int) -> int:
    """An element of exact order e in F_q^* (requires e | q - 1)."""
    factors = [r for r in range(2, e + 1) if e % r == 0 and is_prime(r)]
    for g in range(2, q):
        z = pow(g, (q - 1) // e, q)
        if all(pow(z, e // r, q) != 1 for r in factors):
            return z
    return 1


# ---------------------------------------------------------------------------
# character tables
# ---------------------------------------------------------------------------

@dataclass
class CharacterTable:
    group: FiniteGroup
    classes: ClassData
    exponent: int
    values: list[list[Cyclotomic]]  # values[i][j] = chi_i(class j)
    prime: int = 0

    @property
    def degrees(self) -> list[int]:
        return [int(row[0].to_rational()) for row in self.values]

    def character(self, i: int) -> list[Cyclotomic]:
        """Irreducible i as a list over group elements."""
        row = self.values[i]
        return [row[c] for c in self.classes.class_of]

    def characters(self) -> list[list[Cyclotomic]]:
        return [self.character(i) for i in range(len(self.values))]

    def decompose(self, chi: Sequence[Cyclotomic]) -> list[Fraction]:
        return [inner_product(self.group, chi, self.character(i)) for i in range(len(self.values))]

    def to_json(self) -> dict:
        return {"group": self.group.name, "order": self.group.n, "exponent": self.exponent,
                "classes": self.classes.to_json(), "degrees": self.degrees,
                "values": [[v.to_json() for v in row] for row in self.values]}


def _class_matrices(G: FiniteGroup, C: ClassData) -> list[list[list[int]]]:
    """M_j[l][m] = #{(x, y) in C_j x C_l : x y = z_m} for fixed z_m in C_m."""
    r = len(C.reps)
    mats = []
    for j in range(r):
        M = [[0] * r for _ in range(r)]
        for x in C.members[j]:
            xinv = G.inv[x]
            for m, z in enumerate(C.reps):
                y = G.mul[xinv][z]
                M[C.class_of[y]][m] += 1
        mats.append(M)
    return mats


def _split_eigenspaces(mats, r: int, q: int, rng: random.Random) -> list[list[int]]:
    """Common one-dimensional eigenspaces of commuting matrices mod q."""
    spaces = [[[int(i == j) for i in range(r)] for j in range(r)]]
    weights = [rng.randrange(q) for _ in mats]
    combos = [[[sum(w * M[i][k] for w, M in zip(weights, mats)) % q for k in range(r)]
               for i in range(r)]]
    # one random combination usually separates everything; individual
    # class matrices finish any remaining blocks
    for M in combos + mats:
        if all(len(S) == 1 for S in spaces):
            break
        new = []
        for S in spaces:
            if len(S) == 1:
                new.append(S)
                continue
            R, piv = _rref_mod(S, q)
            images = _matvec_cols(M, R, q)
            A = [[img[pc] for img in images] for pc in piv]  # columns: images in basis R
            # A[i][k] = coordinate i of M R_k
            cp = _charpoly_mod(A, q)
            roots = _roots_mod(cp, q)
            pieces = []
            for lam in roots:
                shifted = [[(A[i][k] - (lam if i == k else 0)) % q for k in range(len(R))]
                           for i in range(len(R))]
                c = _nullspace_mod(shifted, len(R), q)
                if c:
                    pieces.append([[sum(ci * R[k][t] for k, ci in enumerate(cv)) % q
                                    for t in range(r)] for cv in c])
            if sum(len(P) for P in pieces) != len(R):
                raise IntegrityError("class matrices are not simultaneously diagonalizable mod q")
            new.extend(pieces)
        spaces = new
    if any(len(S) != 1 for S in spaces):
        raise IntegrityError("class sums failed to separate the characters")
    return [S[0] for S in spaces]


def character_table(G: FiniteGroup, cap: int = DEFAULT_ORDER_CAP, seed: int = 0) -> CharacterTable:
    """Irreducible characters by the class-sum eigenvector method."""
    if G.n > cap:
        raise DomainError(f"group order {G.n} exceeds the cap {cap}")
    C = G.classes
    r = len(C.reps)
    e = G.exponent
    q = _choose_prime(e, G.n)
    z = _primitive_root_of_unity(e, q)
    mats = _class_matrices(G, C)
    vecs = _split_eigenspaces(mats, r, q, random.Random(seed))
    id_class = C.class_of[G.identity]
    inv_class = [C.class_of[G.inv[a]] for a in C.reps]
    # class-power maps: class of g^i for each class rep g
    orders = [G.element_order(a) for a in C.reps]
    power_class = []
    for a, o in zip(C.reps, orders):
        row, x = [], G.identity
        for _ in range(o):
            row.append(C.class_of[x])
            x = G.mul[x][a]
        power_class.append(row)
    rows = []
    for w in vecs:
        w = [x * pow(w[id_class], -1, q) % q for x in w]
        s = sum(w[j] * w[inv_class[j]] * pow(C.sizes[j], -1, q) for j in range(r)) % q
        d2 = G.n * pow(s, -1, q) % q
        d = next((d for d in range(1, math.isqrt(G.n) + 1) if d * d % q == d2), None)
        if d is None:
            raise IntegrityError("could not determine a character degree")
        chi_mod = [w[j] * d * pow(C.sizes[j], -1, q) % q for j in range(r)]
        row = []
        for j in range(r):
            o = orders[j]
            step = e // o
            mult = [0] * e
            for k in range(o):
                # multiplicity of the eigenvalue zeta_o^k = zeta_e^(k step)
                acc = 0
                for i in range(o):
                    acc += chi_mod[power_class[j][i]] * pow(z, (-i * k * step) % e, q)
                m = acc * pow(o, -1, q) % q
                if m > d:
                    raise IntegrityError("eigenvalue multiplicity out of range")
                mult[k * step] = m
            row.append(Cyclotomic.from_multiplicities(e, mult))
        rows.append(row)
    rows.sort(key=lambda row: (int(row[0].to_rational()),
                               any(v != 1 for v in row), [str(v) for v in row]))
    return CharacterTable(G, C, e, rows, q)


def inner_product(G: FiniteGroup, chi: Sequence[Cyclotomic], psi: Sequence[Cyclotomic]) -> Fraction:
    """<chi, psi> = |G|^-1 sum_g chi(g) conj(psi(g)); must be rational."""
    acc = Cyclotomic.rational(chi[0].e, 0)
    for a, b in zip(chi, psi):
        acc = acc + a * b.conj()
    acc = acc / G.n
    return acc.to_rational()


def check_orthogonality(T: CharacterTable) -> bool:
    chars = T.characters()
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            if inner_product(T.group, a, b) != (1 if i == j else 0):
                return False
    return True


def regular_character(G: FiniteGroup, e: int | None = None) -> list[Cyclotomic]:
    e = e if e is not None else G.exponent
    return [Cyclotomic.rational(e, G.n if a == G.identity else 0) for a in range(G.n)]


def decompose_regular(G: FiniteGroup, table: CharacterTable | None = None) -> list[int]:
    T = table if table is not None else character_table(G)
    mults = T.decompose(regular_character(G, T.exponent))
    return [int(m) for m in mults]


# ---------------------------------------------------------------------------
# induction and restriction
# ---------------------------------------------------------------------------

def subgroup_characters(H: Subgroup, e: int) -> list[list[Cyclotomic]]:
    """Irreducible characters of H, lifted into Q(zeta_e) (e a multiple of exp(H))."""
    T = character_table(H.group)
    eH = T.exponent
    if e % eH:
        raise DomainError("field order must be a multiple of the subgroup exponent")
    lift = e // eH
    out = []
    for row in T.characters():
        out.append([_embed(v, eH, e, lift) for v in row])
    return out


def _embed(v: Cyclotomic, eH: int, e: int, lift: int) -> Cyclotomic:
    """Image of v in Q(zeta_e) under zeta_eH -> zeta_e^lift."""
    acc = Cyclotomic.rational(e, 0)
    for i, c in enumerate(v.c):
        if c:
            acc = acc + Cyclotomic.root(e, i * lift) * c
    return acc


def trivial_character(H: Subgroup, e: int) -> list[Cyclotomic]:
    return [Cyclotomic.rational(e, 1) for _ in H.elements]


def restrict(chi_G: Sequence[Cyclotomic], H: Subgroup) -> list[Cyclotomic]:
    return [chi_G[a] for a in H.elements]


def induce(H: Subgroup, chi: Sequence[Cyclotomic], K: Subgroup | None = None) -> list[Cyclotomic]:
    """Frobenius formula (Ind chi)(g) = |H|^-1 sum_{x : x^-1 g x in H} chi(x^-1 g x).

    The result is a character of K (default the ambient group) when H <= K.
    """
    G = H.G
    K = K if K is not None else Subgroup.whole(G)
    for a in H.elements:
        if a not in K:
            raise DomainError("inducing subgroup is not contained in the target")
    e = chi[0].e
    out = []
    for g in K.elements:
        acc = Cyclotomic.rational(e, 0)
        for x in K.elements:
            y = G.conj(g, G.inv[x])  # x^-1 g x
            i = H.pos.get(y)
            if i is not None:
                acc = acc + chi[i]
        out.append(acc / H.order)
    return out


def conjugate_character(H: Subgroup, chi: Sequence[Cyclotomic], g: int) -> tuple[Subgroup, list]:
    """(g^-1 H g, x -> chi(g x g^-1))."""
    G = H.G
    Hg = H.conjugate(g)
    vals = [chi[H.pos[G.conj(x, g)]] for x in Hg.elements]
    return Hg, vals


def double_cosets(K: Subgroup, N: Subgroup) -> list[tuple[int, int]]:
    """Representatives and sizes of the double cosets K g N."""
    G = K.G
    seen = [False] * G.n
    out = []
    for g in range(G.n):
        if seen[g]:
            continue
        dc = {G.mul[G.mul[k][g]][n] for k in K.elements for n in N.elements}
        for x in dc:
            seen[x] = True
        out.append((g, len(dc)))
    return out


@dataclass
class IdentityReport:
    holds: bool
    lhs: list
    rhs: list
    certificate: list = field(default_factory=list)

    def to_json(self, with_certificate: bool = True) -> dict:
        doc = {"holds": self.holds, "lhs": [v.to_json() for v in self.lhs],
               "rhs": [v.to_json() for v in self.rhs]}
        if with_certificate:
            doc["certificate"] = self.certificate
        return doc


def _add_chars(a, b):
    return [x + y for x, y in zip(a, b)]


def _decompose_in(H: Subgroup, chi, e) -> list[str]:
    irr = subgroup_characters(H, e)
    return [str(inner_product(H.group, chi, psi)) for psi in irr]


def mackey_restriction_check(K: Subgroup, N: Subgroup, chi: Sequence[Cyclotomic]) -> IdentityReport:
    """Res_N Ind_K^G chi = sum_{g in K\\G/N} Ind_{N & g^-1 K g}^N (chi^g restricted)."""
    e = chi[0].e
    lhs = restrict(induce(K, chi), N)
    rhs = [Cyclotomic.rational(e, 0) for _ in N.elements]
    cert = []
    for g, size in double_cosets(K, N):
        Kg, chig = conjugate_character(K, chi, g)
        D = Kg.intersect(N)
        res = [chig[Kg.pos[x]] for x in D.elements]
        part = induce(D, res, N)
        rhs = _add_chars(rhs, part)
        cert.append({"rep": g, "size": size, "intersection_order": D.order,
                     "constituent": [v.to_json() for v in part],
                     "multiplicities": _decompose_in(N, part, e)})
    return IdentityReport(lhs == rhs, lhs, rhs, cert)


def tensor_product_check(K: Subgroup, N: Subgroup, chi: Sequence[Cyclotomic],
                         psi: Sequence[Cyclotomic]) -> IdentityReport:
    """Ind_K chi * Ind_N psi = sum_{g in K\\G/N} Ind_{g^-1 K g & N}^G (chi^g * Res psi)."""
    G = K.G
    e = chi[0].e
    a, b = induce(K, chi), induce(N, psi)
    lhs = [x * y for x, y in zip(a, b)]
    rhs = [Cyclotomic.rational(e, 0) for _ in range(G.n)]
    cert = []
    whole = Subgroup.whole(G)
    for g, size in double_cosets(K, N):
        Kg, chig = conjugate_character(K, chi, g)
        D = Kg.intersect(N)
        prod = [chig[Kg.pos[x]] * psi[N.pos[x]] for x in D.elements]
        part = induce(D, prod)
        rhs = _add_chars(rhs, part)
        cert.append({"rep": g, "size": size, "intersection_order": D.order,
                     "constituent": [v.to_json() for v in part],
                     "multiplicities": _decompose_in(whole, part, e)})
    return IdentityReport(lhs == rhs, lhs, rhs, cert)


def frobenius_reciprocity(H: Subgroup, chi: Sequence[Cyclotomic], psi_G: Sequence[Cyclotomic]) -> bool:
    """<Ind chi, psi>_G = <chi, Res psi>_H."""
    G = H.G
    return inner_product(G, induce(H, chi), psi_G) == inner_product(H.group, chi, restrict(psi_G, H))


# ---------------------------------------------------------------------------
# catalogue
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("order must be positive")
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)], f"C{n}")


def symmetric_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 0] + list(range(2, n)))] if n >= 2 else [tuple(range(n))]
    if n >= 3:
        gens.append(tuple(list(range(1, n)) + [0]))
    return FiniteGroup.from_permutations(gens, f"S{n}")


def alternating_group(n: int) -> FiniteGroup:
    gens = [tuple([1, 2, 0] + list(range(3, n)))]
    for k in range(3, n):
        g = list(range(n))
        g[0], g[1], g[k] = g[1], g[k], g[0]
        gens.append(tuple(g))
    return FiniteGroup.from_permutations(gens, f"A{n}")


def dihedral_group(m: int) -> FiniteGroup:
    """Symmetries of the m-gon (order 2m)."""
    rot = tuple((i + 1) % m for i in range(m))
    ref = tuple((-i) % m for i in range(m))
    return FiniteGroup.from_permutations([rot, ref], f"D{m}")


def quaternion_group() -> FiniteGroup:
    """Q8 as permutations of 8 points: i = (1234)(5678), j = (1537)(2846)."""
    def perm(cycles):
        p = list(range(8))
        for c in cycles:
            for a, b in zip(c, c[1:] + c[:1]):
                p[a - 1] = b - 1
        return tuple(p)

    i = perm([(1, 2, 3, 4), (5, 6, 7, 8)])
    j = perm([(1, 5, 3, 7), (2, 8, 4, 6)])
    return FiniteGroup.from_permutations([i, j], "Q8")


def group_from_tables(tables: Sequence[Sequence[int]], name: str = "G",
                      cap: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Group generated by permutation tables of Z/p^l."""
    return FiniteGroup.from_permutations(tables, name, cap)


def perm_index(G: FiniteGroup, perm: Sequence[int]) -> int:
    """Index of a permutation in a group built from permutations."""
    return G.perms.index(tuple(perm))


NAMED_GROUPS = {
    "s3": lambda: symmetric_group(3),
    "s4": lambda: symmetric_group(4),
    "a4": lambda: alternating_group(4),
    "d4": lambda: dihedral_group(4),
    "q8": quaternion_group,
}


def named_group(name: str) -> FiniteGroup:
    key = name.lower()
    if key in NAMED_GROUPS:
        return NAMED_GROUPS[key]()
    if key.startswith("c") and key[1:].isdigit():
        return cyclic_group(int(key[1:]))
    if key.startswith("s") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    if key.startswith("d") and key[1:].isdigit():
        return dihedral_group(int(key[1:]))
    raise DomainError(f"unknown group {name!r}")
