import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from padicdiff.cyclotomic import Cyclotomic, cyclotomic_poly
from padicdiff.errors import DomainError, IntegrityError
from padicdiff.reps import (FiniteGroup, Subgroup, character_table, check_orthogonality,
                            conjugacy_classes, cyclic_group, decompose_regular, dihedral_group,
                            double_cosets, frobenius_reciprocity, induce, inner_product,
                            mackey_restriction_check, named_group, perm_index, quaternion_group,
                            restrict, subgroup_characters, symmetric_group,
                            tensor_product_check, trivial_character)


def numeric_degrees(G):
    """Degrees from floating-point central characters, independent of the modular method."""
    classes, seen = [], set()
    for a in range(G.n):
        if a not in seen:
            c = {G.mul[G.mul[g][a]][G.inv[g]] for g in range(G.n)}
            seen |= c
            classes.append(sorted(c))
    r = len(classes)
    where = {x: k for k, c in enumerate(classes) for x in c}
    A = np.zeros((r, r, r))
    for i, Ci in enumerate(classes):
        for k, Ck in enumerate(classes):
            z = Ck[0]
            for x in Ci:
                y = G.mul[G.inv[x]][z]
                A[i, where[y], k] += 1
    rng = np.random.default_rng(0)
    X = sum(rng.normal() * A[i] for i in range(r))
    _, vecs = np.linalg.eig(X)
    e = where[G.identity]
    degrees = []
    for col in vecs.T:
        w = col / col[e]
        s = sum(abs(w[k]) ** 2 / len(classes[k]) for k in range(r))
        degrees.append(round(np.sqrt(G.n / s).real))
    return sorted(degrees)


GROUPS = {
    "C2": cyclic_group(2), "C7": cyclic_group(7), "C12": cyclic_group(12),
    "S3": symmetric_group(3), "S4": symmetric_group(4), "D4": dihedral_group(4),
    "Q8": quaternion_group(), "A4": named_group("a4"),
}


def test_class_examples():
    assert conjugacy_classes(cyclic_group(6)).sizes == (1,) * 6
    assert sorted(conjugacy_classes(symmetric_group(3)).sizes) == [1, 2, 3]


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_degrees_against_numeric_oracle(name):
    G = GROUPS[name]
    T = character_table(G)
    assert sorted(T.degrees) == numeric_degrees(G)


@pytest.mark.parametrize("name", sorted(GROUPS))
def test_table_properties(name):
    G = GROUPS[name]
    T = character_table(G)
    assert check_orthogonality(T)
    assert sum(d * d for d in T.degrees) == G.n
    assert decompose_regular(G, T) == T.degrees
    assert T.degrees[0] == 1 and all(v == 1 for v in T.character(0))


def test_degree_examples():
    assert character_table(cyclic_group(2)).degrees == [1, 1]
    assert sorted(character_table(symmetric_group(3)).degrees) == [1, 1, 2]
    assert sorted(character_table(dihedral_group(4)).degrees) == [1, 1, 1, 1, 2]
    assert decompose_regular(cyclic_group(2)) == [1, 1]


def test_quaternion_vs_dihedral():
    # same degrees, different tables: Q8 has one involution, D4 has five
    q8, d4 = quaternion_group(), dihedral_group(4)
    invol = lambda G: sum(1 for a in range(G.n) if G.element_order(a) == 2)
    assert (invol(q8), invol(d4)) == (1, 5)


def S3():
    return symmetric_group(3)


def test_induce_examples():
    G = S3()
    whole = Subgroup.whole(G)
    T = character_table(G)
    for chi in T.characters():
        assert induce(whole, chi) == chi
    triv = Subgroup.trivial(G)
    reg = induce(triv, trivial_character(triv, G.exponent))
    assert reg == [Cyclotomic.rational(G.exponent, G.n if a == G.identity else 0) for a in range(G.n)]
    A3 = Subgroup.generated(G, [perm_index(G, (1, 2, 0))], "A3")
    chi = subgroup_characters(A3, G.exponent)[1]
    ind = induce(A3, chi)
    assert ind[G.identity] == 2
    assert inner_product(G, ind, ind) == 1


def test_induce_requires_subgroup():
    G = S3()
    with pytest.raises(DomainError):
        Subgroup(G, [G.identity, perm_index(G, (1, 2, 0))])


def test_double_coset_examples():
    G = S3()
    assert len(double_cosets(Subgroup.whole(G), Subgroup.whole(G))) == 1
    assert len(double_cosets(Subgroup.trivial(G), Subgroup.trivial(G))) == G.n
    H = Subgroup.generated(G, [perm_index(G, (1, 0, 2))])
    assert sorted(s for _, s in double_cosets(H, H)) == [2, 4]


def subgroups(G):
    out = {}
    for a, b in itertools.combinations_with_replacement(range(G.n), 2):
        H = Subgroup.generated(G, [a, b])
        out[H.elements] = H
    return list(out.values())


@pytest.mark.parametrize("name", ["S3", "D4", "Q8"])
def test_frobenius_reciprocity_all_subgroups(name):
    G = GROUPS[name]
    T = character_table(G)
    for H in subgroups(G):
        for chi in subgroup_characters(H, G.exponent):
            for psi in T.characters():
                assert frobenius_reciprocity(H, chi, psi)


def test_mackey_examples():
    G = S3()
    A3 = Subgroup.generated(G, [perm_index(G, (1, 2, 0))], "A3")
    C2 = Subgroup.generated(G, [perm_index(G, (1, 0, 2))], "C2")
    whole = Subgroup.whole(G)
    e = G.exponent
    chi = character_table(G).character(2)
    rep = mackey_restriction_check(whole, C2, chi)
    assert rep.holds and rep.lhs == restrict(chi, C2)
    triv = trivial_character(A3, e)
    rep = mackey_restriction_check(A3, C2, triv)
    assert rep.holds and len(rep.certificate) == 1
    nontriv = subgroup_characters(A3, e)[1]
    psi = subgroup_characters(C2, e)[1]
    assert tensor_product_check(A3, C2, nontriv, psi).holds


def test_tensor_examples():
    G = S3()
    whole = Subgroup.whole(G)
    T = character_table(G)
    a, b = T.character(1), T.character(2)
    rep = tensor_product_check(whole, whole, a, b)
    assert rep.holds and rep.lhs == [x * y for x, y in zip(a, b)]


def test_tensor_permutation_characters():
    # trivial chi, psi: both sides count fixed points of G on G/K x G/N
    G = symmetric_group(4)
    e = G.exponent
    K = Subgroup.generated(G, [perm_index(G, (1, 0, 2, 3)), perm_index(G, (0, 1, 3, 2))])
    N = Subgroup.generated(G, [perm_index(G, (1, 2, 0, 3))])
    rep = tensor_product_check(K, N, trivial_character(K, e), trivial_character(N, e))
    assert rep.holds
    cosets = lambda H: {frozenset(G.mul[g][h] for h in H.elements) for g in range(G.n)}
    cK, cN = cosets(K), cosets(N)
    for g in range(G.n):
        act = lambda c: frozenset(G.mul[g][x] for x in c)
        fixed = sum(1 for x in cK if act(x) == x) * sum(1 for y in cN if act(y) == y)
        assert rep.lhs[g] == fixed


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["S3", "S4", "D4", "Q8", "A4"]), st.integers(0, 10**6))
def test_mackey_and_tensor_random(name, seed):
    rng = random.Random(seed)
    G = GROUPS[name]
    e = G.exponent
    K = Subgroup.generated(G, [rng.randrange(G.n)])
    N = Subgroup.generated(G, [rng.randrange(G.n), rng.randrange(G.n)])
    chi = rng.choice(subgroup_characters(K, e))
    psi = rng.choice(subgroup_characters(N, e))
    assert mackey_restriction_check(K, N, chi).holds
    assert tensor_product_check(K, N, chi, psi).holds


def test_cyclotomic_arithmetic():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    z = Cyclotomic.root(12, 1)
    acc = Cyclotomic.rational(12, 1)
    for _ in range(12):
        acc = acc * z
    assert acc == 1
    assert (z * z.conj()) == 1
    assert sum((Cyclotomic.root(12, k) for k in range(12)), Cyclotomic.rational(12, 0)) == 0


def test_bad_table():
    with pytest.raises(IntegrityError):
        FiniteGroup([[0, 1], [1, 1]])
