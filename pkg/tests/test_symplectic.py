import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from padicdiff.errors import DomainError
from padicdiff.padic import Val
from padicdiff.symplectic import (OneForm, PolyMap, TwoForm, check_potential, check_symplectic,
                                  determinant, exterior_derivative, is_nondegenerate,
                                  lie_derivative, lie_derivative_kernel, linear_form, monomials,
                                  padd, pconst, perturb, pmul, pvar, random_symplectic_matrix,
                                  sp_membership, standard_epsilon)

p = 3


def is_zero_form(F):
    return all(not e for row in F.entries for e in row)


def test_exterior_derivative_examples():
    assert is_zero_form(exterior_derivative(OneForm(2, (pconst(5, 2), {}))))
    assert is_zero_form(exterior_derivative(OneForm(2, (pvar(0, 2), {}))))
    F = exterior_derivative(linear_form(standard_epsilon(2)))
    assert F.at((0, 0)) == [[0, -2], [2, 0]] and F.at((1, 7)) == F.at((0, 0))
    assert is_nondegenerate(F, p=p)[0]


def test_nondegenerate_examples():
    assert is_nondegenerate(TwoForm.constant(standard_epsilon(2)), p=p) == (True, Val(0))
    assert not is_nondegenerate(TwoForm.constant([[0, 0], [0, 0]]), p=p)[0]
    assert is_nondegenerate(TwoForm.constant([[0, 9], [-9, 0]]), p=p) == (True, Val(4))
    assert not is_nondegenerate(TwoForm.constant(standard_epsilon(3)), p=p)[0]


def test_two_form_must_be_antisymmetric():
    with pytest.raises(DomainError):
        TwoForm.constant([[0, 1], [1, 0]])


def test_determinant():
    assert determinant([[2, 1], [1, 1]]) == 1
    assert determinant([[0, 3, 0], [1, 0, 0], [0, 0, 2]]) == -6


def test_potential_examples():
    A = linear_form(standard_epsilon(2))
    assert check_potential(PolyMap.identity(2), A)
    assert check_potential(PolyMap.linear([[1, 1], [0, 1]]), A)
    assert not check_potential(PolyMap.linear([[1 + p, 0], [0, 1 + p]]), A)


def test_symplectic_examples():
    F = TwoForm.constant(standard_epsilon(2))
    assert check_symplectic(PolyMap.identity(2), F)
    x1, x2 = pvar(0, 2), pvar(1, 2)
    shear = PolyMap(2, (padd(x1, pmul(x2, x2)), x2))
    assert check_symplectic(shear, F)
    assert not check_symplectic(PolyMap.linear([[1 + p, 0], [0, 1]]), F)


def test_sp_examples():
    assert sp_membership([[1, 0], [0, 1]])
    assert sp_membership([[1, 1], [0, 1]])
    assert not sp_membership([[1 + p, 0], [0, 1]])
    with pytest.raises(DomainError):
        sp_membership([[1]])
    with pytest.raises(DomainError):
        PolyMap(2, (pmul(pvar(0, 2), pvar(0, 2)), pvar(1, 2))).matrix()


@pytest.mark.parametrize("n,D,expected", [(2, 1, 3), (2, 2, 3), (2, 3, 3), (4, 1, 10), (4, 2, 10)])
def test_kernel_dimension(n, D, expected):
    A = linear_form(standard_epsilon(n))
    res = lie_derivative_kernel(A, D, p)
    assert res.dimension == expected
    for xi in res.basis:
        assert all(not c for c in lie_derivative(xi, A))


def test_kernel_of_zero_form():
    A = OneForm(2, ({}, {}))
    assert lie_derivative_kernel(A, 2, p).dimension == 2 * len(monomials(2, 2))


def test_kernel_cap():
    with pytest.raises(DomainError):
        lie_derivative_kernel(linear_form(standard_epsilon(4)), 3, p, unknown_cap=10)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 4]))
def test_random_symplectic_matrices(seed, n):
    rng = random.Random(seed)
    M = random_symplectic_matrix(rng, n)
    g = PolyMap.linear(M)
    F = exterior_derivative(linear_form(standard_epsilon(n)))
    A = linear_form(standard_epsilon(n))
    assert sp_membership(M) and check_symplectic(g, F)
    assert check_potential(g, A)
    bad = PolyMap.linear(perturb(M, p))
    assert not sp_membership(perturb(M, p)) and not check_symplectic(bad, F)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_composition_stays_symplectic(seed):
    rng = random.Random(seed)
    F = TwoForm.constant(standard_epsilon(2))
    x1, x2 = pvar(0, 2), pvar(1, 2)
    c = Fraction(rng.randrange(-3, 4))
    shear = PolyMap(2, (padd(x1, pmul(pconst(c, 2), pmul(x2, x2))), x2))
    lin = PolyMap.linear(random_symplectic_matrix(rng, 2))
    assert check_symplectic(shear.compose(lin), F)
    assert check_symplectic(lin.compose(shear), F)


def test_json_round_trip():
    g = PolyMap.linear([[1, 1], [0, 1]])
    assert PolyMap.from_json(g.to_json()) == g
    A = linear_form(standard_epsilon(2))
    assert OneForm.from_json(A.to_json()) == A
