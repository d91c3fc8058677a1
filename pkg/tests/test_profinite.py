import random

import pytest
from hypothesis import given, settings, strategies as st

from padicdiff.diffeo import Diffeo, compose, invert
from padicdiff.errors import DomainError
from padicdiff.profinite import (FiniteMap, ball_swap_diffeo, group_closure, maps_consistent,
                                 random_w_element, reduction_consistency, translation_map,
                                 truncate, truncate_from_rule)
from padicdiff.reps import FiniteGroup, conjugacy_classes

p, N, D, L = 3, 16, 12, 4
KW = {"precision": N, "degree": D, "level": L}


def test_truncate_identity():
    ident = Diffeo.identity(p, **KW)
    for l in range(1, L + 1):
        assert truncate(ident, l) == FiniteMap.identity(p, l)


def test_truncate_translation():
    f = Diffeo.translation(9, p, **KW)
    assert truncate(f, 3).table == tuple((x + 9) % 27 for x in range(27))
    assert truncate(f, 2) == FiniteMap.identity(p, 2)


def test_truncate_outside_cache():
    with pytest.raises(DomainError):
        truncate(Diffeo.identity(p, **KW), L + 1)


def test_reduction_consistency_examples():
    assert reduction_consistency(Diffeo.identity(p, **KW), 2)
    upper = FiniteMap.identity(p, 2)
    corrupted = FiniteMap(p, 1, (1, 0, 2))
    assert not maps_consistent(upper, corrupted)


def test_closure_examples():
    assert group_closure([FiniteMap.identity(p, 2)]).order == 1
    assert group_closure([translation_map(1, p, 2)]).order == 9
    with pytest.raises(DomainError):
        group_closure([FiniteMap(p, 1, (0, 0, 1))])


def test_closure_cap():
    G = group_closure([translation_map(1, p, 3)], cap=5)
    assert not G.complete and G.order == 5


def test_ball_swaps_generate_S3():
    s01 = truncate(ball_swap_diffeo(0, 1, p, 1, table_level=2, precision=N, degree=D), 2)
    s12 = truncate(ball_swap_diffeo(1, 2, p, 1, table_level=2, precision=N, degree=D), 2)
    G = group_closure([s01, s12])
    H = FiniteGroup(G.multiplication_table(), "swaps")
    # the only nonabelian group of order 6
    assert H.n == 6
    assert sorted(conjugacy_classes(H).sizes) == [1, 2, 3]


def test_ball_swap_examples():
    f = ball_swap_diffeo(0, 1, p, 1, table_level=L, precision=N, degree=D)
    assert compose(f, f).tables == Diffeo.identity(p, **KW).tables
    assert f(0) == 1 and f(p) == p + 1 and f(2) == 2
    g = ball_swap_diffeo(1, 2, p, 1, table_level=L, precision=N, degree=D)
    h = truncate(compose(f, g), 1)
    # a 3-cycle on ball labels
    assert h.table != (0, 1, 2) and (h @ h @ h).table == (0, 1, 2)
    with pytest.raises(DomainError):
        ball_swap_diffeo(1, 1, p)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_truncation_is_a_homomorphism(seed):
    rng = random.Random(seed)
    f = random_w_element(rng, p, L, N, D)
    g = random_w_element(rng, p, L, N, D)
    fg, fi = compose(f, g), invert(f)
    for l in range(1, L + 1):
        assert truncate(fg, l) == truncate(f, l) @ truncate(g, l)
        assert truncate(fg, l) == truncate_from_rule(fg, l)
        assert truncate(fi, l) == truncate(f, l).inverse()
        assert truncate(fi, l) == truncate_from_rule(fi, l)
        assert truncate(f, l).is_permutation()
        if l >= 2:
            assert reduction_consistency(fg, l)


def test_json_round_trip():
    m = translation_map(4, p, 2)
    assert FiniteMap.from_json(m.to_json()) == m
