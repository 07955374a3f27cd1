import itertools

import pytest
from hypothesis import given, strategies as st

from monofact.perm import (BOTH, DECREASING, INCREASING, NEITHER, Factorisation, Transposition,
                           compose, enumerate_minimal_factorisations,
                           enumerate_monotone_factorisations, is_231_avoiding,
                           is_cycle_factorisation, is_decreasing, is_increasing,
                           is_increasing_parking_function, monotone_class, to_231_word,
                           to_parking_word)
from monofact.tree import catalan

EX10 = Factorisation.from_pairs([(8, 9), (8, 10), (7, 8), (2, 3), (2, 4), (2, 5), (1, 2), (1, 6), (1, 7)])
EX6 = Factorisation.from_pairs([(1, 4), (1, 6), (2, 4), (3, 4), (5, 6)])


def product_by_hand(f):
    """Apply the transpositions one at a time, first factor first."""
    img = {}
    for x in range(1, f.n + 1):
        y = x
        for t in f.taus:
            if y == t.a:
                y = t.b
            elif y == t.b:
                y = t.a
        img[x] = y
    return img


def has_231(w):
    return any(w[k] < w[i] < w[j] for i, j, k in itertools.combinations(range(len(w)), 3))


def test_transposition_normalises():
    assert Transposition(3, 1) == Transposition(1, 3)
    assert repr(Transposition(5, 2)) == "(2 5)"
    with pytest.raises(ValueError):
        Transposition(2, 2)


def test_factorisation_validation():
    with pytest.raises(ValueError):
        Factorisation(3, ((1, 2),))
    with pytest.raises(ValueError):
        Factorisation.from_pairs([(1, 4), (1, 2)], n=3)
    with pytest.raises(ValueError):
        Factorisation(0, ())
    assert len(Factorisation(1, ())) == 0


@pytest.mark.parametrize("pairs,expected", [
    ([(1, 2), (1, 3)], True),
    ([(1, 2), (2, 3)], False),
    ([(8, 9), (8, 10), (7, 8), (2, 3), (2, 4), (2, 5), (1, 2), (1, 6), (1, 7)], True),
    ([(1, 2)], True),
])
def test_is_cycle_factorisation(pairs, expected):
    assert is_cycle_factorisation(Factorisation.from_pairs(pairs)) is expected


@given(st.integers(2, 7).flatmap(
    lambda n: st.lists(st.tuples(st.integers(1, n), st.integers(1, n)).filter(lambda p: p[0] != p[1]),
                       min_size=n - 1, max_size=n - 1).map(lambda ps: Factorisation.from_pairs(ps, n))))
def test_compose_matches_sequential_application(f):
    p = compose(f)
    assert {x: p[x] for x in range(1, f.n + 1)} == product_by_hand(f)
    assert is_cycle_factorisation(f) == all(p[x] == x % f.n + 1 for x in range(1, f.n + 1))


@pytest.mark.parametrize("f,cls", [
    (Factorisation.from_pairs([(1, 2), (1, 3)]), BOTH),
    (EX10, DECREASING),
    (EX6, INCREASING),
    (Factorisation.from_pairs([(2, 3), (1, 3), (2, 4)], 4), NEITHER),
])
def test_monotone_class(f, cls):
    assert monotone_class(f) == cls


def test_words_of_examples():
    assert to_parking_word(Factorisation.from_pairs([(2, 3), (1, 2)])) == (1, 2)
    assert to_parking_word(Factorisation.from_pairs([(1, 2), (1, 3)])) == (1, 1)
    assert to_parking_word(EX10) == (1, 1, 1, 2, 2, 2, 7, 8, 8)
    assert to_231_word(Factorisation.from_pairs([(2, 3), (1, 2)])) == (2, 3)
    assert to_231_word(Factorisation.from_pairs([(1, 2), (1, 3)])) == (3, 2)
    assert to_231_word(EX10) == (7, 6, 2, 5, 4, 3, 8, 10, 9)
    with pytest.raises(ValueError):
        to_parking_word(EX6)


@pytest.mark.parametrize("w,expected", [
    ((3, 2), True), ((2, 3, 1), False), ((7, 6, 2, 5, 4, 3, 8, 10, 9), True), ((), True), ((1,), True),
])
def test_231(w, expected):
    assert is_231_avoiding(w) is expected


@given(st.permutations(list(range(1, 8))))
def test_231_matches_triple_scan(w):
    assert is_231_avoiding(w) == (not has_231(w))


@pytest.mark.parametrize("w,expected", [
    ((1, 1), True), ((1, 2, 2), True), ((2, 2), False), ((1, 1, 1, 2, 2, 2, 7, 8, 8), True), ((1, 3, 3), False),
])
def test_increasing_parking(w, expected):
    assert is_increasing_parking_function(w) is expected


@pytest.mark.parametrize("n", range(2, 8))
def test_minimal_count_is_cayley(n):
    fs = enumerate_minimal_factorisations(n)
    assert len(fs) == n ** (n - 2)
    assert len({f.taus for f in fs}) == len(fs)
    assert all(is_cycle_factorisation(f) for f in fs)


def test_minimal_small_cases():
    assert [f.pairs() for f in enumerate_minimal_factorisations(2)] == [[[1, 2]]]
    assert len(enumerate_minimal_factorisations(3)) == 3
    with pytest.raises(ValueError):
        enumerate_minimal_factorisations(8)


@pytest.mark.parametrize("n", range(2, 7))
def test_monotone_enumeration_equals_filtered_minimal(n):
    every = enumerate_minimal_factorisations(n)
    for kind, pred in ((DECREASING, is_decreasing), (INCREASING, is_increasing)):
        got = {f.taus for f in enumerate_monotone_factorisations(n, kind)}
        assert got == {f.taus for f in every if pred(f)}


@pytest.mark.parametrize("n", range(2, 11))
def test_monotone_counts_are_catalan(n):
    for kind in (DECREASING, INCREASING):
        assert len(enumerate_monotone_factorisations(n, kind)) == catalan(n - 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_decreasing_invariants_exhaustive(n):
    for f in enumerate_monotone_factorisations(n, DECREASING):
        assert sorted(f.b) == list(range(2, n + 1))
        assert is_increasing_parking_function(to_parking_word(f))
        assert is_231_avoiding(to_231_word(f))


@pytest.mark.parametrize("n", range(2, 9))
def test_increasing_partition_exhaustive(n):
    for f in enumerate_monotone_factorisations(n, INCREASING):
        A, B = set(f.a), set(f.b)
        assert not A & B and A | B == set(range(1, n + 1))


def test_enumeration_bounds():
    with pytest.raises(ValueError):
        enumerate_monotone_factorisations(13, DECREASING)
    with pytest.raises(ValueError):
        enumerate_monotone_factorisations(4, "sideways")
