from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropline.tropical_core import normalize_point, transpose, trop_det3_is_singular, tropical_rank_le2

from oracles import permutation_sums

NONSINGULAR = [[0, 1, 2], [1, 0, 2], [2, 2, 0]]

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


def matrices(max_rows=5, max_cols=5, elements=rationals):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(elements, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_permutation_sums_of_examples():
    assert sorted(permutation_sums([[0, 0, 1], [0, 1, 0], [1, 0, 0]])) == [0, 0, 1, 1, 1, 3]
    assert sorted(permutation_sums(NONSINGULAR)) == [0, 2, 4, 4, 5, 5]


@pytest.mark.parametrize("m, expected", [
    ([[0] * 3 for _ in range(3)], True),
    ([[0, 0, 1], [0, 1, 0], [1, 0, 0]], True),
    (NONSINGULAR, False),
])
def test_trop_det3_examples(m, expected):
    assert trop_det3_is_singular(m) is expected


def test_trop_det3_rejects_wrong_shape():
    with pytest.raises(ValueError):
        trop_det3_is_singular([[0, 0], [0, 0]])


def test_det3_agrees_with_enumeration_on_small_integer_matrices():
    for entries in product(range(3), repeat=9):
        m = [list(entries[0:3]), list(entries[3:6]), list(entries[6:9])]
        sums = sorted(permutation_sums(m))
        assert trop_det3_is_singular(m) == (sums[0] == sums[1])


@given(st.lists(st.lists(rationals, min_size=3, max_size=3), min_size=3, max_size=3),
       st.integers(0, 2), st.booleans(), rationals)
def test_det3_invariant_under_row_or_column_shift(m, k, is_row, shift):
    shifted = [row[:] for row in m]
    if is_row:
        shifted[k] = [x + shift for x in shifted[k]]
    else:
        for row in shifted:
            row[k] += shift
    assert trop_det3_is_singular(m) == trop_det3_is_singular(shifted)


def test_rank_two_rows_is_collinear():
    assert tropical_rank_le2([[0, 5, Fraction(1, 3), 7], [1, 2, 3, 4]]).collinear


def test_rank_nonsingular_witness():
    v = tropical_rank_le2(NONSINGULAR)
    assert not v.collinear
    assert v.witness == ((0, 1, 2), (0, 1, 2))


def test_rank_witness_is_lexicographically_first():
    m = [[0, 0, 0, 0], [0, 1, 2, 9], [0, 2, 4, 1], [0, 3, 6, 5]]
    v = tropical_rank_le2(m)
    expected = None
    for rows in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
        for cols in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]:
            sums = sorted(permutation_sums([[m[r][c] for c in cols] for r in rows]))
            if sums[0] != sums[1]:
                expected = (rows, cols)
                break
        if expected:
            break
    assert expected is not None
    assert v.witness == expected


def test_rank_split_image_is_collinear():
    # columns 0, e3, 0, e3, e3 in three coordinates
    m = [[0, 0, 0, 0, 0], [0, 0, 0, 0, 0], [0, 1, 0, 1, 1]]
    assert tropical_rank_le2(m).collinear


def test_transpose_symmetry_exhaustive_01_3x3():
    for entries in product(range(2), repeat=9):
        m = [list(entries[0:3]), list(entries[3:6]), list(entries[6:9])]
        assert tropical_rank_le2(m).collinear == tropical_rank_le2(transpose(m)).collinear


@settings(max_examples=200)
@given(matrices())
def test_transpose_symmetry(m):
    assert tropical_rank_le2(m).collinear == tropical_rank_le2(transpose(m)).collinear


@settings(max_examples=100)
@given(matrices(4, 4), st.randoms())
def test_permutation_invariance(m, rnd):
    rows = list(range(len(m)))
    cols = list(range(len(m[0])))
    rnd.shuffle(rows)
    rnd.shuffle(cols)
    permuted = [[m[r][c] for c in cols] for r in rows]
    assert tropical_rank_le2(m).collinear == tropical_rank_le2(permuted).collinear


@pytest.mark.parametrize("v, expected", [
    ((0, 0, 0), (0, 0, 0)),
    ((5, 5, 5), (0, 0, 0)),
    ((1, 2, 4), (0, 1, 3)),
    ((Fraction(1, 2), "3/2"), (0, 1)),
])
def test_normalize_point(v, expected):
    assert normalize_point(v) == tuple(Fraction(x) for x in expected)


def test_normalize_point_rejects_floats_and_empty():
    with pytest.raises(TypeError):
        normalize_point((0.5, 1))
    with pytest.raises(ValueError):
        normalize_point(())


def test_all_orders_of_nonsingular_minor_are_nonsingular():
    for p in permutations(range(3)):
        assert not trop_det3_is_singular([NONSINGULAR[i] for i in p])
