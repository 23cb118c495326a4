"""
Tests for partitions, tableaux, lambda-keys and row end max tableaux
"""

import pytest

from combinatorics.errors import InputError, TableauShapeError
from combinatorics.rtuples import RSet, RTuple, chain_of_perm, iter_r_permutations, rank_tuple
from combinatorics.tableaux import (
    Partition,
    Tableau,
    column_of_set,
    is_gapless_key,
    is_key,
    key_of_chain,
    key_of_perm,
    row_end_list,
    row_end_max,
    tableau_leq,
    validate_tableau,
)


def test_partition_basics():
    shape = Partition((7, 7, 7, 7, 7, 5, 5, 5, 5, 2, 2, 0))
    assert shape.n == 12
    assert shape.column_lengths == (11, 11, 9, 9, 9, 5, 5)
    assert shape.rset == RSet(12, (5, 9, 11))
    assert list(shape.columns_of_length(9)) == [3, 4, 5]
    assert shape.rightmost_column_of_length(11) == 2


def test_partition_rejects_increasing_parts():
    with pytest.raises(InputError):
        Partition((1, 2, 0))
    with pytest.raises(InputError):
        Partition.parse("2,-1")


def test_minimal_partition_for_rset():
    assert Partition.minimal_for(RSet(9, (2, 3, 5, 7))) == Partition((4, 4, 3, 2, 2, 1, 1, 0, 0))
    assert Partition.minimal_for(RSet(3)) == Partition((0, 0, 0))


def test_worked_example_key(worked_shape, worked_perm, worked_key, worked_row_ends):
    y = key_of_perm(worked_perm, worked_shape)
    assert y == worked_key
    assert validate_tableau(y).valid
    assert is_key(y)
    assert is_gapless_key(y)
    assert row_end_list(y) == worked_row_ends
    assert row_end_max(worked_shape, worked_row_ends) == y


def test_key_shape_mismatch_is_rejected(worked_shape):
    with pytest.raises(InputError):
        key_of_perm(RTuple.parse("3;1;2"), worked_shape)


def test_validate_reports_row_violation(small_shape):
    report = validate_tableau(Tableau(small_shape, ((2, 3), (1,))))
    assert not report
    assert report.reason == "row not weakly increasing"
    assert report.cells == ((1, 1), (2, 1))


def test_validate_reports_column_violation(small_shape):
    report = validate_tableau(Tableau(small_shape, ((3, 3), (3,))))
    assert report.reason == "column not strictly increasing"


def test_tableau_shape_errors(small_shape):
    with pytest.raises(TableauShapeError):
        Tableau(small_shape, ((1, 2),))
    with pytest.raises(TableauShapeError):
        Tableau(small_shape, ((1, 2), (4,)))
    with pytest.raises(TableauShapeError):
        Tableau.from_flat(small_shape, (1, 2, 3, 3))


def test_tableau_json(small_tableau):
    assert Tableau.from_json(small_tableau.to_json()) == small_tableau
    with pytest.raises(TableauShapeError):
        Tableau.loads("not json")
    with pytest.raises(TableauShapeError):
        Tableau.from_json({"lambda": [2, 1, 0]})
    with pytest.raises(TableauShapeError):
        Tableau.from_json({"n": 4, "lambda": [2, 1, 0], "columns": [[1, 3], [2]]})


def test_tableau_text(small_tableau):
    assert str(small_tableau) == "1 2\n3"
    assert str(column_of_set(set(), 3)) == "(null tableau)"


def test_small_tableau_is_not_a_key(small_tableau):
    assert not is_key(small_tableau)


def test_column_of_set():
    y = column_of_set({6, 2, 3}, 6)
    assert y.columns == ((2, 3, 6),)
    assert y.shape == Partition((1, 1, 1, 0, 0, 0))
    with pytest.raises(InputError):
        column_of_set({7}, 6)


def test_rectangular_shape_key():
    shape = Partition((1, 1))
    p = RTuple.parse("1,2")
    assert key_of_perm(p, shape).columns == ((1, 2),)


def test_key_of_chain_reads_blocks():
    shape = Partition((1, 1, 0))
    chain = chain_of_perm(RTuple.parse("2,3;1"))
    assert key_of_chain(chain, shape).columns == ((2, 3),)


def test_counterexample_key_is_not_gapless():
    shape = Partition((2, 1, 1, 0))
    p = RTuple.parse("4;1,2;3")
    y = key_of_perm(p, shape)
    assert y.columns == ((1, 2, 4), (4,))
    assert row_end_max(shape, rank_tuple(p)) == y
    assert not is_gapless_key(y)


def test_gapless_key_needs_a_key(small_tableau):
    with pytest.raises(InputError):
        is_gapless_key(small_tableau)


def test_row_end_list_reads_latent_column():
    shape = Partition((1, 0, 0))
    t = Tableau(shape, ((2,),))
    assert row_end_list(t) == RTuple(RSet(3, (1,)), (2, 2, 3))


def test_row_end_max_of_identity_is_minimal():
    for rset in (RSet(4, (1, 3)), RSet.full(4), RSet(5, (2,))):
        shape = Partition.minimal_for(rset)
        assert row_end_max(shape, RTuple.identity(rset)) == Tableau.minimal(shape)


def test_row_end_max_of_gapless_tuple_is_a_key():
    shape = Partition.minimal_for(RSet(9, (3, 8)))
    m = row_end_max(shape, RTuple.parse("2,4,6;4,5,6,7,9;9"))
    assert is_key(m)
    assert m == key_of_perm(RTuple.parse("2,4,6;1,3,5,7,9;8"), shape)


def test_row_end_max_rejects_bad_tuples():
    shape = Partition((1, 0))
    with pytest.raises(InputError):
        row_end_max(shape, RTuple.parse("1,2"))
    with pytest.raises(InputError):
        row_end_max(Partition((1, 1, 0)), RTuple.parse("2,1;3"))


def test_keys_have_rank_tuple_row_ends():
    rset = RSet(4, (1, 3))
    shape = Partition.minimal_for(rset)
    for p in iter_r_permutations(rset):
        assert row_end_list(key_of_perm(p, shape)) == rank_tuple(p)


def test_tableau_order(small_shape, small_tableau):
    assert tableau_leq(Tableau.minimal(small_shape), small_tableau)
    assert not tableau_leq(small_tableau, Tableau.minimal(small_shape))
    with pytest.raises(InputError):
        tableau_leq(small_tableau, Tableau.minimal(Partition((1, 0))))
