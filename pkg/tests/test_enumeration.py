"""
Tests for the family generators, the total counts and the OEIS prefixes
"""

from collections import Counter
from itertools import combinations

import pytest

from combinatorics.errors import InputError, ResourceGuardError
from combinatorics.rtuples import RSet, RTuple, is_gapless
from combinatorics.settings import Settings
from combinatorics.tableaux import Partition
from services.enumeration_service import (
    OEIS_PREFIXES,
    PATTERNS,
    EnumerationService,
    OrderedPartition,
    ShapeTuple,
    catalan,
    chain_text,
    contains_block_pattern,
    count_cnr,
    count_total,
    even_rset,
    gapless_of_shape_tuple,
    gen_231_avoiding_multiperms,
    gen_avoiding_ordered_partitions,
    gen_gapless,
    gen_gapless_keys,
    gen_generalized_rcd_chains,
    gen_r312_avoiding,
    gen_r_permutations,
    gen_rcd_chains,
    gen_shape_tuples,
    oeis_check,
    parse_pattern,
    rset_of_chain,
    shape_tuple_of_gapless,
    total_via_formula,
)


def every_rset(n):
    for size in range(n):
        for elements in combinations(range(1, n), size):
            yield RSet(n, elements)


def test_small_counts():
    assert count_cnr(RSet(4, (2,))) == 6
    assert count_cnr(RSet.full(3)) == 5
    assert count_cnr(RSet(3, (1,))) == 3
    assert count_cnr(RSet(1)) == 1


@pytest.mark.parametrize("n", range(1, 8))
def test_full_r_gives_catalan_numbers(n):
    assert count_cnr(RSet.full(n)) == catalan(n)


def test_avoiding_permutations_in_lexicographic_order():
    found = [str(p) for p in gen_r312_avoiding(RSet.full(3))]
    assert found == ["1;2;3", "1;3;2", "2;1;3", "2;3;1", "3;2;1"]


def test_pruned_generator_agrees_with_the_predicate(cross_check):
    for rset in every_rset(5):
        list(gen_r312_avoiding(rset))


def test_permutation_guard():
    with pytest.raises(ResourceGuardError):
        next(gen_r_permutations(RSet.full(3), limit=5))
    with pytest.raises(ResourceGuardError):
        list(gen_r312_avoiding(RSet.full(3), limit=4))
    with pytest.raises(ResourceGuardError):
        gen_gapless(RSet.full(4), limit=10)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_families_are_equinumerous(n):
    chains_by_rset = Counter(rset_of_chain(c) for c in gen_generalized_rcd_chains(n, Settings()))
    for rset in every_rset(n):
        expected = count_cnr(rset)
        assert sum(1 for _ in gen_gapless(rset)) == expected
        assert sum(1 for _ in gen_rcd_chains(rset)) == expected
        assert sum(1 for _ in gen_gapless_keys(Partition.minimal_for(rset))) == expected
        assert sum(1 for _ in gen_shape_tuples(rset)) == expected
        assert sum(1 for _ in gen_231_avoiding_multiperms(rset)) == expected
        assert chains_by_rset[rset] == expected


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_six_patterns_are_equinumerous(n):
    for rset in every_rset(n):
        expected = count_cnr(rset)
        for pattern in PATTERNS:
            assert sum(1 for _ in gen_avoiding_ordered_partitions(rset, pattern)) == expected


def test_block_patterns():
    p = RTuple.parse("3;1;2")
    assert contains_block_pattern(p, (3, 1, 2))
    assert not contains_block_pattern(p, (1, 2, 3))
    assert sum(1 for _ in gen_avoiding_ordered_partitions(RSet(3, (1,)), (2, 3, 1))) == 3


def test_parse_pattern():
    assert parse_pattern("312") == (3, 1, 2)
    assert parse_pattern("2-3-1") == (2, 3, 1)
    with pytest.raises(InputError):
        parse_pattern("112")
    with pytest.raises(InputError):
        list(gen_avoiding_ordered_partitions(RSet.full(3), (1, 1, 2)))


def test_ordered_partitions():
    block = OrderedPartition.of_perm(RTuple.parse("3;1;2"))
    assert str(block) == "{3}|{1}|{2}"
    assert block.to_perm() == RTuple.parse("3;1;2")
    with pytest.raises(InputError):
        OrderedPartition(RSet(3, (1,)), (frozenset({1, 2}), frozenset({3})))


def test_shape_tuples_for_one_divider():
    shapes = [str(s) for s in gen_shape_tuples(RSet(3, (1,)))]
    assert shapes == ["()", "(1)", "(2)"]


def test_shape_tuples_for_full_r():
    found = list(gen_shape_tuples(RSet.full(3)))
    assert len(found) == 5
    assert ShapeTuple(RSet.full(3), ((2,), (0,))) not in found
    assert all(s.satisfies_row_condition() for s in found)


def test_shape_tuple_bijection():
    for rset in every_rset(5):
        gapless = list(gen_gapless(rset))
        images = {shape_tuple_of_gapless(g) for g in gapless}
        assert images == set(gen_shape_tuples(rset))
        for g in gapless:
            assert gapless_of_shape_tuple(shape_tuple_of_gapless(g)) == g


def test_shape_tuple_validation():
    with pytest.raises(InputError):
        ShapeTuple(RSet(3, (1,)), ((3,),))
    with pytest.raises(InputError):
        ShapeTuple(RSet(3, (1,)), ((1,), (1,)))
    with pytest.raises(InputError):
        gapless_of_shape_tuple(ShapeTuple(RSet.full(3), ((2,), (0,))))


def test_shape_tuple_of_gapless_example():
    g = RTuple.parse("2,4,6;4,5,6,7,9;9")
    assert is_gapless(g)
    st = shape_tuple_of_gapless(g)
    assert st.shapes == ((3, 2, 1), (1, 0, 0, 0, 0))
    assert st.to_json()["shapes"] == [[3, 2, 1], [1, 0, 0, 0, 0]]


def test_generalized_chain_counts():
    settings = Settings()
    assert sum(1 for _ in gen_generalized_rcd_chains(1, settings)) == 1
    assert sum(1 for _ in gen_generalized_rcd_chains(2, settings)) == 3
    assert sum(1 for _ in gen_generalized_rcd_chains(3, settings)) == 12


def test_generalized_chains_come_in_text_order():
    texts = [chain_text(c) for c in gen_generalized_rcd_chains(3, Settings())]
    assert texts == sorted(texts)
    assert texts[0] == "{1,2,3} > {1,2} > {1} > {}"


def test_generalized_chains_are_guarded():
    with pytest.raises(ResourceGuardError):
        next(gen_generalized_rcd_chains(9, Settings()))
    with pytest.raises(InputError):
        next(gen_generalized_rcd_chains(0, Settings()))


def test_totals():
    settings = Settings()
    assert [count_total(n, settings) for n in range(1, 6)] == [1, 3, 12, 56, 284]
    assert total_via_formula(2) == 3
    assert total_via_formula(3) == 12


@pytest.mark.parametrize("n", range(1, 8))
def test_formula_matches_summation(n):
    assert total_via_formula(n) == count_total(n, Settings())


def test_total_guards():
    with pytest.raises(ResourceGuardError):
        count_total(4, Settings(sum_n_max=3))
    with pytest.raises(InputError):
        total_via_formula(0)


def test_parallel_summation_matches():
    assert count_total(4, Settings(workers=2)) == 56


def test_even_rset():
    assert even_rset(1) == RSet(2)
    assert even_rset(3) == RSet(6, (2, 4))


def test_oeis_prefixes():
    settings = Settings()
    assert oeis_check("a220097", 3, settings) == [1, 6, 43]
    assert oeis_check("A226316", 5, settings) == list(OEIS_PREFIXES["a226316"])
    with pytest.raises(InputError):
        oeis_check("a000045", 3, settings)
    with pytest.raises(InputError):
        oeis_check("a226316", 0, settings)


@pytest.mark.slow
def test_even_sequence_fifth_term():
    assert oeis_check("a220097", 5, Settings()) == list(OEIS_PREFIXES["a220097"])


def test_service_families():
    service = EnumerationService(Settings())
    rset = RSet.full(3)
    assert service.count(rset) == 5
    assert service.count_total(5, formula=True) == 284
    assert len(service.family("opart", rset, "231")) == 5
    assert len(service.family("keys", rset)) == 5
    assert len(service.generalized_chains(3)) == 12
    assert service.oeis("a226316", 3) == [1, 3, 12]
    with pytest.raises(InputError):
        service.family("trees", rset)
