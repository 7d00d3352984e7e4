from __future__ import annotations

import pytest

from relfocus.decompose import focus, is_independent
from relfocus.errors import GuardError
from relfocus.oracle import (
    attribute_names,
    correlation_witness,
    enumerate_partitions,
    gen_planted,
    gen_random_relation,
    oracle_focus,
    oracle_is_correlated,
    oracle_mincors,
)
from relfocus.partition import Partition, bottom, refines, top
from relfocus.relation import Relation, complete_relation, join_relations

BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877, 8: 4140}


@pytest.mark.parametrize("n", sorted(BELL))
def test_partition_counts_match_bell_numbers(n):
    parts = list(enumerate_partitions(n))
    assert len(parts) == BELL[n]
    assert len(set(parts)) == BELL[n], "every partition exactly once"


def test_enumerate_partitions_smallest_ground_set():
    assert list(enumerate_partitions(1)) == [bottom(1)]


def test_enumerate_partitions_guard():
    with pytest.raises(GuardError):
        enumerate_partitions(13)


def test_correlation_witness_entangled(entangled):
    got = correlation_witness(entangled, bottom(4), [[0], [1]])
    assert got == (("a2",), ("b1",))
    assert oracle_is_correlated(entangled, bottom(4), [[0], [1]]) is True


def test_correlation_witness_complete(entangled):
    full = complete_relation(entangled.scheme)
    assert correlation_witness(full, bottom(4), [[0], [1], [2], [3]]) is None
    assert oracle_is_correlated(full, bottom(4), [[2], [3]]) is False


def test_correlation_witness_blockwise(witness):
    got = correlation_witness(witness, bottom(5), [[3], [4]])
    assert got == (("d2",), ("e2",))


def test_combination_space_guard():
    labels = [tuple(f"{c}{i}" for c in "vwxyz") for i in range(30)]
    rel = Relation.from_rows(("V", "W", "X", "Y", "Z"), labels)
    with pytest.raises(GuardError):
        oracle_is_correlated(rel, bottom(5), [[0], [1], [2], [3], [4]])


def test_oracle_mincors(entangled, witness):
    assert set(oracle_mincors(entangled)) == {(0, 1), (2, 3)}
    assert set(oracle_mincors(witness)) == {(0, 1, 2), (3, 4)}
    assert oracle_mincors(complete_relation(entangled.scheme)) == ()


def test_oracle_mincors_guard():
    rel = gen_random_relation(0, 13, 2, 10)
    with pytest.raises(GuardError):
        oracle_mincors(rel)


def test_oracle_focus(entangled, separable, witness):
    assert oracle_focus(separable) == Partition.from_blocks([[0, 1], [2, 3]])
    assert oracle_focus(entangled) == top(4)
    assert oracle_focus(witness) == Partition.from_blocks([[0, 1, 2], [3, 4]])


def test_oracle_focus_complete_relation():
    rel = complete_relation(
        Relation.from_rows(("A", "B", "C"), [("a1", "b1", "c1"), ("a2", "b2", "c2")]).scheme
    )
    assert oracle_focus(rel) == bottom(3)


def test_fast_path_agrees_with_oracle_on_small_batch():
    for seed in range(25):
        rel = gen_random_relation(seed, 2 + seed % 3, 3, 15)
        foc, _ = focus(rel)
        assert foc == oracle_focus(rel), f"seed {seed}"


def test_gen_random_relation_is_deterministic():
    a = gen_random_relation(42, 4, 3, 20)
    b = gen_random_relation(42, 4, 3, 20)
    assert a == b
    assert a != gen_random_relation(43, 4, 3, 20)


def test_gen_random_relation_validates_sizes():
    with pytest.raises(ValueError):
        gen_random_relation(0, 0, 3, 5)
    with pytest.raises(ValueError):
        gen_random_relation(0, 2, 3, 0)


def test_gen_planted_arithmetic():
    inst = gen_planted(9, [(2, 3), (2, 2)])
    assert len(inst.relation) == 6
    assert inst.planted == Partition.from_blocks([[0, 1], [2, 3]])
    assert is_independent(inst.relation, inst.planted, paranoid=True)
    assert join_relations(inst.factors) == inst.relation


def test_gen_planted_is_deterministic():
    assert gen_planted(5, [(2, 2), (1, 3)]).relation == gen_planted(5, [(2, 2), (1, 3)]).relation


def test_gen_planted_focus_refines_planted():
    for seed in range(10):
        inst = gen_planted(seed, [(2, 3), (1, 2), (2, 2)])
        foc, _ = focus(inst.relation)
        assert refines(foc, inst.planted), f"seed {seed}"


def test_gen_planted_rejects_impossible_blocks():
    with pytest.raises(ValueError):
        gen_planted(0, [(1, 5)], max_domain=2)  # one binary attribute, five tuples
    with pytest.raises(ValueError):
        gen_planted(0, [])


def test_attribute_names_extend_past_alphabet():
    names = attribute_names(28)
    assert names[:3] == ("A", "B", "C")
    assert names[25:28] == ("Z", "AA", "AB")
