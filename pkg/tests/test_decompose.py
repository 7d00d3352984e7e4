from __future__ import annotations

import pytest

from relfocus.decompose import alpha, factorize, focus, is_independent
from relfocus.oracle import enumerate_partitions
from relfocus.partition import Partition, bottom, refines, top
from relfocus.relation import Relation, complete_relation, join_relations


def test_alpha_entangled_first_step(entangled):
    assert alpha(entangled, bottom(4)) == Partition.from_blocks([[0, 1], [2, 3]])


def test_alpha_entangled_second_step(entangled):
    grouped = Partition.from_blocks([[0, 1], [2, 3]])
    assert alpha(entangled, grouped) == top(4)


def test_alpha_witness_coarser_input(witness):
    x2 = Partition.from_blocks([[0], [1, 3], [2, 4]])
    assert alpha(witness, x2) == Partition.from_blocks([[0], [1, 2, 3, 4]])


def test_alpha_complete_relation_is_identity_at_bottom(entangled):
    full = complete_relation(entangled.scheme)
    assert alpha(full, bottom(4)) == bottom(4)


def test_alpha_is_inflationary_on_examples(entangled, separable, witness):
    for rel in (entangled, separable, witness):
        for part in enumerate_partitions(len(rel.scheme)):
            assert refines(part, alpha(rel, part))


def test_focus_entangled(entangled):
    foc, trace = focus(entangled)
    assert foc == top(4)
    assert trace.iterations == 3  # two productive steps plus the fixed-point check
    assert [s.result for s in trace.steps] == [
        Partition.from_blocks([[0, 1], [2, 3]]),
        top(4),
        top(4),
    ]


def test_focus_separable(separable):
    foc, trace = focus(separable)
    assert foc == Partition.from_blocks([[0, 1], [2, 3]])
    assert trace.iterations == 2


def test_focus_witness(witness):
    foc, _ = focus(witness)
    assert foc == Partition.from_blocks([[0, 1, 2], [3, 4]])


def test_focus_complete_relation(witness):
    foc, trace = focus(complete_relation(witness.scheme))
    assert foc == bottom(5)
    assert trace.iterations == 1


def test_trace_chains_and_is_bounded(entangled, separable, witness):
    for rel in (entangled, separable, witness):
        _, trace = focus(rel)
        assert trace.steps[0].start == bottom(len(rel.scheme))
        for prev, nxt in zip(trace.steps, trace.steps[1:]):
            assert prev.result == nxt.start
        assert trace.steps[-1].result == trace.steps[-1].start == trace.fixed_point
        assert trace.iterations <= len(rel.scheme)


def test_is_independent(separable, entangled):
    grouped = Partition.from_blocks([[0, 1], [2, 3]])
    assert is_independent(separable, grouped) is True
    assert is_independent(entangled, grouped) is False
    for rel in (separable, entangled):
        assert is_independent(rel, top(4)) is True


def test_paranoid_mode_agrees(separable, entangled, witness):
    for rel in (separable, entangled, witness):
        for part in enumerate_partitions(len(rel.scheme)):
            assert is_independent(rel, part, paranoid=True) == is_independent(rel, part)


def test_is_independent_validates_grouping(entangled):
    with pytest.raises(ValueError):
        is_independent(entangled, bottom(3))


def test_factorize_separable(separable):
    fz = factorize(separable)
    assert fz.verified is True
    assert [len(f) for f in fz.factors] == [3, 3]
    assert fz.cells_flat == 36
    assert fz.cells_factorized == 12
    assert join_relations(fz.factors) == separable  # blocks are contiguous here


def test_factorize_entangled_has_single_factor(entangled):
    fz = factorize(entangled)
    assert fz.focus == top(4)
    assert fz.factors == (entangled,)
    assert fz.cells_flat == fz.cells_factorized == 20  # no compression


def test_factorize_complete_relation_splits_fully():
    rel = complete_relation(
        Relation.from_rows(("X", "Y", "Z"), [("x1", "y1", "z1"), ("x2", "y2", "z2")]).scheme
    )
    fz = factorize(rel)
    assert fz.focus == bottom(3)
    assert [len(f) for f in fz.factors] == [2, 2, 2]
    assert fz.cells_flat == 24
    assert fz.cells_factorized == 6


def test_single_attribute_scheme():
    rel = Relation.from_rows(("A",), [("x",), ("y",)])
    foc, trace = focus(rel)
    assert foc == bottom(1) == top(1)
    assert trace.iterations == 1


def test_single_tuple_relation_has_singleton_focus():
    rel = Relation.from_rows(("A", "B", "C"), [("x", "y", "z")])
    foc, _ = focus(rel)
    assert foc == bottom(3)
    for part in enumerate_partitions(3):
        assert is_independent(rel, part)


def test_capped_run_reports_unverified(witness):
    # a cap of 2 misses the three-attribute mincor, so the iteration stalls
    # on a partition that fails the independence re-check
    fz = factorize(witness, max_mincor_size=2)
    assert fz.trace.truncated is True
    assert fz.verified is False
    assert fz.focus == Partition.from_blocks([[0], [1], [2], [3, 4]])
    # the factors over-approximate: every original tuple is in their join
    joined = join_relations(fz.factors)
    assert set(witness.tuples) < set(joined.tuples)


def test_capped_run_that_still_verifies(separable):
    fz = factorize(separable, max_mincor_size=2)
    assert fz.verified is True
    assert fz.focus == Partition.from_blocks([[0, 1], [2, 3]])


def test_paranoid_factorize_matches(separable):
    assert factorize(separable, paranoid=True).focus == factorize(separable).focus


def test_factorize_with_interleaved_blocks(separable):
    # permute columns to A,C,B,D so the independent blocks are no longer contiguous
    from relfocus.relation import reordered

    shuffled = reordered(separable, [0, 2, 1, 3])
    fz = factorize(shuffled)
    assert fz.verified is True
    assert fz.focus == Partition.from_blocks([[0, 2], [1, 3]])
    assert {f.scheme.names for f in fz.factors} == {("A", "B"), ("C", "D")}


def test_fixed_points_are_exactly_independent_partitions(entangled, separable, witness):
    for rel in (entangled, separable, witness):
        n = len(rel.scheme)
        fixed = {p for p in enumerate_partitions(n) if alpha(rel, p) == p}
        independent = {p for p in enumerate_partitions(n) if is_independent(rel, p)}
        assert fixed == independent
