"""Property tests for the lattice laws and the structural invariants."""

from __future__ import annotations

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from relfocus.correlation import is_correlated
from relfocus.io import read_table, relation_to_csv, table_to_relation
from relfocus.oracle import oracle_is_correlated
from relfocus.partition import (
    Partition,
    connected_components,
    join_partitions,
    mask_of,
    meet,
    refines,
)
from relfocus.relation import Relation, join_relations, project, quotient, reordered


@st.composite
def partitions(draw, n=None):
    """Random partition via a restricted-growth string."""
    if n is None:
        n = draw(st.integers(1, 6))
    labels = [0]
    used = 1
    for _ in range(n - 1):
        v = draw(st.integers(0, used))
        labels.append(v)
        used = max(used, v + 1)
    blocks: dict[int, list[int]] = {}
    for element, label in enumerate(labels):
        blocks.setdefault(label, []).append(element)
    return Partition.from_blocks(blocks.values())


@st.composite
def partition_pairs(draw):
    n = draw(st.integers(1, 6))
    return draw(partitions(n)), draw(partitions(n))


@st.composite
def partition_triples(draw):
    n = draw(st.integers(1, 5))
    return draw(partitions(n)), draw(partitions(n)), draw(partitions(n))


@st.composite
def families(draw):
    n = draw(st.integers(1, 7))
    members = draw(
        st.lists(
            st.sets(st.integers(0, n - 1), min_size=1, max_size=n).map(mask_of),
            min_size=1,
            max_size=6,
        )
    )
    return members


@st.composite
def relations(draw):
    n = draw(st.integers(1, 4))
    domains = [draw(st.integers(1, 3)) for _ in range(n)]
    n_rows = draw(st.integers(1, 12))
    rows = [
        tuple(f"v{j}_{draw(st.integers(1, domains[j]))}" for j in range(n))
        for _ in range(n_rows)
    ]
    names = tuple(f"N{j}" for j in range(n))
    return Relation.from_rows(names, rows)


@given(partition_pairs())
def test_meet_and_join_are_commutative(pq):
    p, q = pq
    assert meet(p, q) == meet(q, p)
    assert join_partitions(p, q) == join_partitions(q, p)


@given(partition_triples())
def test_meet_and_join_are_associative(pqr):
    p, q, r = pqr
    assert meet(meet(p, q), r) == meet(p, meet(q, r))
    assert join_partitions(join_partitions(p, q), r) == join_partitions(p, join_partitions(q, r))


@given(partitions())
def test_lattice_operations_are_idempotent(p):
    assert meet(p, p) == p
    assert join_partitions(p, p) == p


@given(partition_pairs())
def test_absorption_laws(pq):
    p, q = pq
    assert meet(p, join_partitions(p, q)) == p
    assert join_partitions(p, meet(p, q)) == p


@given(partition_pairs())
def test_bounds_relate_to_refinement(pq):
    p, q = pq
    assert refines(meet(p, q), p)
    assert refines(meet(p, q), q)
    assert refines(p, join_partitions(p, q))
    assert refines(q, join_partitions(p, q))
    assert refines(p, q) == (meet(p, q) == p)
    assert refines(p, q) == (join_partitions(p, q) == q)


@given(families())
def test_connected_components_invariants(members):
    part = connected_components(members)
    union = 0
    for m in members:
        union |= m
    # blocks are disjoint (Partition enforces it) and cover exactly the union
    assert part.universe == union
    # every member sits inside exactly one block
    for m in members:
        assert sum(1 for b in part.blocks if m & b) == 1
        assert any(m & b == m for b in part.blocks)


@given(partitions())
def test_connected_components_fixes_partitions(p):
    assert connected_components(p.blocks) == p


@settings(max_examples=60, deadline=None)
@given(relations(), st.data())
def test_quotient_preserves_row_count(rel, data):
    part = data.draw(partitions(len(rel.scheme)))
    assert len(quotient(rel, part).rows) == len(rel)


@settings(max_examples=60, deadline=None)
@given(relations(), st.data())
def test_nested_projection_collapses(rel, data):
    n = len(rel.scheme)
    outer = sorted(data.draw(st.sets(st.integers(0, n - 1), min_size=1)))
    inner = sorted(data.draw(st.sets(st.sampled_from(outer), min_size=1)))
    via = project(project(rel, outer), [outer.index(i) for i in inner])
    assert via == project(rel, inner)


@settings(max_examples=40, deadline=None)
@given(relations(), relations())
def test_join_is_order_insensitive(r1, r2):
    left = Relation.from_rows(tuple(f"L{n}" for n in r1.scheme.names), list(r1.rows()))
    right = Relation.from_rows(tuple(f"R{n}" for n in r2.scheme.names), list(r2.rows()))
    a = join_relations([left, right])
    b = join_relations([right, left])
    k, m = len(left.scheme), len(right.scheme)
    assert reordered(b, list(range(m, m + k)) + list(range(m))) == a


@settings(max_examples=60, deadline=None)
@given(relations())
def test_csv_roundtrip(rel):
    again, dropped = table_to_relation(read_table(relation_to_csv(rel)))
    assert again == rel
    assert dropped == 0


@settings(max_examples=60, deadline=None)
@given(relations(), st.data())
def test_correlation_is_upward_closed(rel, data):
    n = len(rel.scheme)
    part = data.draw(partitions(n))
    k = len(part.blocks)
    sel = data.draw(st.sets(st.integers(0, k - 1), min_size=1))
    others = [i for i in range(k) if i not in sel]
    if is_correlated(rel, part, sel):
        for extra in range(len(others) + 1):
            for added in itertools.combinations(others, extra):
                assert is_correlated(rel, part, sel | set(added))
    else:
        for sub in itertools.chain.from_iterable(
            itertools.combinations(sorted(sel), size) for size in range(1, len(sel) + 1)
        ):
            assert not is_correlated(rel, part, set(sub))


@settings(max_examples=60, deadline=None)
@given(relations(), st.data())
def test_cardinality_test_matches_enumeration(rel, data):
    """The projection-size comparison and the missing-combination search agree."""
    n = len(rel.scheme)
    part = data.draw(partitions(n))
    sel = data.draw(st.sets(st.integers(0, len(part.blocks) - 1), min_size=1))
    assert is_correlated(rel, part, sel) == oracle_is_correlated(rel, part, sel)


@settings(max_examples=60, deadline=None)
@given(relations(), st.data())
def test_relation_is_contained_in_blockwise_join(rel, data):
    from relfocus.decompose import is_independent

    part = data.draw(partitions(len(rel.scheme)))
    joined = join_relations([project(rel, ids) for ids in part.to_sets()])
    concat = [i for ids in part.to_sets() for i in ids]
    aligned = reordered(joined, sorted(range(len(concat)), key=concat.__getitem__))
    assert set(rel.tuples) <= set(aligned.tuples)
    assert (set(rel.tuples) == set(aligned.tuples)) == is_independent(rel, part)
