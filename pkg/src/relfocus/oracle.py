"""Brute-force ground truth for differential testing.

Everything here works straight from the definitions: correlation by
enumerating value combinations and looking for a missing one, the focus by
enumerating every partition of the scheme and meeting the independent ones.
These paths are exponential and guarded; they exist to check the fast
implementations, not to be fast.
"""

from __future__ import annotations

import itertools
import math
import random
import string
from dataclasses import dataclass
from typing import Iterable, Iterator

from .correlation import _resolve_selection
from .decompose import is_independent
from .errors import GuardError, InternalInvariantError
from .partition import Partition, ids_of, meet, top
from .relation import Relation, join_relations, quotient

MAX_ORACLE_ATTRIBUTES = 12
MAX_COMBINATIONS = 1 << 24


def _guard_attributes(n: int) -> None:
    if n > MAX_ORACLE_ATTRIBUTES:
        raise GuardError(
            f"oracle refuses schemes with more than {MAX_ORACLE_ATTRIBUTES} attributes (got {n})"
        )


def correlation_witness(
    rel: Relation, grouping: Partition, selection: Iterable
) -> tuple[tuple[str, ...], ...] | None:
    """A combination of selected block values occurring in no tuple, or None.

    Enumerates the full combination space of the selection's block values
    (each block value is a distinct projected sub-tuple) and returns the
    first missing combination as label sub-tuples, one per selected block.
    """
    positions = _resolve_selection(grouping, selection)
    quot = quotient(rel, grouping)
    counts = [len(quot.block_values[p]) for p in positions]
    space = math.prod(counts)
    if space > MAX_COMBINATIONS:
        raise GuardError(f"combination space {space} exceeds {MAX_COMBINATIONS}")
    present = {tuple(row[p] for p in positions) for row in quot.rows}
    for combo in itertools.product(*(range(c) for c in counts)):
        if combo not in present:
            witness = []
            for p, v in zip(positions, combo):
                ids = ids_of(grouping.blocks[p])
                sub = quot.block_values[p][v]
                witness.append(
                    tuple(rel.scheme.attributes[i].values[x] for i, x in zip(ids, sub))
                )
            return tuple(witness)
    return None


def oracle_is_correlated(rel: Relation, grouping: Partition, selection: Iterable) -> bool:
    """From-definition correlation test: search for a missing combination."""
    return correlation_witness(rel, grouping, selection) is not None


def oracle_mincors(rel: Relation) -> tuple[tuple[int, ...], ...]:
    """All minimal correlated attribute sets, found by exhaustive subset scan.

    Every subset of the scheme is tested from the definition; the minimal
    members are then filtered by pairwise inclusion, with no reliance on
    upward closure.
    """
    n = len(rel.scheme)
    _guard_attributes(n)
    singletons = Partition.from_blocks([i] for i in range(n))
    correlated = []
    for k in range(2, n + 1):
        for ids in itertools.combinations(range(n), k):
            if oracle_is_correlated(rel, singletons, [[i] for i in ids]):
                correlated.append(ids)
    minimal = [
        c for c in correlated
        if not any(set(other) < set(c) for other in correlated)
    ]
    return tuple(minimal)


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Every partition of a ground set of size ``n``, each exactly once.

    Walks the restricted-growth strings of length ``n``: position i carries
    the block label of element i, and a label may exceed the running
    maximum by at most one.  The count is the n-th Bell number, hence the
    attribute guard.
    """
    _guard_attributes(n)
    if n < 1:
        raise ValueError("ground set must be nonempty")
    labels = [0] * n

    def emit() -> Partition:
        blocks: dict[int, int] = {}
        for element, label in enumerate(labels):
            blocks[label] = blocks.get(label, 0) | (1 << element)
        return Partition.from_masks(blocks.values())

    def rec(i: int, used: int) -> Iterator[Partition]:
        if i == n:
            yield emit()
            return
        for label in range(used + 1):
            labels[i] = label
            yield from rec(i + 1, max(used, label + 1))

    return rec(1, 1) if n > 1 else iter([emit()])


def oracle_focus(rel: Relation) -> Partition:
    """The meet of all independent partitions, found by exhaustive enumeration.

    Independence is decided with the paranoid (materialized-join) test.  The
    meet itself must come out independent; anything else is a bug.
    """
    n = len(rel.scheme)
    _guard_attributes(n)
    result = top(n)
    for part in enumerate_partitions(n):
        if is_independent(rel, part, paranoid=True):
            result = meet(result, part)
    if not is_independent(rel, result, paranoid=True):
        raise InternalInvariantError("meet of independent partitions is not independent")
    return result


def attribute_names(n: int) -> tuple[str, ...]:
    """Spreadsheet-style attribute names: A..Z, then AA, AB, ..."""
    out = []
    for i in range(n):
        name = ""
        k = i
        while True:
            name = string.ascii_uppercase[k % 26] + name
            k = k // 26 - 1
            if k < 0:
                break
        out.append(name)
    return tuple(out)


def gen_random_relation(seed: int, n_attributes: int, max_domain: int, max_tuples: int) -> Relation:
    """A reproducible random relation with the active-domain property.

    Rows are drawn uniformly with replacement and deduplicated; domains are
    then the observed values, so no declared-but-unused value can exist.
    """
    if n_attributes < 1 or max_domain < 1 or max_tuples < 1:
        raise ValueError("sizes must be positive")
    rng = random.Random(seed)
    names = attribute_names(n_attributes)
    domains = [rng.randint(1, max_domain) for _ in range(n_attributes)]
    n_rows = rng.randint(1, max_tuples)
    rows = [
        tuple(f"{names[j].lower()}{rng.randint(1, domains[j])}" for j in range(n_attributes))
        for _ in range(n_rows)
    ]
    return Relation.from_rows(names, rows)


@dataclass(frozen=True)
class PlantedInstance:
    """A join of independently generated factors with its known partition."""

    factors: tuple[Relation, ...]
    planted: Partition
    relation: Relation


def gen_planted(
    seed: int, blocks: Iterable[tuple[int, int]], max_domain: int = 3
) -> PlantedInstance:
    """Join random factor relations over disjoint schemes.

    ``blocks`` lists ``(attributes, tuples)`` per factor.  The planted
    partition groups each factor's attributes and is independent for the
    joined relation by construction.
    """
    specs = [(int(a), int(t)) for a, t in blocks]
    if not specs:
        raise ValueError("at least one factor block required")
    if any(a < 1 or t < 1 for a, t in specs):
        raise ValueError("factor sizes must be positive")
    rng = random.Random(seed)
    names = attribute_names(sum(a for a, _ in specs))
    factors = []
    masks = []
    offset = 0
    for n_attrs, n_tuples in specs:
        if max_domain**n_attrs < n_tuples:
            raise ValueError(
                f"a {n_attrs}-attribute factor over domains of size {max_domain} "
                f"cannot hold {n_tuples} distinct tuples"
            )
        domains = [rng.randint(min(2, max_domain), max_domain) for _ in range(n_attrs)]
        i = 0
        while math.prod(domains) < n_tuples:
            domains[i % n_attrs] = min(domains[i % n_attrs] + 1, max_domain)
            i += 1
        capacity = math.prod(domains)
        picks = rng.sample(range(capacity), n_tuples)
        block_names = names[offset : offset + n_attrs]
        rows = []
        for p in picks:
            row = []
            for j in range(n_attrs):
                row.append(f"{block_names[j].lower()}{p % domains[j] + 1}")
                p //= domains[j]
            rows.append(tuple(row))
        factors.append(Relation.from_rows(block_names, rows))
        masks.append(((1 << n_attrs) - 1) << offset)
        offset += n_attrs
    relation = join_relations(factors)
    planted = Partition.from_masks(masks)
    return PlantedInstance(tuple(factors), planted, relation)
