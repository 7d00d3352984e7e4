"""Self-correlation tests and minimal correlated block sets.

A selection of blocks is self-correlated when some combination of block
values occurs in no tuple.  Deciding that never requires enumerating value
combinations: a selection is correlated exactly when the projection onto
the union of its blocks is strictly smaller than the product of the
per-block projection cardinalities.  The from-definition enumeration lives
in :mod:`relfocus.oracle` and is used only for differential testing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .partition import Partition, ids_of, mask_of
from .relation import Relation, projection_size


@dataclass(frozen=True)
class MincorFamily:
    """Minimal correlated block sets plus the blocks they leave uncovered.

    ``mincors`` holds sorted tuples of block positions within ``ground``
    (each of size >= 2, and no member contains another); ``singletons``
    holds positions not covered by any mincor.  Together they cover every
    block exactly once at the family level.  ``truncated`` records that a
    size cap stopped the level-wise search early, in which case the family
    may be missing large mincors.
    """

    ground: Partition
    mincors: tuple[tuple[int, ...], ...]
    singletons: tuple[int, ...]
    truncated: bool = False

    def __post_init__(self) -> None:
        covered = set()
        for m in self.mincors:
            if len(m) < 2:
                raise ValueError("a mincor has at least two blocks")
            covered.update(m)
        if covered & set(self.singletons):
            raise ValueError("singleton blocks must be uncovered")
        if covered | set(self.singletons) != set(range(len(self.ground.blocks))):
            raise ValueError("family does not cover the ground partition")
        for a, b in itertools.permutations(self.mincors, 2):
            if set(a) <= set(b):
                raise ValueError("mincor family must be a Sperner family")

    def members_as_masks(self) -> tuple[int, ...]:
        """All family members as bitmasks over block positions."""
        return tuple(mask_of(m) for m in self.mincors) + tuple(1 << i for i in self.singletons)

    def attribute_sets(self) -> tuple[tuple[int, ...], ...]:
        """Each mincor as the sorted attribute ids of its blocks' union."""
        out = []
        for m in self.mincors:
            mask = 0
            for pos in m:
                mask |= self.ground.blocks[pos]
            out.append(ids_of(mask))
        return tuple(out)


def _resolve_selection(grouping: Partition, selection: Iterable) -> tuple[int, ...]:
    """Map a user-facing selection of blocks to sorted block positions.

    Each selected block is either a block position (int) or an iterable of
    attribute ids that must match a block of ``grouping`` exactly.
    """
    positions = set()
    for block in selection:
        if isinstance(block, int):
            if not 0 <= block < len(grouping.blocks):
                raise ValueError(f"block position {block} out of range")
            positions.add(block)
        else:
            positions.add(grouping.position_of(mask_of(block)))
    if not positions:
        raise ValueError("selection must contain at least one block")
    return tuple(sorted(positions))


def _selection_correlated(rel: Relation, grouping: Partition, positions: Iterable[int]) -> bool:
    union = 0
    product = 1
    for pos in positions:
        block = grouping.blocks[pos]
        union |= block
        product *= projection_size(rel, block)
    return projection_size(rel, union) < product


def is_correlated(rel: Relation, grouping: Partition, selection: Iterable) -> bool:
    """Does some combination of the selected blocks' values occur in no tuple?

    ``selection`` picks blocks of ``grouping``, either by position or as
    collections of attribute ids; every selected block must be a block of
    ``grouping``.  A single block is never correlated.
    """
    if grouping.universe != rel.scheme.mask:
        raise ValueError("grouping does not partition the relation's scheme")
    return _selection_correlated(rel, grouping, _resolve_selection(grouping, selection))


def mincors(
    rel: Relation, grouping: Partition, max_size: int | None = None
) -> tuple[tuple[int, ...], ...]:
    """All inclusion-minimal correlated block sets, as block-position tuples.

    Enumerates level-wise by selection size k = 2, 3, ...; a candidate that
    contains an already-found mincor is skipped (correlation is upward
    closed, so such a candidate is correlated but not minimal).  Blocks
    whose projection has a single value can never participate in a
    correlated selection and are skipped outright.  Candidates within a
    level run in lexicographic order on block positions, so the result
    order is deterministic.
    """
    if grouping.universe != rel.scheme.mask:
        raise ValueError("grouping does not partition the relation's scheme")
    eligible = [
        pos for pos, block in enumerate(grouping.blocks) if projection_size(rel, block) > 1
    ]
    limit = len(eligible) if max_size is None else min(max_size, len(eligible))
    found: list[tuple[int, ...]] = []
    found_sets: list[frozenset[int]] = []
    for k in range(2, limit + 1):
        for combo in itertools.combinations(eligible, k):
            chosen = frozenset(combo)
            if any(f <= chosen for f in found_sets):
                continue
            if _selection_correlated(rel, grouping, combo):
                found.append(combo)
                found_sets.append(chosen)
    return tuple(found)


def mincor_family(rel: Relation, grouping: Partition, max_size: int | None = None) -> MincorFamily:
    """The unique family of mincors plus uncovered singleton blocks."""
    minimal = mincors(rel, grouping, max_size=max_size)
    covered = {pos for m in minimal for pos in m}
    singles = tuple(pos for pos in range(len(grouping.blocks)) if pos not in covered)
    eligible = sum(1 for block in grouping.blocks if projection_size(rel, block) > 1)
    truncated = max_size is not None and 2 <= eligible and max_size < eligible
    return MincorFamily(grouping, minimal, singles, truncated)
