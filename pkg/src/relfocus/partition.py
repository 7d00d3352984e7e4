"""Partitions of a finite ground set, ordered by refinement.

Ground-set elements are the integers ``0..n-1`` and every block is a bitmask
(a Python int), so refinement tests, meets and connected-component merges
reduce to bitwise operations.  A partition's ground set is the union of its
blocks; two partitions are only comparable when those unions agree.

Blocks are kept in canonical order (ascending least member), which makes
partition equality a plain tuple comparison and keeps every serialization
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator


def mask_of(ids: Iterable[int]) -> int:
    """Pack a collection of non-negative ints into a bitmask."""
    m = 0
    for i in ids:
        if i < 0:
            raise ValueError(f"negative element {i} in block")
        m |= 1 << i
    return m


def ids_of(mask: int) -> tuple[int, ...]:
    """Unpack a bitmask into a sorted tuple of element indices."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def _least(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _canonical(masks: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(set(masks), key=_least))


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering their own union.

    Use :meth:`from_masks` or :meth:`from_blocks` instead of the raw
    constructor; they canonicalize block order.
    """

    blocks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.blocks:
            raise ValueError("a partition needs at least one block")
        seen = 0
        last_least = -1
        for b in self.blocks:
            if b <= 0:
                raise ValueError("empty block in partition")
            if b & seen:
                raise ValueError("overlapping blocks in partition")
            least = _least(b)
            if least <= last_least:
                raise ValueError("blocks not in canonical order")
            seen |= b
            last_least = least

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "Partition":
        return cls(_canonical(masks))

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "Partition":
        return cls.from_masks(mask_of(b) for b in blocks)

    @property
    def universe(self) -> int:
        m = 0
        for b in self.blocks:
            m |= b
        return m

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.blocks)

    def block_containing(self, element: int) -> int:
        bit = 1 << element
        for b in self.blocks:
            if b & bit:
                return b
        raise ValueError(f"element {element} not in ground set")

    def position_of(self, block_mask: int) -> int:
        """Index of an exact block, or ValueError if it is not a block."""
        try:
            return self.blocks.index(block_mask)
        except ValueError:
            raise ValueError(f"{ids_of(block_mask)} is not a block of this partition") from None

    def to_sets(self) -> tuple[tuple[int, ...], ...]:
        return tuple(ids_of(b) for b in self.blocks)

    def __repr__(self) -> str:
        inner = ",".join("{" + ",".join(map(str, ids_of(b))) + "}" for b in self.blocks)
        return f"Partition({{{inner}}})"


def bottom(n: int) -> Partition:
    """The partition of 0..n-1 into singletons."""
    if n < 1:
        raise ValueError("ground set must be nonempty")
    return Partition(tuple(1 << i for i in range(n)))


def top(n: int) -> Partition:
    """The one-block (trivial) partition of 0..n-1."""
    if n < 1:
        raise ValueError("ground set must be nonempty")
    return Partition(((1 << n) - 1,))


def _require_same_universe(p: Partition, q: Partition) -> None:
    if p.universe != q.universe:
        raise ValueError("partitions are over different ground sets")


def refines(p: Partition, q: Partition) -> bool:
    """True iff every block of ``p`` lies inside some block of ``q``."""
    _require_same_universe(p, q)
    for b in p.blocks:
        cover = q.block_containing(_least(b))
        if b & ~cover:
            return False
    return True


def meet(p: Partition, q: Partition) -> Partition:
    """Greatest lower bound: all nonempty pairwise block intersections."""
    _require_same_universe(p, q)
    out = []
    for b in p.blocks:
        for c in q.blocks:
            both = b & c
            if both:
                out.append(both)
    return Partition.from_masks(out)


def join_partitions(p: Partition, q: Partition) -> Partition:
    """Least upper bound: connected components of the combined block family."""
    _require_same_universe(p, q)
    return connected_components(p.blocks + q.blocks)


def connected_components(members: Iterable[int]) -> Partition:
    """Merge overlapping members of a family into a partition of its union.

    Members are bitmasks; two members are connected when they share an
    element, directly or through a chain of members.  Implemented as
    union-find over the ground elements, seeded with each member.
    """
    members = tuple(members)
    if not members:
        raise ValueError("family must be nonempty")
    if any(m <= 0 for m in members):
        raise ValueError("empty member in family")

    parent: dict[int, int] = {}

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for m in members:
        ids = ids_of(m)
        for i in ids:
            parent.setdefault(i, i)
        anchor = find(ids[0])
        for i in ids[1:]:
            parent[find(i)] = anchor

    comps: dict[int, int] = {}
    for i in parent:
        comps[find(i)] = comps.get(find(i), 0) | (1 << i)
    return Partition.from_masks(comps.values())


def flatten(superfamily: Iterable[Iterable[int]]) -> tuple[int, ...]:
    """Collapse each member of a superfamily to the union of its members.

    The input is a collection of families (each a collection of bitmask
    members); the output family contains one mask per input member.
    Duplicate unions collapse, and the result is canonically ordered.
    """
    out = set()
    for fam in superfamily:
        m = 0
        count = 0
        for member in fam:
            if member <= 0:
                raise ValueError("empty member in superfamily")
            m |= member
            count += 1
        if count == 0:
            raise ValueError("empty family in superfamily")
        out.add(m)
    if not out:
        raise ValueError("superfamily must be nonempty")
    return tuple(sorted(out, key=lambda m: (_least(m), m)))
