"""Schemes, relations, and the operations projection / join / completion / quotient.

Values are interned per attribute: a tuple stores one small integer per
attribute, indexing into that attribute's label table.  String labels only
matter at the ingestion boundary (CSV, estimator input); everything
downstream works on the integer vectors.

Relations are immutable, deduplicated and canonically sorted, so equality is
a plain field comparison and every derived artifact is deterministic.  Every
value of every attribute occurs in at least one tuple (the active-domain
property); constructors establish it and all operations here preserve it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .partition import Partition, ids_of, mask_of


@dataclass(frozen=True)
class Attribute:
    """A named column with its ordered table of value labels."""

    name: str
    values: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("attribute name must be nonempty")
        if not self.values:
            raise ValueError(f"attribute {self.name!r} has an empty domain")
        if len(set(self.values)) != len(self.values):
            raise ValueError(f"attribute {self.name!r} has duplicate value labels")


@dataclass(frozen=True)
class Scheme:
    """An ordered, nonempty collection of attributes with unique names."""

    attributes: tuple[Attribute, ...]

    def __post_init__(self) -> None:
        if not self.attributes:
            raise ValueError("scheme must be nonempty")
        names = [a.name for a in self.attributes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate attribute names in scheme")

    def __len__(self) -> int:
        return len(self.attributes)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    @property
    def mask(self) -> int:
        return (1 << len(self.attributes)) - 1

    def index(self, name: str) -> int:
        for i, a in enumerate(self.attributes):
            if a.name == name:
                return i
        raise ValueError(f"no attribute named {name!r}")


@dataclass(frozen=True)
class Relation:
    """A deduplicated, canonically sorted set of tuples over a scheme."""

    scheme: Scheme
    tuples: tuple[tuple[int, ...], ...]
    _proj_sizes: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.tuples:
            raise ValueError("relation must contain at least one tuple")
        width = len(self.scheme)
        seen = [0] * width
        prev = None
        for t in self.tuples:
            if len(t) != width:
                raise ValueError(f"tuple arity {len(t)} != scheme size {width}")
            if prev is not None and t <= prev:
                raise ValueError("tuples not in canonical sorted order")
            prev = t
            for i, v in enumerate(t):
                if not 0 <= v < len(self.scheme.attributes[i].values):
                    raise ValueError(f"value index {v} out of range for attribute {i}")
                seen[i] |= 1 << v
        for i, bits in enumerate(seen):
            if bits != (1 << len(self.scheme.attributes[i].values)) - 1:
                name = self.scheme.attributes[i].name
                raise ValueError(f"attribute {name!r} has values that occur in no tuple")

    @classmethod
    def from_rows(cls, names: Sequence[str], rows: Iterable[Sequence[str]]) -> "Relation":
        """Build a relation from label rows, interning values per column.

        Domains are the distinct observed labels, interned in sorted order,
        so the representation depends only on the set of rows (two
        ingestions of the same rows compare equal, whatever their order)
        and the active-domain property holds by construction.  Duplicate
        rows collapse silently; use ``len(rows) - len(relation)`` at the
        call site when the dropped count matters.
        """
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("relation must contain at least one tuple")
        width = len(names)
        if width == 0:
            raise ValueError("scheme must be nonempty")
        for r in rows:
            if len(r) != width:
                raise ValueError(f"row of width {len(r)} does not match {width} attribute names")
        domains = [sorted({r[i] for r in rows}) for i in range(width)]
        codes = [{v: k for k, v in enumerate(d)} for d in domains]
        encoded = {tuple(codes[i][v] for i, v in enumerate(r)) for r in rows}
        scheme = Scheme(tuple(Attribute(n, tuple(d)) for n, d in zip(names, domains)))
        return cls(scheme, tuple(sorted(encoded)))

    def __len__(self) -> int:
        return len(self.tuples)

    def labels(self, t: Sequence[int]) -> tuple[str, ...]:
        return tuple(self.scheme.attributes[i].values[v] for i, v in enumerate(t))

    def rows(self) -> Iterable[tuple[str, ...]]:
        """The tuples as label rows, in canonical order."""
        for t in self.tuples:
            yield self.labels(t)


def projection_size(rel: Relation, attr_mask: int) -> int:
    """Number of distinct tuples in the projection onto ``attr_mask``.

    Memoized on the relation, keyed by the attribute mask.  The cache only
    gains entries (single-key dict writes, atomic under CPython), so
    concurrent readers are safe and the answer never depends on scheduling.
    """
    cached = rel._proj_sizes.get(attr_mask)
    if cached is not None:
        return cached
    ids = ids_of(attr_mask)
    size = len({tuple(t[i] for i in ids) for t in rel.tuples})
    rel._proj_sizes[attr_mask] = size
    return size


def project(rel: Relation, attr_ids: Iterable[int]) -> Relation:
    """Restrict every tuple to the given attributes and deduplicate.

    The result's attributes keep their label tables; projection never
    removes a value from an active domain.
    """
    ids = sorted(set(attr_ids))
    if not ids:
        raise ValueError("cannot project onto an empty sub-scheme")
    if ids[0] < 0 or ids[-1] >= len(rel.scheme):
        raise ValueError(f"attribute id out of range in {ids}")
    scheme = Scheme(tuple(rel.scheme.attributes[i] for i in ids))
    body = {tuple(t[i] for i in ids) for t in rel.tuples}
    return Relation(scheme, tuple(sorted(body)))


def join_relations(parts: Sequence[Relation]) -> Relation:
    """Cartesian combination of relations over pairwise disjoint schemes."""
    if not parts:
        raise ValueError("join needs at least one relation")
    attrs: list[Attribute] = []
    for p in parts:
        attrs.extend(p.scheme.attributes)
    names = [a.name for a in attrs]
    if len(set(names)) != len(names):
        raise ValueError("overlapping schemes: attribute names collide across parts")
    scheme = Scheme(tuple(attrs))
    body = (sum(combo, ()) for combo in itertools.product(*(p.tuples for p in parts)))
    return Relation(scheme, tuple(sorted(body)))


def complete_relation(scheme: Scheme) -> Relation:
    """Every combination of attribute values; cardinality is the domain-size product."""
    ranges = [range(len(a.values)) for a in scheme.attributes]
    return Relation(scheme, tuple(itertools.product(*ranges)))


def reordered(rel: Relation, attr_ids: Sequence[int]) -> Relation:
    """The same relation with its attributes permuted into the given order."""
    order = list(attr_ids)
    if sorted(order) != list(range(len(rel.scheme))):
        raise ValueError("attribute order must be a permutation of the scheme")
    scheme = Scheme(tuple(rel.scheme.attributes[i] for i in order))
    body = sorted(tuple(t[i] for i in order) for t in rel.tuples)
    return Relation(scheme, tuple(body))


@dataclass(frozen=True)
class QuotientRelation:
    """A relation re-encoded blockwise: each block acts as one composite attribute.

    ``block_values[k]`` is the table of distinct sub-tuples of block ``k``
    (exactly the tuples of the projection onto that block, in canonical
    order) and each row holds one index into each block's table.  There are
    exactly as many rows as base tuples.
    """

    base: Relation
    grouping: Partition
    block_values: tuple[tuple[tuple[int, ...], ...], ...]
    rows: tuple[tuple[int, ...], ...]

    def decoded_row(self, row: Sequence[int]) -> tuple[tuple[str, ...], ...]:
        """One row as a tuple of label sub-tuples, one per block."""
        out = []
        for k, v in enumerate(row):
            ids = ids_of(self.grouping.blocks[k])
            sub = self.block_values[k][v]
            out.append(tuple(self.base.scheme.attributes[i].values[x] for i, x in zip(ids, sub)))
        return tuple(out)


def quotient(rel: Relation, grouping: Partition) -> QuotientRelation:
    """Group the attributes of ``rel`` by the blocks of ``grouping``.

    Re-encoding is injective (the blocks cover the scheme), so the quotient
    has exactly ``len(rel)`` rows.
    """
    if grouping.universe != rel.scheme.mask:
        raise ValueError("grouping does not partition the relation's scheme")
    block_ids = [ids_of(b) for b in grouping.blocks]
    tables = []
    codes: list[dict[tuple[int, ...], int]] = []
    for ids in block_ids:
        values = sorted({tuple(t[i] for i in ids) for t in rel.tuples})
        tables.append(tuple(values))
        codes.append({v: i for i, v in enumerate(values)})
    rows = sorted(
        tuple(codes[k][tuple(t[i] for i in ids)] for k, ids in enumerate(block_ids))
        for t in rel.tuples
    )
    return QuotientRelation(rel, grouping, tuple(tables), tuple(rows))


def scheme_block_mask(scheme: Scheme, names: Iterable[str]) -> int:
    """Bitmask of the named attributes within ``scheme``."""
    return mask_of(scheme.index(n) for n in names)
