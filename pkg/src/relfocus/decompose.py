"""The coarsening transformer, its fixed-point iteration, and factor extraction.

One transformer step groups the attributes of a relation by the current
partition, finds the minimal correlated sets among the resulting blocks,
merges the overlapping ones, and returns the induced coarser partition.
The step never splits a block (it is inflationary), its fixed points are
exactly the independent partitions, and iterating it from the partition
into singletons reaches the finest independent partition, the focus, in at
most one step per attribute.  The focus yields the finest lossless
decomposition of the relation into a join of projections.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .correlation import MincorFamily, mincor_family
from .errors import InternalInvariantError
from .partition import Partition, bottom, connected_components, flatten, ids_of
from .relation import Relation, join_relations, project, projection_size, reordered

# Paranoid independence checks refuse to materialize joins larger than this
# unless the join provably has exactly as many tuples as the relation.
MATERIALIZE_LIMIT = 1 << 24


@dataclass(frozen=True)
class AlphaStep:
    """One transformer application: input partition, evidence, output partition."""

    start: Partition
    family: MincorFamily
    result: Partition


@dataclass(frozen=True)
class AlphaTrace:
    """The chain of transformer applications from the singleton partition."""

    steps: tuple[AlphaStep, ...]

    def __post_init__(self) -> None:
        if not self.steps:
            raise ValueError("trace must contain at least one step")
        for prev, nxt in zip(self.steps, self.steps[1:]):
            if prev.result != nxt.start:
                raise ValueError("trace steps do not chain")
        last = self.steps[-1]
        if last.result != last.start:
            raise ValueError("trace does not end at a fixed point")

    @property
    def fixed_point(self) -> Partition:
        return self.steps[-1].result

    @property
    def iterations(self) -> int:
        return len(self.steps)

    @property
    def truncated(self) -> bool:
        return any(s.family.truncated for s in self.steps)


def _alpha_step(rel: Relation, grouping: Partition, max_mincor_size: int | None) -> AlphaStep:
    family = mincor_family(rel, grouping, max_size=max_mincor_size)
    merged = connected_components(family.members_as_masks())
    superfamily = (
        [grouping.blocks[pos] for pos in ids_of(component)] for component in merged.blocks
    )
    return AlphaStep(grouping, family, Partition.from_masks(flatten(superfamily)))


def alpha(rel: Relation, grouping: Partition, max_mincor_size: int | None = None) -> Partition:
    """One coarsening step: merge each connected group of mincors into one block.

    The result abstracts ``grouping``; blocks not touched by any mincor
    carry over unchanged.
    """
    return _alpha_step(rel, grouping, max_mincor_size).result


def focus(rel: Relation, max_mincor_size: int | None = None) -> tuple[Partition, AlphaTrace]:
    """The finest independent partition, with the trace that reached it.

    Iterates the coarsening step from the partition into singletons until it
    stabilizes.  Needing more steps than there are attributes would
    contradict the fixed-point bound and is reported as a bug.
    """
    n = len(rel.scheme)
    current = bottom(n)
    steps: list[AlphaStep] = []
    for _ in range(n):
        step = _alpha_step(rel, current, max_mincor_size)
        steps.append(step)
        if step.result == current:
            return current, AlphaTrace(tuple(steps))
        current = step.result
    raise InternalInvariantError(
        f"coarsening did not stabilize within {n} steps on a {n}-attribute scheme"
    )


def is_independent(rel: Relation, grouping: Partition, paranoid: bool = False) -> bool:
    """Does the relation equal the join of its projections onto the blocks?

    The default test compares cardinalities: the relation is always a subset
    of the join, and the join has exactly the product of the per-block
    projection sizes, so equality of counts is equality of sets.  With
    ``paranoid`` the join is also materialized and compared tuple by tuple.
    A paranoid check on a dependent partition whose join would exceed
    ``MATERIALIZE_LIMIT`` falls back to the size argument (sets of different
    cardinality are different); the equality candidate is always
    materialized, which is safe because its size equals ``len(rel)``.
    """
    if grouping.universe != rel.scheme.mask:
        raise ValueError("grouping does not partition the relation's scheme")
    product = 1
    for block in grouping.blocks:
        product *= projection_size(rel, block)
    verdict = product == len(rel)
    if paranoid:
        if not verdict and product > MATERIALIZE_LIMIT:
            return False
        set_verdict = _materialized_join_equals(rel, grouping)
        if set_verdict != verdict:
            raise InternalInvariantError(
                "cardinality and materialized independence tests disagree"
            )
        return set_verdict
    return verdict


def _materialized_join_equals(rel: Relation, grouping: Partition) -> bool:
    """Build the join of the blockwise projections tuple by tuple and compare."""
    width = len(rel.scheme)
    parts = []
    for block in grouping.blocks:
        ids = ids_of(block)
        parts.append((ids, sorted({tuple(t[i] for i in ids) for t in rel.tuples})))
    joined = set()
    for combo in itertools.product(*(values for _, values in parts)):
        row = [0] * width
        for (ids, _), sub in zip(parts, combo):
            for i, v in zip(ids, sub):
                row[i] = v
        joined.add(tuple(row))
    return joined == set(rel.tuples)


def _rejoin_blocks(rel: Relation, grouping: Partition) -> Relation:
    factors = [project(rel, ids_of(b)) for b in grouping.blocks]
    joined = join_relations(factors)
    concat_order = [i for b in grouping.blocks for i in ids_of(b)]
    back = sorted(range(len(concat_order)), key=concat_order.__getitem__)
    return reordered(joined, back)


@dataclass(frozen=True)
class Factorization:
    """A relation split along its focus into factor relations.

    When ``verified`` the factors join back to exactly the input relation
    and the product of their tuple counts equals the input's.  ``verified``
    can only come out False when a mincor size cap truncated the search and
    the resulting partition failed the independence re-check.
    """

    relation: Relation
    focus: Partition
    factors: tuple[Relation, ...]
    trace: AlphaTrace
    verified: bool
    cells_flat: int
    cells_factorized: int


def factorize(
    rel: Relation,
    paranoid: bool = False,
    max_mincor_size: int | None = None,
) -> Factorization:
    """Compute the focus and the factor relations, verifying reconstruction.

    Without a mincor size cap the focus is always independent; the
    reconstruction check is still executed and a mismatch raises
    :class:`InternalInvariantError`.  With a cap, a failed independence
    re-check yields ``verified=False`` instead of an exception (the factors
    then over-approximate the relation).
    """
    foc, trace = focus(rel, max_mincor_size=max_mincor_size)
    factors = tuple(project(rel, ids_of(b)) for b in foc.blocks)
    independent = is_independent(rel, foc, paranoid=paranoid)
    if independent:
        if _rejoin_blocks(rel, foc) != rel:
            raise InternalInvariantError("factor join does not reproduce the relation")
    elif not trace.truncated:
        raise InternalInvariantError("uncapped focus failed the independence test")
    cells_flat = len(rel) * len(rel.scheme)
    cells_factorized = sum(
        len(f) * len(ids_of(b)) for f, b in zip(factors, foc.blocks)
    )
    return Factorization(
        relation=rel,
        focus=foc,
        factors=factors,
        trace=trace,
        verified=independent,
        cells_flat=cells_flat,
        cells_factorized=cells_factorized,
    )
