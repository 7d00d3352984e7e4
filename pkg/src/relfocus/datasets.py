"""Small example relations used throughout the docs and the test suite."""

from __future__ import annotations

import itertools

from .relation import Relation

_ENTANGLED_ROWS = [
    ("a1", "b1", "c1", "d1"),
    ("a1", "b1", "c2", "d2"),
    ("a1", "b2", "c1", "d2"),
    ("a2", "b2", "c1", "d1"),
    ("a2", "b2", "c2", "d2"),
]

_SEPARABLE_ROWS = [
    ("a1", "b1", "c1", "d1"),
    ("a1", "b1", "c1", "d2"),
    ("a1", "b1", "c2", "d2"),
    ("a1", "b2", "c1", "d1"),
    ("a1", "b2", "c1", "d2"),
    ("a1", "b2", "c2", "d2"),
    ("a2", "b2", "c1", "d1"),
    ("a2", "b2", "c1", "d2"),
    ("a2", "b2", "c2", "d2"),
]


def load_entangled_pairs() -> Relation:
    """Five tuples over four binary attributes with no nontrivial split.

    The pairs {A,B} and {C,D} are each minimally correlated (a2 never meets
    b1, c2 never meets d1), yet grouping them is not enough: five is prime,
    so no partition with two or more blocks can be independent and the
    finest independent partition is the one-block partition.  The
    interesting consequence: the coarsening iteration needs a second round
    to discover that the two pair-blocks are correlated with each other.
    """
    return Relation.from_rows(("A", "B", "C", "D"), _ENTANGLED_ROWS)


def load_separable_blocks() -> Relation:
    """Nine tuples over four binary attributes that split into two factors.

    Same minimally correlated pairs as :func:`load_entangled_pairs`, but
    here the relation is exactly the join of its {A,B} and {C,D}
    projections (3 x 3 tuples), so {{A,B},{C,D}} is independent and is the
    finest independent partition.  Flat storage takes 36 cells; the two
    factors take 12.
    """
    return Relation.from_rows(("A", "B", "C", "D"), _SEPARABLE_ROWS)


def load_nonmonotone_witness() -> Relation:
    """21 tuples over five binary attributes witnessing non-monotonicity.

    Built from the complete relation over A..E by removing every tuple
    containing a1, b1, c1 together and every tuple containing d2, e2
    together.  The minimal correlated sets are {A,B,C} and {D,E}.  Starting
    from singletons, one coarsening step yields {{A,B,C},{D,E}}, which is
    independent (7 x 3 = 21 tuples).  Starting instead from the coarser
    grouping {{A},{B,D},{C,E}}, the step yields {{A},{B,C,D,E}} - the
    coarser input produced an incomparable output, so the coarsening step
    is not monotone.
    """
    rows = []
    for bits in itertools.product((1, 2), repeat=5):
        a, b, c, d, e = bits
        if a == 1 and b == 1 and c == 1:
            continue
        if d == 2 and e == 2:
            continue
        rows.append((f"a{a}", f"b{b}", f"c{c}", f"d{d}", f"e{e}"))
    return Relation.from_rows(("A", "B", "C", "D", "E"), rows)
