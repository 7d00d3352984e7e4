from __future__ import annotations

import pytest

from relfocus import (
    load_entangled_pairs,
    load_nonmonotone_witness,
    load_separable_blocks,
)


@pytest.fixture(scope="session")
def entangled():
    """Five tuples, four binary attributes, no nontrivial independent split."""
    return load_entangled_pairs()


@pytest.fixture(scope="session")
def separable():
    """Nine tuples that factor exactly into their {A,B} and {C,D} projections."""
    return load_separable_blocks()


@pytest.fixture(scope="session")
def witness():
    """21 tuples over five binary attributes; the non-monotonicity witness."""
    return load_nonmonotone_witness()


def names_of(partition, scheme):
    """Partition as a tuple of attribute-name tuples, for readable asserts."""
    from relfocus.io import partition_to_names

    return tuple(tuple(block) for block in partition_to_names(partition, scheme))
