"""Factor finite relations into independent components.

A relation here is a deduplicated set of tuples over named categorical
attributes.  The package computes the finest partition of the attributes
whose blockwise projections join back to exactly the original relation (the
focus), by iterating an inflationary coarsening step built from minimal
correlated attribute sets.  A brute-force oracle, instance generators, an
sklearn-style estimator and a CLI round out the toolbox.
"""

from .correlation import MincorFamily, is_correlated, mincor_family, mincors
from .datasets import (
    load_entangled_pairs,
    load_nonmonotone_witness,
    load_separable_blocks,
)
from .decompose import (
    AlphaStep,
    AlphaTrace,
    Factorization,
    alpha,
    factorize,
    focus,
    is_independent,
)
from .errors import GuardError, InputError, InternalInvariantError, RelfocusError
from .estimator import RelationDecomposer
from .oracle import (
    PlantedInstance,
    correlation_witness,
    enumerate_partitions,
    gen_planted,
    gen_random_relation,
    oracle_focus,
    oracle_is_correlated,
    oracle_mincors,
)
from .partition import (
    Partition,
    bottom,
    connected_components,
    flatten,
    ids_of,
    join_partitions,
    mask_of,
    meet,
    refines,
    top,
)
from .relation import (
    Attribute,
    QuotientRelation,
    Relation,
    Scheme,
    complete_relation,
    join_relations,
    project,
    projection_size,
    quotient,
    reordered,
)

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "AlphaStep",
    "AlphaTrace",
    "Factorization",
    "GuardError",
    "InputError",
    "InternalInvariantError",
    "MincorFamily",
    "Partition",
    "PlantedInstance",
    "QuotientRelation",
    "Relation",
    "RelationDecomposer",
    "RelfocusError",
    "Scheme",
    "alpha",
    "bottom",
    "complete_relation",
    "connected_components",
    "correlation_witness",
    "enumerate_partitions",
    "factorize",
    "flatten",
    "focus",
    "gen_planted",
    "gen_random_relation",
    "ids_of",
    "is_correlated",
    "is_independent",
    "join_partitions",
    "join_relations",
    "load_entangled_pairs",
    "load_nonmonotone_witness",
    "load_separable_blocks",
    "mask_of",
    "meet",
    "mincor_family",
    "mincors",
    "oracle_focus",
    "oracle_is_correlated",
    "oracle_mincors",
    "project",
    "projection_size",
    "quotient",
    "refines",
    "reordered",
    "top",
]
