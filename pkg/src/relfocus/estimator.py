"""Scikit-learn compatible front end for relation decomposition.

The estimator treats a 2D table of categorical values as a relation over
its columns, learns the finest independent column grouping during ``fit``,
and re-encodes rows group-wise in ``transform``: one integer code per
learned block, indexing into that block's table of distinct value
combinations.  ``inverse_transform`` decodes back to the original labels.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .decompose import factorize
from .partition import ids_of
from .relation import Relation


def check_table(X) -> tuple[list[str] | None, list[tuple[str, ...]]]:
    """Coerce array-likes or DataFrames to string rows plus optional column names."""
    names = None
    if hasattr(X, "columns") and hasattr(X, "to_numpy"):
        names = [str(c) for c in X.columns]
        X = X.to_numpy()
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2D table, got array of shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError("table must have at least one row and one column")
    rows = [tuple(str(v) for v in row) for row in arr]
    return names, rows


class RelationDecomposer(TransformerMixin, BaseEstimator):
    """Split the columns of a categorical table into independent groups.

    Parameters
    ----------
    paranoid : bool
        Also materialize the factor join when verifying independence.
    max_mincor_size : int or None
        Cap the size of correlated column sets searched for; a capped run
        whose result fails the independence re-check sets ``verified_`` to
        False.

    Attributes
    ----------
    focus_ : list[list[str]]
        The learned column grouping, finest possible such that the table's
        distinct rows equal the cartesian join of the per-group projections.
    factors_ : list[Relation]
        One factor relation per group.
    mincors_ : list[list[str]]
        The minimal correlated column sets found in the first pass.
    trace_ : AlphaTrace
        The full coarsening trace.
    verified_ : bool
        Whether the grouping passed the independence check.
    """

    def __init__(self, *, paranoid: bool = False, max_mincor_size: int | None = None):
        self.paranoid = paranoid
        self.max_mincor_size = max_mincor_size

    def fit(self, X, y=None):
        names, rows = check_table(X)
        self.n_features_in_ = len(rows[0])
        if names is not None:
            self.feature_names_in_ = np.asarray(names, dtype=object)
            columns = names
        else:
            columns = [f"x{i}" for i in range(self.n_features_in_)]
        relation = Relation.from_rows(columns, rows)
        result = factorize(
            relation, paranoid=self.paranoid, max_mincor_size=self.max_mincor_size
        )
        scheme = relation.scheme
        self.relation_ = relation
        self.factors_ = list(result.factors)
        self.focus_ = [
            [scheme.attributes[i].name for i in ids_of(b)] for b in result.focus.blocks
        ]
        first = result.trace.steps[0].family
        self.mincors_ = [
            [scheme.attributes[i].name for i in ids] for ids in first.attribute_sets()
        ]
        self.trace_ = result.trace
        self.verified_ = result.verified
        self._blocks = [ids_of(b) for b in result.focus.blocks]
        self._codes = [
            {value: code for code, value in enumerate(f.tuples)} for f in self.factors_
        ]
        self._encoders = [
            [{label: idx for idx, label in enumerate(a.values)} for a in f.scheme.attributes]
            for f in self.factors_
        ]
        return self

    def transform(self, X) -> np.ndarray:
        """Encode rows as one integer per learned group.

        Raises ValueError for rows containing a value or combination never
        seen during fit.
        """
        check_is_fitted(self, "focus_")
        _, rows = check_table(X)
        if len(rows[0]) != self.n_features_in_:
            raise ValueError(
                f"table has {len(rows[0])} columns, expected {self.n_features_in_}"
            )
        out = np.empty((len(rows), len(self._blocks)), dtype=np.intp)
        for r, row in enumerate(rows):
            for k, (ids, enc, codes) in enumerate(
                zip(self._blocks, self._encoders, self._codes)
            ):
                try:
                    sub = tuple(enc[j][row[i]] for j, i in enumerate(ids))
                    out[r, k] = codes[sub]
                except KeyError:
                    group = ",".join(self.focus_[k])
                    values = tuple(row[i] for i in ids)
                    raise ValueError(
                        f"row {r}: combination {values!r} of columns [{group}] "
                        "was never observed during fit"
                    ) from None
        return out

    def inverse_transform(self, Xt) -> np.ndarray:
        """Decode group codes back to the original label columns."""
        check_is_fitted(self, "focus_")
        arr = np.asarray(Xt)
        if arr.ndim != 2 or arr.shape[1] != len(self._blocks):
            raise ValueError(f"expected shape (n, {len(self._blocks)}), got {arr.shape}")
        out = np.empty((arr.shape[0], self.n_features_in_), dtype=object)
        for r in range(arr.shape[0]):
            for k, (ids, factor) in enumerate(zip(self._blocks, self.factors_)):
                code = int(arr[r, k])
                if not 0 <= code < len(factor):
                    raise ValueError(f"code {code} out of range for group {self.focus_[k]}")
                for j, i in enumerate(ids):
                    out[r, i] = factor.scheme.attributes[j].values[factor.tuples[code][j]]
        return out

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "focus_")
        return np.asarray(["".join(group) for group in self.focus_], dtype=object)
