"""scikit-learn veneer over :func:`lenssurgery.harness.classify`.

Rows of ``X`` are ``(p, k)`` pairs.  ``predict`` returns the first matched
family tag (or ``"none"``); ``transform`` returns a numeric summary of the
classification record.
"""

from __future__ import annotations

from math import gcd

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .families import BERGE_TYPES, MAIN_THEOREM_TYPES, POINCARE_TYPES
from .harness import ClassificationRecord, classify

NO_MATCH = "none"
FAMILY_SETS = {
    "all": BERGE_TYPES + POINCARE_TYPES,
    "berge": BERGE_TYPES,
    "poincare": POINCARE_TYPES,
    "main": tuple(t for t in BERGE_TYPES + POINCARE_TYPES if t in MAIN_THEOREM_TYPES),
}
FEATURES = (
    "genus",
    "passes_ky",
    "passes_alternating",
    "passes_pos",
    "a",
    "eps1",
    "eps2",
    "n",
    "tau",
    "stable",
    "n_matches",
)


def check_pairs(X) -> np.ndarray:
    """Validate an ``(n, 2)`` integer array of coprime ``(p, k)`` rows with ``p >= 2``."""
    arr = check_array(X, dtype=None, ensure_2d=True)
    if arr.shape[1] != 2:
        raise ValueError(f"expected 2 columns (p, k), got {arr.shape[1]}")
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.issubdtype(arr.dtype, np.number) or np.any(arr != np.round(arr)):
            raise ValueError("(p, k) entries must be integers")
    arr = arr.astype(np.int64)
    for p, k in arr:
        if p < 2:
            raise ValueError(f"p = {p} is below 2")
        if gcd(int(p), int(k)) != 1:
            raise ValueError(f"({p}, {k}) is not coprime")
    return arr


def check_filters(require) -> tuple[str, ...]:
    allowed = {"ky", "alternating", "pos", "stable"}
    require = tuple(require or ())
    bad = [r for r in require if r not in allowed]
    if bad:
        raise ValueError(f"unknown requirement(s) {bad}; allowed {sorted(allowed)}")
    return require


def record_features(rec: ClassificationRecord) -> list[int]:
    rel = rec.relation or {"a": 0, "eps1": 0, "eps2": 0, "n": 0}
    dec = rec.decomposition or {"tau": 0, "stable": False}
    return [
        rec.genus,
        int(rec.passes_ky),
        int(rec.passes_alternating),
        int(rec.passes_pos),
        rel["a"],
        rel["eps1"],
        rel["eps2"],
        rel["n"],
        dec["tau"],
        int(dec["stable"]),
        len(rec.matches),
    ]


class LensSurgeryClassifier(BaseEstimator, ClassifierMixin, TransformerMixin):
    """Label ``(p, k)`` rows by the first matching surgery family.

    families : {"all", "berge", "poincare", "main"}
        Which family tags may be returned.
    require : tuple of {"ky", "alternating", "pos", "stable"}
        Rows failing any listed check are labelled ``"none"``.
    """

    def __init__(self, families="all", require=()):
        self.families = families
        self.require = require

    def fit(self, X, y=None):
        check_pairs(X)
        if self.families not in FAMILY_SETS:
            raise ValueError(f"families must be one of {sorted(FAMILY_SETS)}")
        check_filters(self.require)
        allowed = FAMILY_SETS[self.families] + (NO_MATCH,)
        if y is not None:
            y = np.asarray(y)
            if len(y) != len(X):
                raise ValueError("X and y have different lengths")
            self.classes_ = np.unique(y.astype(str))
        else:
            self.classes_ = np.array(sorted(allowed))
        self.n_features_in_ = 2
        self.feature_names_out_ = np.array(FEATURES)
        return self

    def _records(self, X) -> list[ClassificationRecord]:
        check_is_fitted(self, "classes_")
        return [classify(int(p), int(k)) for p, k in check_pairs(X)]

    def _label(self, rec: ClassificationRecord) -> str:
        checks = {
            "ky": rec.passes_ky,
            "alternating": rec.passes_alternating,
            "pos": rec.passes_pos,
            "stable": rec.stable,
        }
        if not all(checks[r] for r in check_filters(self.require)):
            return NO_MATCH
        allowed = set(FAMILY_SETS[self.families])
        for m in rec.matches:
            if m["family"] in allowed:
                return m["family"]
        return NO_MATCH

    def predict(self, X) -> np.ndarray:
        return np.array([self._label(r) for r in self._records(X)], dtype=object)

    def transform(self, X) -> np.ndarray:
        return np.array([record_features(r) for r in self._records(X)], dtype=np.int64)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "classes_")
        return np.array(FEATURES, dtype=object)


__all__ = ["FEATURES", "LensSurgeryClassifier", "NO_MATCH", "check_filters", "check_pairs", "record_features"]
