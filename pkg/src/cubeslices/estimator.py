"""scikit-learn style facade over a classification run.

>>> est = CubeSliceClassifier(dim=3).fit()
>>> est.n_types_
4
>>> est.predict([[1, 1, 1, 0]]).tolist()
[3]
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .classify import classify
from .combtype import canonical_key
from .cube import AFFINE, CENTRAL, CubeSpec
from .slices import Hyperplane, build_slice


class CubeSliceClassifier(BaseEstimator, TransformerMixin):
    """Maps hyperplanes to combinatorial types of slices of the cube.

    Rows of ``X`` are ``(w_1, ..., w_d, a)`` for the plane <w, x> = a, or
    just ``w`` in central mode. Entries may be ints, Fractions or floats;
    floats are taken at their exact binary value.
    """

    def __init__(self, dim=3, mode=AFFINE, generic_only=False, max_k=None, workers=1):
        self.dim = dim
        self.mode = mode
        self.generic_only = generic_only
        self.max_k = max_k
        self.workers = workers

    def fit(self, X=None, y=None):
        if self.mode not in (AFFINE, CENTRAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        self.run_ = classify(CubeSpec(self.dim, self.mode), self.generic_only, self.max_k, self.workers)
        self.types_ = self.run_.entries()
        self.index_ = {e.key: i for i, e in enumerate(self.types_)}
        self.n_types_ = len(self.types_)
        self.f_vectors_ = [e.f_vector for e in self.types_]
        return self

    def _check(self):
        if not hasattr(self, "run_"):
            raise NotFittedError("call fit() first")

    def _slices(self, X):
        width = self.dim + (1 if self.mode == AFFINE else 0)
        out = []
        for row in X:
            row = list(row)
            if len(row) == self.dim and self.mode == AFFINE:
                row = row + [0]
            if len(row) != width:
                raise ValueError(f"expected rows of length {width}, got {len(row)}")
            w, a = row[: self.dim], (row[self.dim] if self.mode == AFFINE else 0)
            if not any(w):
                out.append(None)
                continue
            out.append(build_slice(self.dim, Hyperplane(tuple(w), a), self.mode))
        return out

    def predict(self, X):
        """Index into ``types_`` per row; -1 for planes missing the interior
        and for types outside the fitted registry."""
        self._check()
        labels = []
        for S in self._slices(X):
            labels.append(-1 if S is None else self.index_.get(canonical_key(S), -1))
        return np.array(labels, dtype=np.int64)

    def transform(self, X):
        """f-vectors padded with zeros to length dim - 1."""
        self._check()
        width = max(self.dim - 1, 1)
        out = np.zeros((len(X), width), dtype=np.int64)
        for i, S in enumerate(self._slices(X)):
            if S is not None:
                fv = S.f_vector
                out[i, : len(fv)] = fv
        return out
