from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from cubeslices.estimator import CubeSliceClassifier


@pytest.fixture(scope="module")
def est3():
    return CubeSliceClassifier(dim=3).fit()


def test_fit_and_attributes(est3):
    assert est3.n_types_ == 4
    assert est3.f_vectors_ == [(3, 3), (4, 4), (5, 5), (6, 6)]


def test_predict(est3):
    X = [[1, 1, 1, 0], [1, 1, 1, 2], [1, 0, 0, 5], [1, 1, 1, 3], [0, 0, 0, 1]]
    assert est3.predict(X).tolist() == [3, 0, -1, -1, -1]
    # rows of length d are read as central planes
    assert est3.predict([[1, 1, 1]]).tolist() == [3]
    assert est3.predict([[Fraction(1, 2), 0.25, 0, 0.125]]).tolist() == [1]


def test_transform(est3):
    out = est3.transform([[0, 0, 1, 0], [1, 0, 0, 5]])
    assert out.dtype == np.int64
    assert out.tolist() == [[4, 4], [0, 0]]
    assert est3.fit_transform([[1, 1, 1, 0]]).tolist() == [[6, 6]]


def test_params_and_clone():
    est = CubeSliceClassifier(dim=4, mode="central", max_k=2)
    c = clone(est)
    assert c.get_params() == est.get_params()
    assert c.set_params(dim=3).dim == 3


def test_not_fitted_and_bad_input(est3):
    with pytest.raises(NotFittedError):
        CubeSliceClassifier().predict([[1, 1, 1, 0]])
    with pytest.raises(ValueError):
        est3.predict([[1, 2]])
    with pytest.raises(ValueError):
        CubeSliceClassifier(mode="radial").fit()


def test_central_estimator():
    est = CubeSliceClassifier(dim=4, mode="central").fit()
    assert est.n_types_ == 6
    labels = est.predict([[1, 0, 0, 0], [1, 1, 1, 0], [1, 1, 1, 1]])
    assert est.f_vectors_[labels[0]] == (8, 12, 6)
    assert est.f_vectors_[labels[1]] == (12, 18, 8)
    assert est.f_vectors_[labels[2]] == (6, 12, 8)
