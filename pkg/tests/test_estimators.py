from __future__ import annotations

import json

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from resint import data_path
from resint.estimators import BKMResolution, DiagonalCertifier, ReesCertifier, TorBettiOracle, check_int_grid


def doc(name):
    return json.loads(data_path(name).read_text())


def test_grid_validation():
    with pytest.raises(ValueError):
        check_int_grid([[1, 2, 3]], 2)
    with pytest.raises(ValueError):
        check_int_grid([[0.5, 1]], 2)
    with pytest.raises(ValueError):
        check_int_grid([[-1, 1]], 2, minimum=0)
    assert check_int_grid([[1.0, 2.0]], 2).dtype == np.int64


def test_bkm_resolution():
    est = BKMResolution(n=3, m=4, p=5).fit()
    assert (est.reg_x_, est.reg_y_) == (0, 2)
    assert est.predict([[0, 0], [1, 1]]).tolist() == [1, 11]
    with pytest.raises(NotFittedError):
        BKMResolution().predict([[0, 0]])
    with pytest.raises(ValueError):
        BKMResolution(3, 4).fit().predict([[0, 0]])


def test_diagonal_certifier():
    est = DiagonalCertifier(n=3, m=4, p=5).fit()
    assert est.transform([[1, 2], [1, 1]]).tolist() == [[1, 3], [2, 3]]
    assert est.predict([[1, 2], [1, 1]]).tolist() == [True, False]
    withheld = DiagonalCertifier(n=3, m=4, p=4).fit()
    assert withheld.transform([[1, 1]])[0, 1] == -1


def test_oracle_estimator():
    est = TorBettiOracle(i_max=2, a_max=1, b_max=2).fit(doc("generic2x2_ideal.json"))
    assert est.predict([[1, 1, 1], [2, 1, 2]]).tolist() == [2, 2]
    assert est.score(None, (2, 2)) == 1.0
    assert est.score(None, (2, 3)) < 1.0
    params = clone(est).get_params()
    assert params == {"a_max": 1, "b_max": 2, "field": None, "i_max": 2}
    with pytest.raises(TypeError):
        TorBettiOracle().fit(42)


def test_oracle_field_override():
    est = TorBettiOracle(field="101", i_max=1, a_max=1, b_max=1).fit(doc("generic2x2_ideal.json"))
    assert est.ideal_.ring.field.characteristic == 101


def test_rees_certifier():
    est = ReesCertifier().fit(doc("banded_presentation.json"))
    assert est.predict([[5, 1], [1, 2], [4, 1]]).tolist() == [[True, False], [False, True], [False, False]]
    assert "I is perfect of height two" in est.assumptions_
