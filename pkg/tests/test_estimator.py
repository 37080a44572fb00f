import pytest
from sklearn.base import clone

from deltaform.estimator import IlpSolver
from deltaform.solver import CanonIlpInstance, GenIlpInstance


def test_fit_predict():
    est = IlpSolver().fit(GenIlpInstance([[3, 5]], [13], [1, 1], sense="max"))
    assert est.status_ == "optimal"
    assert est.value_ == 3
    assert est.predict() == (1, 2)


def test_canonical_input():
    est = IlpSolver().fit(CanonIlpInstance([[1], [-1]], [3, 0], [1]))
    assert est.value_ == 3 and est.solution_ == (3,)


def test_feasibility_mode():
    est = IlpSolver(feasibility=True, feas_engine="naive").fit(GenIlpInstance([[3, 5]], [13], [1, 1]))
    assert est.status_ == "feasible"


def test_params_roundtrip():
    est = IlpSolver(eta=2, base="greedy")
    assert est.get_params()["eta"] == 2
    twin = clone(est)
    assert twin.get_params() == est.get_params()
    est.set_params(rho=5)
    assert est.rho == 5


def test_errors():
    with pytest.raises(TypeError):
        IlpSolver().fit([[1, 2]])
    with pytest.raises(AttributeError):
        IlpSolver().predict()
