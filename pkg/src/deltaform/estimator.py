"""scikit-learn style wrapper around :func:`deltaform.solver.solve`."""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator

from .solver import CanonIlpInstance, DpConfig, GenIlpInstance, solve, solve_canonical


class IlpSolver(BaseEstimator):
    """Solve one integer program per ``fit`` call.

    There is nothing to learn: ``fit`` takes an instance (no training data)
    and stores the result in ``result_``, ``solution_``, ``value_`` and
    ``status_``.  ``predict`` returns the solution of the fitted instance.

    >>> est = IlpSolver().fit(GenIlpInstance([[3, 5]], [13], [1, 1], sense="max"))
    >>> est.value_, est.solution_
    (3, (1, 2))
    """

    def __init__(
        self,
        eta=None,
        rho=None,
        prox_const=3,
        base="exact",
        backend="naive",
        engine="sparse",
        feas_engine="dft",
        feasibility=False,
    ):
        self.eta = eta
        self.rho = rho
        self.prox_const = prox_const
        self.base = base
        self.backend = backend
        self.engine = engine
        self.feas_engine = feas_engine
        self.feasibility = feasibility

    def _config(self):
        return DpConfig(
            eta=self.eta,
            rho=self.rho,
            prox_const=Fraction(self.prox_const),
            base=self.base,
            backend=self.backend,
            engine=self.engine,
            feas_engine=self.feas_engine,
        )

    def fit(self, X, y=None):
        cfg = self._config()
        if isinstance(X, CanonIlpInstance):
            if self.feasibility:
                raise ValueError("feasibility mode takes a standard-form instance")
            res = solve_canonical(X, cfg)
        elif isinstance(X, GenIlpInstance):
            res = solve(X, cfg, feasibility=self.feasibility)
        else:
            raise TypeError(f"expected an ILP instance, got {type(X).__name__}")
        self.result_ = res
        self.status_ = res.status
        self.value_ = res.value
        self.solution_ = res.x
        return self

    def predict(self, X=None):
        if not hasattr(self, "result_"):
            raise AttributeError("IlpSolver is not fitted yet")
        return self.solution_
