"""Problem and result containers."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DimensionError
from ..groups import AbelianGroupSpec, g_reduce, g_add, g_scale, g_zero

__all__ = [
    "GenIlpInstance",
    "CanonIlpInstance",
    "ModIlpInstance",
    "SolveResult",
    "OPTIMAL",
    "FEASIBLE",
    "INFEASIBLE",
    "UNBOUNDED",
]

OPTIMAL = "optimal"
FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def _int_matrix(M, name):
    M = tuple(tuple(int(x) for x in row) for row in M)
    if not M or not M[0]:
        raise DimensionError(f"{name} must be non-empty")
    if any(len(r) != len(M[0]) for r in M):
        raise DimensionError(f"{name} is ragged")
    return M


def _int_vec(v):
    return tuple(int(x) for x in v)


@dataclass(frozen=True)
class GenIlpInstance:
    """``c^T x -> min/max`` s.t. ``Ax = b``, ``sum x_i g_i = g_0``, ``x >= 0`` integral."""

    A: tuple
    b: tuple
    c: tuple
    group: AbelianGroupSpec = AbelianGroupSpec(())
    g_cols: tuple = None
    g_target: tuple = None
    sense: str = "min"

    def __post_init__(self):
        A = _int_matrix(self.A, "A")
        k, n = len(A), len(A[0])
        b, c = _int_vec(self.b), _int_vec(self.c)
        if len(b) != k:
            raise DimensionError(f"b has length {len(b)}, expected {k}")
        if len(c) != n:
            raise DimensionError(f"c has length {len(c)}, expected {n}")
        G = self.group if isinstance(self.group, AbelianGroupSpec) else AbelianGroupSpec(tuple(self.group))
        cols = self.g_cols if self.g_cols is not None else [g_zero(G)] * n
        cols = tuple(g_reduce(G, g) for g in cols)
        if len(cols) != n:
            raise DimensionError(f"g_cols has {len(cols)} entries, expected {n}")
        target = g_reduce(G, self.g_target) if self.g_target is not None else g_zero(G)
        if self.sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {self.sense!r}")
        for name, val in (("A", A), ("b", b), ("c", c), ("group", G), ("g_cols", cols), ("g_target", target)):
            object.__setattr__(self, name, val)

    @property
    def k(self):
        return len(self.A)

    @property
    def n(self):
        return len(self.A[0])

    def residual(self, x):
        return tuple(bi - sum(a * xi for a, xi in zip(row, x)) for row, bi in zip(self.A, self.b))

    def group_sum(self, x):
        s = g_zero(self.group)
        for xi, g in zip(x, self.g_cols):
            s = g_add(self.group, s, g_scale(self.group, xi, g))
        return s

    def is_feasible(self, x):
        return (
            len(x) == self.n
            and all(int(xi) == xi and xi >= 0 for xi in x)
            and not any(self.residual(x))
            and self.group_sum(x) == self.g_target
        )

    def objective(self, x):
        return sum(ci * xi for ci, xi in zip(self.c, x))

    def replace(self, **kw):
        fields = dict(A=self.A, b=self.b, c=self.c, group=self.group, g_cols=self.g_cols, g_target=self.g_target, sense=self.sense)
        fields.update(kw)
        return GenIlpInstance(**fields)


@dataclass(frozen=True)
class CanonIlpInstance:
    """``c^T x -> max/min`` s.t. ``Ax <= b``, ``x`` in ``Z^n``."""

    A: tuple
    b: tuple
    c: tuple
    sense: str = "max"

    def __post_init__(self):
        A = _int_matrix(self.A, "A")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", _int_vec(self.b))
        object.__setattr__(self, "c", _int_vec(self.c))
        if len(self.b) != len(A) or len(self.c) != len(A[0]):
            raise DimensionError("inconsistent canonical instance dimensions")

    @property
    def n(self):
        return len(self.A[0])

    @property
    def k(self):
        return len(self.A) - self.n

    def is_feasible(self, x):
        return all(sum(a * xi for a, xi in zip(row, x)) <= bi for row, bi in zip(self.A, self.b))

    def objective(self, x):
        return sum(ci * xi for ci, xi in zip(self.c, x))


@dataclass(frozen=True)
class ModIlpInstance:
    """Standard form plus congruences ``G x = g (mod S)`` with ``S`` diagonal."""

    A: tuple
    b: tuple
    c: tuple
    G: tuple
    g: tuple
    S: tuple
    sense: str = "max"

    def __post_init__(self):
        object.__setattr__(self, "A", _int_matrix(self.A, "A"))
        object.__setattr__(self, "G", tuple(tuple(int(x) for x in r) for r in self.G))
        for name in ("b", "c", "g", "S"):
            object.__setattr__(self, name, _int_vec(getattr(self, name)))

    @property
    def n(self):
        return len(self.A[0])

    def is_feasible(self, x):
        if any(xi < 0 for xi in x):
            return False
        if any(sum(a * xi for a, xi in zip(row, x)) != bi for row, bi in zip(self.A, self.b)):
            return False
        return all((sum(a * xi for a, xi in zip(row, x)) - gi) % si == 0 for row, gi, si in zip(self.G, self.g, self.S))

    def objective(self, x):
        return sum(ci * xi for ci, xi in zip(self.c, x))


@dataclass
class SolveResult:
    status: str
    value: object = None
    x: tuple = None
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        val = self.value
        if isinstance(val, Fraction):
            val = str(val) if val.denominator != 1 else int(val)
        return {
            "status": self.status,
            "value": val,
            "x": list(self.x) if self.x is not None else None,
            "diagnostics": self.diagnostics,
        }
