"""End-to-end solving: LP, proximity shift, base choice, DP, certification."""

from __future__ import annotations

import heapq
import os
import time
import warnings
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import combinations, product
from math import ceil, floor, isqrt, prod

import numpy as np

from ..disc import herdisc_exact
from ..errors import CapExceededError, ConfigError, RankError
from ..exactla import delta, delta_gcd, det, rank, rat_inverse
from ..groups import g_add, g_enumerate, g_index, g_scale, g_sub, g_zero
from .dp import dp_solve
from .instances import FEASIBLE, INFEASIBLE, OPTIMAL, UNBOUNDED, GenIlpInstance, SolveResult
from .lp import LP_INFEASIBLE, LP_UNBOUNDED, lp_relax
from .reductions import Infeasible, normalize_gcd

__all__ = [
    "DpConfig",
    "E_UPPER",
    "proximity_radius",
    "proximity_shift",
    "rho_for",
    "select_base",
    "gomory_group_min",
    "brute_force_ilp",
    "solve",
    "solve_canonical",
]

# rational just above e, used as the exchange threshold
E_UPPER = Fraction(2718281828459046, 10**15)


@dataclass(frozen=True)
class DpConfig:
    eta: int = None
    rho: int = None
    prox_const: Fraction = Fraction(3)
    base: str = "exact"
    backend: str = "naive"
    engine: str = "sparse"
    feas_engine: str = "dft"
    check_rho: bool = True

    def __post_init__(self):
        if self.base not in ("exact", "greedy"):
            raise ConfigError(f"base must be 'exact' or 'greedy', got {self.base!r}")
        if self.backend not in ("naive", "blocked"):
            raise ConfigError(f"backend must be 'naive' or 'blocked', got {self.backend!r}")
        if self.engine not in ("sparse", "group"):
            raise ConfigError(f"engine must be 'sparse' or 'group', got {self.engine!r}")
        if self.feas_engine not in ("dft", "naive"):
            raise ConfigError(f"feasibility engine must be 'dft' or 'naive', got {self.feas_engine!r}")
        for name in ("eta", "rho"):
            v = getattr(self, name)
            if v is not None and (not isinstance(v, int) or v < 1):
                raise ConfigError(f"{name} must be a positive integer")
        object.__setattr__(self, "prox_const", Fraction(self.prox_const))
        if self.prox_const <= 0:
            raise ConfigError("prox_const must be positive")

    def to_dict(self):
        d = asdict(self)
        d["prox_const"] = str(self.prox_const)
        return d


def _ceil_scaled_root(coef, R, k):
    """Smallest integer ``X >= 0`` with ``X >= coef * R^(1/k)``."""
    # X^k >= coef^k R
    target = Fraction(coef) ** k * R
    lo, hi = 0, 1
    while Fraction(hi) ** k < target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


def proximity_radius(k, r, Delta, prox_const=Fraction(3)):
    """``ceil(prox_const * k^2 * (r Delta)^(1 + 1/k))``, computed exactly."""
    return _ceil_scaled_root(Fraction(prox_const) * k * k, (r * Delta) ** (k + 1), k)


def proximity_shift(inst, v, chi):
    """Fix ``y_i = max(0, ceil(v_i) - chi)`` and move it to the right-hand side.

    Returns the shifted instance, ``y`` and the bound
    ``chi + sum_i (v_i - y_i)`` on the 1-norm of a near optimum.
    """
    y = [max(0, ceil(vi) - chi) for vi in v]
    b = tuple(bi - sum(a * yi for a, yi in zip(row, y)) for row, bi in zip(inst.A, inst.b))
    gt = inst.g_target
    for yi, g in zip(y, inst.g_cols):
        gt = g_sub(inst.group, gt, g_scale(inst.group, yi, g))
    U = chi + ceil(sum(Fraction(vi) - yi for vi, yi in zip(v, y)))
    return inst.replace(b=b, g_target=gt), tuple(y), U


def rho_for(U):
    """Least ``rho >= 1`` with ``(6/5)^rho >= U``."""
    rho, p = 1, Fraction(6, 5)
    while p < U:
        rho += 1
        p *= Fraction(6, 5)
    return rho


def _basis_det(A, cols):
    return det([[A[i][j] for j in cols] for i in range(len(A))])


def select_base(A, mode="exact"):
    """Column indices of a base ``B``.

    ``exact`` maximises ``|det B|`` by enumeration (ties: lexicographically
    first).  ``greedy`` starts from the first nonsingular base and, while
    some square submatrix of ``B^{-1} A`` has ``|det| > e``, exchanges the
    corresponding base columns; the result satisfies
    ``Delta_i(B^{-1} A) <= e^{i+1}``, which is audited against ``3^{i+1}``.
    """
    k, n = len(A), len(A[0])
    if mode == "exact":
        best, best_cols = 0, None
        for cols in combinations(range(n), k):
            d = abs(_basis_det(A, cols))
            if d > best:
                best, best_cols = d, cols
        if best_cols is None:
            raise RankError("no nonsingular base")
        return best_cols
    if mode != "greedy":
        raise ConfigError(f"unknown base mode {mode!r}")
    base = next((cols for cols in combinations(range(n), k) if _basis_det(A, cols) != 0), None)
    if base is None:
        raise RankError("no nonsingular base")
    base = list(base)
    changed = True
    while changed:
        changed = False
        M = _reduced(A, base)
        for i in range(1, k + 1):
            for J in combinations(range(k), i):
                best, best_I = Fraction(0), None
                for I in combinations(range(n), i):
                    d = abs(det([[M[r][j] for j in I] for r in J]))
                    if d > best:
                        best, best_I = d, I
                if best > E_UPPER:
                    # rows J of M belong to base columns base[J]
                    keep = [base[t] for t in range(k) if t not in J]
                    base = sorted(keep + list(best_I))
                    changed = True
                    break
            if changed:
                break
    M = _reduced(A, base)
    for i in range(1, k + 1):
        top = max(abs(det([[M[r][j] for j in I] for r in J])) for J in combinations(range(k), i) for I in combinations(range(n), i))
        if top > 3 ** (i + 1):
            raise AssertionError(f"greedy base audit failed at order {i}")
    return tuple(base)


def _reduced(A, base):
    k = len(A)
    Binv = rat_inverse([[Fraction(A[i][j]) for j in base] for i in range(k)])
    return [[sum(Binv[r][t] * A[t][j] for t in range(k)) for j in range(len(A[0]))] for r in range(k)]


def gomory_group_min(G, weights, elems, target):
    """``min w^T x`` s.t. ``sum x_i g_i = target``, ``x >= 0`` integral.

    Shortest path on the Cayley graph of ``G``.  Returns ``(value, x)`` or
    ``None`` when ``target`` is not in the generated subgroup.
    """
    if any(w < 0 for w in weights):
        raise ValueError("group minimisation needs nonnegative weights")
    start = g_zero(G)
    dist = {start: 0}
    pred = {}
    heap = [(0, g_index(G, start), start)]
    done = set()
    while heap:
        dv, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if u == tuple(target):
            break
        for i, (w, g) in enumerate(zip(weights, elems)):
            v = g_add(G, u, g)
            nd = dv + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                pred[v] = (u, i)
                heapq.heappush(heap, (nd, g_index(G, v), v))
    target = tuple(target)
    if target not in done:
        return None
    x = [0] * len(weights)
    u = target
    while u != start:
        u, i = pred[u]
        x[i] += 1
    return dist[target], tuple(x)


def _brute_cap():
    raw = os.environ.get("DELTAFORM_CAPS", "")
    for part in raw.split(","):
        key, _, val = part.strip().partition("=")
        if key == "brute_points":
            return int(val)
    return 5_000_000


def brute_force_ilp(inst, box):
    """Exhaustive search over ``0 <= x_j <= box_j``.

    ``diagnostics["boundary"]`` reports whether an optimum touches the box
    upper face, in which case the box may have been too small.
    """
    n = inst.n
    ub = [int(box)] * n if isinstance(box, int) else [int(u) for u in box]
    if len(ub) != n:
        raise ValueError("box has the wrong length")
    total = prod(u + 1 for u in ub)
    if total > _brute_cap():
        raise CapExceededError(f"brute-force box has {total} points")
    A = np.array(inst.A, dtype=np.int64)
    b = np.array(inst.b, dtype=np.int64)
    c = np.array(inst.c, dtype=np.int64)
    G = inst.group
    gc = np.array(inst.g_cols, dtype=np.int64).reshape(n, G.rank)
    mods = np.array(G.orders, dtype=np.int64)
    gt = np.array(inst.g_target, dtype=np.int64)
    best_val, best_x = None, None
    sign = 1 if inst.sense == "min" else -1
    axes = [np.arange(u + 1, dtype=np.int64) for u in ub]
    # chunk over the first coordinate to bound memory
    rest = np.stack(np.meshgrid(*axes[1:], indexing="ij"), axis=-1).reshape(-1, n - 1) if n > 1 else np.zeros((1, 0), dtype=np.int64)
    count = 0
    for x0 in axes[0]:
        X = np.concatenate([np.full((len(rest), 1), x0, dtype=np.int64), rest], axis=1)
        ok = np.all(X @ A.T == b, axis=1)
        if G.rank:
            ok &= np.all((X @ gc - gt) % mods == 0, axis=1)
        if not ok.any():
            continue
        Xf = X[ok]
        count += len(Xf)
        vals = sign * (Xf @ c)
        i = int(np.argmin(vals))
        if best_val is None or vals[i] < best_val:
            best_val, best_x = int(vals[i]), tuple(int(v) for v in Xf[i])
    if best_x is None:
        return SolveResult(INFEASIBLE, diagnostics={"boundary": False, "points": 0})
    boundary = any(xi == u for xi, u in zip(best_x, ub))
    return SolveResult(OPTIMAL, sign * best_val, best_x, {"boundary": boundary, "points": count})


def _lp_max_norm(A, b):
    """``floor(max 1^T x)`` over ``Ax = b, x >= 0``, or ``None`` if unbounded."""
    res = lp_relax(A, b, [-1] * len(A[0]))
    if res.status == LP_INFEASIBLE:
        return 0
    if res.status == LP_UNBOUNDED:
        return None
    return floor(-res.value)


def solve(inst, config=None, feasibility=False):
    """Solve a group standard-form instance exactly.

    The answer is optimal (``status`` ``optimal``), or the instance is
    reported ``infeasible`` or ``unbounded``.  In feasibility mode the
    objective is ignored and status ``feasible`` carries a witness.
    """
    config = config or DpConfig()
    t0 = time.perf_counter_ns()
    timings = {}  # nanoseconds
    diag = {"config": config.to_dict()}
    A = [list(r) for r in inst.A]
    if rank(A) != inst.k:
        raise RankError("constraint matrix must have full row rank")
    diag["Delta"] = delta(A)
    diag["Delta_gcd"] = delta_gcd(A)
    sign = -1 if inst.sense == "max" else 1
    work = inst.replace(c=[0] * inst.n if feasibility else [sign * ci for ci in inst.c], sense="min")
    norm = normalize_gcd(work)
    if norm is Infeasible:
        diag["reason"] = "gcd"
        return SolveResult(INFEASIBLE, diagnostics=diag)
    work = norm
    t = time.perf_counter_ns()
    lp = lp_relax(work.A, work.b, work.c)
    timings["lp"] = time.perf_counter_ns() - t
    diag["timings_ns"] = timings
    if lp.status == LP_INFEASIBLE:
        diag["reason"] = "lp"
        return SolveResult(INFEASIBLE, diagnostics=diag)
    if lp.status == LP_UNBOUNDED:
        feas = solve(inst, config, feasibility=True)
        diag["reason"] = "lp-unbounded"
        diag["feasibility"] = feas.diagnostics
        if feas.status == FEASIBLE:
            diag["ray"] = [str(v) for v in lp.ray]
            return SolveResult(UNBOUNDED, x=feas.x, diagnostics=diag)
        return SolveResult(INFEASIBLE, diagnostics=diag)
    diag["lp_value"] = str(sign * lp.value) if not feasibility else None
    k, r = work.k, work.group.size
    Dn = delta([list(row) for row in work.A])
    chi = proximity_radius(k, r, Dn, config.prox_const)
    shifted, y, U_prox = proximity_shift(work, lp.x, chi)
    U_lp = _lp_max_norm(shifted.A, shifted.b)
    U = U_prox if U_lp is None else min(U_prox, U_lp)
    heuristic = U_lp is None or U_prox < U_lp
    diag.update(chi=chi, shift=list(y), U_prox=U_prox, U_lp=U_lp, U=U)
    t = time.perf_counter_ns()
    base = select_base(shifted.A, config.base)
    Bdet = abs(_basis_det(shifted.A, base))
    if config.eta is not None:
        eta = config.eta
    else:
        M = _reduced(shifted.A, list(base))
        eta = max(1, ceil(herdisc_exact(M)))
    timings["base"] = time.perf_counter_ns() - t
    rho = config.rho if config.rho is not None else rho_for(max(U, 1))
    diag.update(base=list(base), base_det=Bdet, eta=eta, rho=rho, tau=(16 * eta) ** k * r * Bdet)
    feas_flag = feasibility
    eng = config.engine
    if feasibility:
        eng = "group" if config.feas_engine == "dft" else "sparse"
    t = time.perf_counter_ns()
    out = dp_solve(shifted, base, eta, rho, feasibility=feas_flag, engine=eng, backend=config.backend)
    timings["dp"] = time.perf_counter_ns() - t
    diag["level_sizes"] = out.level_sizes
    diag["slack_cells"] = out.slack_cells
    if config.check_rho and config.rho is None and heuristic and not feasibility:
        t = time.perf_counter_ns()
        alt = dp_solve(shifted, base, eta, rho + 2, feasibility=False, engine=eng, backend=config.backend)
        timings["dp_check"] = time.perf_counter_ns() - t
        stable = alt.feasible == out.feasible and alt.value == out.value
        diag["rho_stable"] = stable
        if not stable:
            warnings.warn("DP value changed between rho and rho + 2; using the larger rho", RuntimeWarning)
            out = alt
            diag["rho"] = rho + 2
    timings["total"] = time.perf_counter_ns() - t0
    if not out.feasible:
        diag["reason"] = "dp"
        return SolveResult(INFEASIBLE, diagnostics=diag)
    x = tuple(a + b for a, b in zip(out.x, y))
    if not inst.is_feasible(x):
        raise AssertionError("final solution violates the original constraints")
    if feasibility:
        return SolveResult(FEASIBLE, x=x, diagnostics=diag)
    value = inst.objective(x)
    return SolveResult(OPTIMAL, value, x, diag)


def solve_canonical(canon, config=None):
    """Solve ``max/min c^T x, Ax <= b, x in Z^n`` via the group reduction."""
    from .reductions import reduce_cf_to_gensf

    inst, cmap = reduce_cf_to_gensf(canon)
    res = solve(inst, config)
    diag = dict(res.diagnostics)
    diag["group"] = list(inst.group.orders)
    if res.status == OPTIMAL:
        x = cmap.solution(res.x)
        value = Fraction(canon.objective(x))
        assert cmap.value(res.value) == value
        if not canon.is_feasible(x):
            raise AssertionError("mapped solution violates Ax <= b")
        return SolveResult(OPTIMAL, value.numerator if value.denominator == 1 else value, x, diag)
    if res.status == UNBOUNDED:
        return SolveResult(UNBOUNDED, x=cmap.solution(res.x), diagnostics=diag)
    return SolveResult(res.status, diagnostics=diag)
