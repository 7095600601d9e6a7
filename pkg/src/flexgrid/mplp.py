"""Critical-region enumeration for parametric LPs.

Parameters enter linearly on the right-hand side, b(t) = b0 + F t, and in the
cost vector, c(t) = c0 + H t.  For a fixed optimal basis the primal solution
is affine in the RHS parameters and the reduced costs are affine in the cost
parameters, so the set of parameters keeping that basis optimal is a
polyhedron: primal-feasibility rows bound the basic variables, dual-feasibility
rows sign the nonbasic reduced costs.  The per-region cost is bilinear,
f(t) = alpha + g.t + t'Qt, where Q collects cost-parameter x RHS-parameter
cross terms; once either group is fixed the cost becomes affine in the rest.

Enumeration is seeded: each parameter point is solved once and deduplicated by
(basis, bound-status) key.  In low dimension (<= 3) a facet-crossing traversal
completes the tiling; in high dimension coverage is grown by sampling, with an
explicit NotCovered fallback left to the caller.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    NotCoveredError,
    NumericalError,
    OutsideRegionError,
    SeedInfeasibleError,
)
from .lp import (
    INFEASIBLE,
    OPTIMAL,
    LinearProgram,
    Polyhedron,
    solve_lp,
    standard_form,
)

_CROSS_EPS = 1e-6
_TANGENT_EPS = 1e-5


@dataclass(frozen=True)
class ParametricLP:
    """Base LP plus RHS/cost sensitivities and a box parameter set."""

    lp: LinearProgram
    F: np.ndarray          # (m_eq + m_ub, n_param)
    H: np.ndarray          # (n_var, n_param)
    theta_lo: np.ndarray
    theta_hi: np.ndarray
    param_names: tuple

    def __post_init__(self):
        m = self.lp.m_eq + self.lp.m_ub
        F = np.atleast_2d(np.asarray(self.F, dtype=float))
        H = np.atleast_2d(np.asarray(self.H, dtype=float))
        lo = np.asarray(self.theta_lo, dtype=float)
        hi = np.asarray(self.theta_hi, dtype=float)
        p = lo.size
        if F.shape != (m, p):
            raise ValueError(f"F shape {F.shape} != ({m}, {p})")
        if H.shape != (self.lp.n_var, p):
            raise ValueError(f"H shape {H.shape} != ({self.lp.n_var}, {p})")
        if len(self.param_names) != p:
            raise ValueError("parameter name count mismatch")
        if not np.all(np.isfinite(lo)) or not np.all(np.isfinite(hi)):
            raise ValueError("parameter box must be bounded")
        for f, v in (("F", F), ("H", H), ("theta_lo", lo), ("theta_hi", hi)):
            object.__setattr__(self, f, v)
        object.__setattr__(self, "param_names", tuple(self.param_names))

    @property
    def n_param(self):
        return self.theta_lo.size

    def lp_at(self, theta) -> LinearProgram:
        """Plain LP with the parameter vector substituted."""
        theta = np.asarray(theta, dtype=float)
        b = np.concatenate([self.lp.b_eq, self.lp.b_ub]) + self.F @ theta
        c = self.lp.c + self.H @ theta
        m_eq = self.lp.m_eq
        return LinearProgram(c=c, A_eq=self.lp.A_eq, b_eq=b[:m_eq],
                             A_ub=self.lp.A_ub, b_ub=b[m_eq:],
                             lower=self.lp.lower, upper=self.lp.upper)

    def in_box(self, theta, tol=1e-9):
        theta = np.asarray(theta, dtype=float)
        return bool(np.all(theta >= self.theta_lo - tol) and np.all(theta <= self.theta_hi + tol))


@dataclass
class CriticalRegion:
    """Polyhedron in parameter space with its affine policy and bilinear cost."""

    poly: Polyhedron
    G: np.ndarray           # (n_var, n_param) policy sensitivity
    g0: np.ndarray          # (n_var,) policy offset
    alpha: float
    g: np.ndarray           # (n_param,)
    Q: np.ndarray           # (n_param, n_param), cost x RHS cross terms
    basis: tuple
    at_upper: tuple
    degenerate: bool = False

    def contains(self, theta, tol=1e-9) -> bool:
        theta = np.asarray(theta, dtype=float)
        return bool(np.all(self.poly.A @ theta <= self.poly.b + tol))

    def policy(self, theta) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        return self.g0 + self.G @ theta

    def cost(self, theta) -> float:
        theta = np.asarray(theta, dtype=float)
        return float(self.alpha + self.g @ theta + theta @ self.Q @ theta)


@dataclass
class RegionStore:
    """Immutable collection of critical regions over a parameter box."""

    regions: list
    param_names: tuple
    theta_lo: np.ndarray
    theta_hi: np.ndarray
    coverage: float = float("nan")
    _stack: tuple = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.regions)

    def _stacked(self):
        if self._stack is None:
            if self.regions:
                A = np.vstack([r.poly.A for r in self.regions])
                b = np.concatenate([r.poly.b for r in self.regions])
                counts = np.array([r.poly.n_rows for r in self.regions])
                offsets = np.concatenate([[0], np.cumsum(counts)[:-1]])
            else:
                A = np.zeros((0, len(self.param_names)))
                b = np.zeros(0)
                offsets = np.zeros(0, dtype=int)
            object.__setattr__(self, "_stack", (A, b, offsets))
        return self._stack

    def containing_index(self, theta, tol=1e-9) -> int:
        """Lowest region index containing theta, or -1."""
        A, b, offsets = self._stacked()
        if not len(self.regions):
            return -1
        ok = (A @ np.asarray(theta, dtype=float)) <= b + tol
        per_region = np.logical_and.reduceat(ok, offsets) if ok.size else np.zeros(0, bool)
        hits = np.nonzero(per_region)[0]
        return int(hits[0]) if hits.size else -1


def locate_region(store: RegionStore, theta, tol=1e-9) -> CriticalRegion:
    """Region containing theta; facet ties go to the lowest region index.

    Raises NotCoveredError when theta falls in an unexplored hole, in which
    case the caller should fall back to a direct LP solve.
    """
    idx = store.containing_index(theta, tol)
    if idx < 0:
        raise NotCoveredError("parameter point not covered by the region store")
    return store.regions[idx]


def evaluate_policy(region: CriticalRegion, theta) -> np.ndarray:
    """u*(theta) = G theta + g0; theta must lie in the region (tol 1e-9)."""
    if not region.contains(theta, tol=1e-9):
        raise OutsideRegionError("theta outside the critical region")
    return region.policy(theta)


# ---------------------------------------------------------------------------
# region construction


def _region_key(sol):
    return (sol.basis, sol.at_upper, sol.free_nonbasic)


def region_from_solution(plp: ParametricLP, sol) -> CriticalRegion:
    """Build the critical region of an optimal basis.

    Basis indices >= n_struct + m_ub denote artificials pinned to zero on
    redundant rows; they contribute equality rows to the region.
    """
    A, b0, c0, lo, up, n_struct = standard_form(plp.lp)
    m, n_std = A.shape
    p = plp.n_param
    F = plp.F
    H = np.vstack([plp.H, np.zeros((n_std - n_struct, p))])

    basis = list(sol.basis)
    B = np.zeros((m, m))
    lo_b = np.zeros(m)
    up_b = np.zeros(m)
    c0_b = np.zeros(m)
    H_b = np.zeros((m, p))
    for k, j in enumerate(basis):
        if j < n_std:
            B[:, k] = A[:, j]
            lo_b[k], up_b[k] = lo[j], up[j]
            c0_b[k] = c0[j]
            H_b[k] = H[j]
        else:
            B[j - n_std, k] = 1.0  # pinned artificial on a redundant row
            lo_b[k] = up_b[k] = 0.0
    try:
        binv = np.linalg.inv(B)
    except np.linalg.LinAlgError as exc:
        raise NumericalError("singular basis in region construction") from exc

    at_upper = set(sol.at_upper)
    free_nb = set(sol.free_nonbasic)
    in_basis = set(basis)
    nonbasic = [j for j in range(n_std) if j not in in_basis]
    xn = np.zeros(n_std)
    for j in nonbasic:
        if j in at_upper:
            xn[j] = up[j]
        elif np.isfinite(lo[j]):
            xn[j] = lo[j]
        else:
            xn[j] = 0.0

    rhs0 = b0 - A[:, nonbasic] @ xn[nonbasic]
    xbar = binv @ rhs0
    X = binv @ F

    rows, rhs = [], []
    # primal feasibility of the basic variables
    for k in range(m):
        if np.isfinite(up_b[k]):
            rows.append(X[k])
            rhs.append(up_b[k] - xbar[k])
        if np.isfinite(lo_b[k]):
            rows.append(-X[k])
            rhs.append(xbar[k] - lo_b[k])
    # dual feasibility of the nonbasic variables
    ybar = binv.T @ c0_b
    Y = binv.T @ H_b
    for j in nonbasic:
        d0 = c0[j] - A[:, j] @ ybar
        D = H[j] - A[:, j] @ Y
        if j in free_nb:
            rows.extend([D, -D])
            rhs.extend([-d0, d0])
        elif j in at_upper:
            rows.append(D)
            rhs.append(-d0)
        else:
            rows.append(-D)
            rhs.append(d0)

    A_r = np.array(rows)
    b_r = np.array(rhs)
    # normalize, drop zero rows and duplicates, prune rows inactive on the box
    norms = np.linalg.norm(A_r, axis=1)
    zero = norms < 1e-11
    A_r, b_r, norms = A_r[~zero], b_r[~zero], norms[~zero]
    A_r = A_r / norms[:, None]
    b_r = b_r / norms
    box_max = A_r @ ((plp.theta_lo + plp.theta_hi) / 2.0) + \
        np.abs(A_r) @ ((plp.theta_hi - plp.theta_lo) / 2.0)
    keep = box_max > b_r + 1e-12
    A_r, b_r = A_r[keep], b_r[keep]
    seen = {}
    order = []
    for i in range(A_r.shape[0]):
        key = tuple(np.round(A_r[i], 12))
        if key in seen:
            k = seen[key]
            b_r[k] = min(b_r[k], b_r[i])
        else:
            seen[key] = i
            order.append(i)
    A_r, b_r = A_r[order], b_r[order]
    if A_r.size == 0:
        A_r = np.zeros((0, p))
        b_r = np.zeros(0)

    # affine policy for the structural variables
    G = np.zeros((n_struct, p))
    g0 = xn[:n_struct].copy()
    for k, j in enumerate(basis):
        if j < n_struct:
            G[j] = X[k]
            g0[j] = xbar[k]

    c_struct = c0[:n_struct]
    H_struct = H[:n_struct]
    alpha = float(c_struct @ g0)
    g = G.T @ c_struct + H_struct.T @ g0
    Q = H_struct.T @ G
    return CriticalRegion(poly=Polyhedron(A_r, b_r), G=G, g0=g0,
                          alpha=alpha, g=g, Q=Q,
                          basis=sol.basis, at_upper=sol.at_upper)


def region_from_point(plp: ParametricLP, theta):
    """Solve the LP at theta and build the region of its optimal basis."""
    sol = solve_lp(plp.lp_at(theta))
    if sol.status == INFEASIBLE:
        raise SeedInfeasibleError(f"LP infeasible at {np.asarray(theta)}")
    if sol.status != OPTIMAL:
        raise NumericalError(f"LP {sol.status} at seed point")
    return sol, region_from_solution(plp, sol)


# ---------------------------------------------------------------------------
# enumeration


def _facet_interior_point(plp, region, row):
    """Relative-interior point of one facet, inside the parameter box."""
    A_r, b_r = region.poly.A, region.poly.b
    others = [i for i in range(A_r.shape[0]) if i != row]
    p = plp.n_param
    # vars: theta, r ; maximize r with slack on the other rows
    c = np.zeros(p + 1)
    c[p] = -1.0
    A_ub = np.hstack([A_r[others], np.ones((len(others), 1))]) if others else None
    b_ub = b_r[others] if others else None
    A_eq = np.hstack([A_r[[row]], np.zeros((1, 1))])
    b_eq = b_r[[row]]
    lower = np.concatenate([plp.theta_lo, [0.0]])
    upper = np.concatenate([plp.theta_hi, [1e6]])
    sol = solve_lp(LinearProgram(c=c, A_eq=A_eq, b_eq=b_eq, A_ub=A_ub, b_ub=b_ub,
                                 lower=lower, upper=upper))
    if sol.status != OPTIMAL or sol.x[p] < 1e-9:
        return None
    return sol.x[:p]


def enumerate_regions(plp: ParametricLP, seeds, budget=1000,
                      cross_facets=None, skip_infeasible=False) -> RegionStore:
    """Discover critical regions from seed points.

    Facet crossing (a small step across every facet to find the neighbouring
    basis) runs by default for parameter dimension <= 3, giving a complete
    tiling; higher dimensions rely on the seed stream.  Each seed must lie in
    the parameter box.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if cross_facets is None:
        cross_facets = plp.n_param <= 3
    regions = []
    keys = set()
    queue = []

    def add_point(theta):
        try:
            sol, region = region_from_point(plp, theta)
        except SeedInfeasibleError:
            if skip_infeasible:
                return None
            raise
        key = _region_key(sol)
        if key in keys:
            return None
        keys.add(key)
        regions.append(region)
        queue.append(region)
        return region

    for seed in seeds:
        seed = np.asarray(seed, dtype=float)
        if not plp.in_box(seed, tol=1e-7):
            raise ValueError("seed outside the parameter box")
        if len(regions) >= budget:
            break
        tmp = RegionStore(regions, plp.param_names, plp.theta_lo, plp.theta_hi)
        if tmp.containing_index(seed) >= 0:
            continue
        add_point(seed)

    while cross_facets and queue and len(regions) < budget:
        region = queue.pop(0)
        A_r = region.poly.A
        for row in range(A_r.shape[0]):
            if len(regions) >= budget:
                break
            pt = _facet_interior_point(plp, region, row)
            if pt is None:
                continue
            step = pt + _CROSS_EPS * A_r[row]
            if not plp.in_box(step):
                continue
            tmp = RegionStore(regions, plp.param_names, plp.theta_lo, plp.theta_hi)
            if tmp.containing_index(step) >= 0:
                continue
            try:
                sol, neigh = region_from_point(plp, step)
            except SeedInfeasibleError:
                continue
            key = _region_key(sol)
            if key in keys:
                # degenerate crossing: nudge along a facet tangent and retry once
                tangent = np.zeros(plp.n_param)
                nz = np.nonzero(np.abs(A_r[row]) > 1e-12)[0]
                if plp.n_param > 1 and nz.size:
                    tangent[(nz[0] + 1) % plp.n_param] = 1.0
                    tangent -= (tangent @ A_r[row]) * A_r[row]
                    tn = np.linalg.norm(tangent)
                    if tn > 1e-12:
                        retry = step + _TANGENT_EPS * tangent / tn
                        if plp.in_box(retry):
                            try:
                                sol2, neigh2 = region_from_point(plp, retry)
                                if _region_key(sol2) not in keys:
                                    keys.add(_region_key(sol2))
                                    regions.append(neigh2)
                                    queue.append(neigh2)
                                    continue
                            except SeedInfeasibleError:
                                pass
                region.degenerate = True
                continue
            keys.add(key)
            regions.append(neigh)
            queue.append(neigh)

    return RegionStore(regions=regions, param_names=plp.param_names,
                       theta_lo=plp.theta_lo.copy(), theta_hi=plp.theta_hi.copy())


def grow_by_sampling(store: RegionStore, plp: ParametricLP, sampler, rng,
                     target_coverage=0.95, budget=2000, batch=64, max_batches=200):
    """Extend a store with regions at sampled uncovered points.

    ``sampler(rng)`` draws one parameter point (applying any envelope ordering
    rules).  Stops when the rolling covered fraction among feasible samples
    reaches the target or the region budget is exhausted.  Returns a new
    store carrying the measured coverage.
    """
    regions = list(store.regions)
    keys = {(r.basis, r.at_upper) for r in regions}
    covered = feasible = 0
    for _ in range(max_batches):
        batch_cov = batch_feas = 0
        for _ in range(batch):
            theta = sampler(rng)
            tmp = RegionStore(regions, plp.param_names, plp.theta_lo, plp.theta_hi)
            if tmp.containing_index(theta) >= 0:
                batch_cov += 1
                batch_feas += 1
                continue
            try:
                sol, region = region_from_point(plp, theta)
            except SeedInfeasibleError:
                continue
            batch_feas += 1
            key = (sol.basis, sol.at_upper)
            if key not in keys and len(regions) < budget:
                keys.add(key)
                regions.append(region)
        covered += batch_cov
        feasible += batch_feas
        if feasible and batch_feas and batch_cov / batch_feas >= target_coverage:
            break
        if len(regions) >= budget:
            break
    coverage = covered / feasible if feasible else float("nan")
    return RegionStore(regions=regions, param_names=store.param_names,
                       theta_lo=store.theta_lo, theta_hi=store.theta_hi,
                       coverage=coverage)


def estimate_coverage(store: RegionStore, plp: ParametricLP, sampler, rng, n=500):
    """Fraction of sampled feasible parameter points covered by the store."""
    covered = feasible = 0
    for _ in range(n):
        theta = sampler(rng)
        if store.containing_index(theta) >= 0:
            covered += 1
            feasible += 1
            continue
        sol = solve_lp(plp.lp_at(theta))
        if sol.status == OPTIMAL:
            feasible += 1
    return covered / feasible if feasible else float("nan")


# ---------------------------------------------------------------------------
# serialization (versioned, bit-exact float round-trip via repr)


def store_to_json(store: RegionStore) -> str:
    doc = {
        "version": 1,
        "param_names": list(store.param_names),
        "theta_lo": store.theta_lo.tolist(),
        "theta_hi": store.theta_hi.tolist(),
        "coverage": store.coverage,
        "regions": [
            {
                "A": r.poly.A.tolist(),
                "b": r.poly.b.tolist(),
                "G": r.G.tolist(),
                "g0": r.g0.tolist(),
                "alpha": r.alpha,
                "g": r.g.tolist(),
                "Q": r.Q.tolist(),
                "basis": list(r.basis),
                "at_upper": list(r.at_upper),
                "degenerate": r.degenerate,
            }
            for r in store.regions
        ],
    }
    return json.dumps(doc)


def store_from_json(text: str) -> RegionStore:
    doc = json.loads(text)
    if doc.get("version") != 1:
        raise ValueError(f"unsupported region store version {doc.get('version')!r}")
    p = len(doc["param_names"])
    regions = []
    for rd in doc["regions"]:
        A = np.array(rd["A"], dtype=float).reshape(-1, p)
        regions.append(CriticalRegion(
            poly=Polyhedron(A, np.array(rd["b"], dtype=float)),
            G=np.array(rd["G"], dtype=float),
            g0=np.array(rd["g0"], dtype=float),
            alpha=float(rd["alpha"]),
            g=np.array(rd["g"], dtype=float),
            Q=np.array(rd["Q"], dtype=float),
            basis=tuple(rd["basis"]),
            at_upper=tuple(rd["at_upper"]),
            degenerate=bool(rd["degenerate"]),
        ))
    return RegionStore(regions=regions, param_names=tuple(doc["param_names"]),
                       theta_lo=np.array(doc["theta_lo"], dtype=float),
                       theta_hi=np.array(doc["theta_hi"], dtype=float),
                       coverage=float(doc["coverage"]))
