"""Dense LP solver and polyhedral geometry utilities.

The solver is a bounded-variable primal simplex with deterministic pivoting:
Dantzig's rule with lowest-index tie breaking, switching to Bland's rule after
1000 degenerate pivots so cycling cannot occur.  Determinism matters more than
speed here because optimal bases seed the parametric-region enumeration and
must be reproducible run to run.

Tolerances are absolute after equilibration (inf-norm row/column scaling):
feasibility 1e-9, reduced-cost optimality 1e-9.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyPolyhedronError, NumericalError, UnboundedRegionError

FEAS_TOL = 1e-9
OPT_TOL = 1e-9
PIVOT_TOL = 1e-10

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

# nonbasic parking states
_BASIC = 0
_AT_LOWER = 1
_AT_UPPER = 2
_FREE_ZERO = 3
_DISABLED = 4


def _as_matrix(a, ncols):
    if a is None:
        return np.zeros((0, ncols), dtype=float)
    a = np.atleast_2d(np.asarray(a, dtype=float))
    return a


def _as_vector(v, n=None, fill=0.0):
    if v is None:
        return np.full(0 if n is None else n, fill, dtype=float)
    return np.atleast_1d(np.asarray(v, dtype=float))


@dataclass(frozen=True)
class LinearProgram:
    """min c'x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  lower <= x <= upper.

    Bounds default to x >= 0; pass -inf/inf entries to free a variable.
    """

    c: np.ndarray
    A_eq: np.ndarray = None
    b_eq: np.ndarray = None
    A_ub: np.ndarray = None
    b_ub: np.ndarray = None
    lower: np.ndarray = None
    upper: np.ndarray = None

    def __post_init__(self):
        c = _as_vector(self.c)
        n = c.size
        A_eq = _as_matrix(self.A_eq, n)
        A_ub = _as_matrix(self.A_ub, n)
        b_eq = _as_vector(self.b_eq, A_eq.shape[0])
        b_ub = _as_vector(self.b_ub, A_ub.shape[0])
        lower = _as_vector(self.lower, n, fill=-np.inf) if self.lower is not None else np.zeros(n)
        upper = _as_vector(self.upper, n, fill=np.inf) if self.upper is not None else np.full(n, np.inf)
        if A_eq.shape[1] != n or A_ub.shape[1] != n:
            raise ValueError("constraint matrix column count != variable count")
        if b_eq.size != A_eq.shape[0] or b_ub.size != A_ub.shape[0]:
            raise ValueError("rhs length != row count")
        if lower.size != n or upper.size != n:
            raise ValueError("bound length != variable count")
        for name, arr in (("c", c), ("A_eq", A_eq), ("A_ub", A_ub), ("b_eq", b_eq), ("b_ub", b_ub)):
            if arr.size and not np.all(np.isfinite(arr)):
                raise ValueError(f"non-finite entries in {name}")
        if np.any(lower > upper + 1e-15):
            raise ValueError("lower bound exceeds upper bound")
        for f, v in (("c", c), ("A_eq", A_eq), ("b_eq", b_eq), ("A_ub", A_ub),
                     ("b_ub", b_ub), ("lower", lower), ("upper", upper)):
            object.__setattr__(self, f, v)

    @property
    def n_var(self):
        return self.c.size

    @property
    def m_eq(self):
        return self.b_eq.size

    @property
    def m_ub(self):
        return self.b_ub.size


@dataclass(frozen=True)
class LpSolution:
    """Solver outcome.

    ``basis`` indexes columns of the standard form ``[x, slacks, artificials]``
    where slack j belongs to inequality row j and artificial i (index
    ``n_var + m_ub + i``) can only remain basic, pinned at zero, when row i is
    redundant.  ``at_upper`` lists nonbasic columns parked at their upper
    bound; everything else nonbasic sits at its lower bound (or at zero for
    free columns listed in ``free_nonbasic``).
    """

    status: str
    x: np.ndarray = None
    duals: np.ndarray = None
    objective: float = None
    basis: tuple = ()
    at_upper: tuple = ()
    free_nonbasic: tuple = ()


def standard_form(lp: LinearProgram):
    """Return (A, b, c, lower, upper, n_struct) with slack columns appended.

    Equality rows come first, then inequality rows with their slacks in
    [0, inf).  Artificial columns are *not* included; by convention artificial
    i is the unit column on row i with bounds pinned to [0, 0].
    """
    n = lp.n_var
    m_eq, m_ub = lp.m_eq, lp.m_ub
    m = m_eq + m_ub
    A = np.zeros((m, n + m_ub))
    A[:m_eq, :n] = lp.A_eq
    A[m_eq:, :n] = lp.A_ub
    if m_ub:
        A[m_eq:, n:] = np.eye(m_ub)
    b = np.concatenate([lp.b_eq, lp.b_ub])
    c = np.concatenate([lp.c, np.zeros(m_ub)])
    lower = np.concatenate([lp.lower, np.zeros(m_ub)])
    upper = np.concatenate([lp.upper, np.full(m_ub, np.inf)])
    return A, b, c, lower, upper, n


class _Simplex:
    """Bounded-variable primal simplex on the standard form."""

    def __init__(self, A, b, c, lower, upper):
        self.m, self.n = A.shape
        # equilibration: inf-norm row scaling then column scaling
        row_norm = np.maximum(np.abs(A).max(axis=1, initial=0.0), 1e-300)
        self.row_scale = np.where(row_norm > 0, 1.0 / row_norm, 1.0)
        As = A * self.row_scale[:, None]
        col_norm = np.maximum(np.abs(As).max(axis=0, initial=0.0), 1e-300)
        self.col_scale = np.where(col_norm > 1e-12, 1.0 / col_norm, 1.0)
        As = As * self.col_scale[None, :]
        # x = col_scale * z  =>  z = x / col_scale
        self.A = np.hstack([As, np.eye(self.m)])  # artificial columns appended
        self.b = b * self.row_scale
        self.c_real = np.concatenate([c * self.col_scale, np.zeros(self.m)])
        self.lower = np.concatenate([lower / self.col_scale, np.zeros(self.m)])
        self.upper = np.concatenate([upper / self.col_scale, np.full(self.m, np.inf)])
        self.n_tot = self.n + self.m
        self.status_arr = np.empty(self.n_tot, dtype=np.int8)
        self.binv = None
        self.basis = None
        self.xb = None
        self.bland = False
        self.degen_count = 0
        self.pivots = 0

    def _nonbasic_values(self):
        vals = np.zeros(self.n_tot)
        at_lo = self.status_arr == _AT_LOWER
        at_up = self.status_arr == _AT_UPPER
        vals[at_lo] = self.lower[at_lo]
        vals[at_up] = self.upper[at_up]
        return vals

    def _refactorize(self):
        B = self.A[:, self.basis]
        try:
            self.binv = np.linalg.inv(B)
        except np.linalg.LinAlgError as exc:
            raise NumericalError("singular basis during refactorization") from exc
        vals = self._nonbasic_values()
        mask = np.ones(self.n_tot, dtype=bool)
        mask[self.basis] = False
        rhs = self.b - self.A[:, mask] @ vals[mask]
        self.xb = self.binv @ rhs

    def _phase(self, c_work, allow_unbounded):
        max_iter = 20000 + 200 * self.m
        while True:
            self.pivots += 1
            if self.pivots > max_iter:
                raise NumericalError("simplex iteration limit exceeded")
            if self.pivots % 500 == 0:
                self._refactorize()
            y = self.binv.T @ c_work[self.basis]
            d = c_work - self.A.T @ y
            # candidate entering columns
            stat = self.status_arr
            cand_lo = (stat == _AT_LOWER) & (d < -OPT_TOL)
            cand_up = (stat == _AT_UPPER) & (d > OPT_TOL)
            cand_fr = (stat == _FREE_ZERO) & (np.abs(d) > OPT_TOL)
            cand = cand_lo | cand_up | cand_fr
            if not cand.any():
                return "optimal", y
            idx = np.nonzero(cand)[0]
            if self.bland:
                j = idx[0]
            else:
                j = idx[np.argmax(np.abs(d[idx]))]
                # deterministic tie break: lowest index among equal magnitudes
                best = np.abs(d[j])
                ties = idx[np.abs(d[idx]) >= best - 1e-15]
                j = ties[0]
            direction = 1.0 if (stat[j] == _AT_LOWER or (stat[j] == _FREE_ZERO and d[j] < 0)) else -1.0
            w = self.binv @ self.A[:, j]
            rate = -direction * w
            # ratio test
            t_best = np.inf
            leave_pos = -1
            leave_to_upper = False
            lo_b = self.lower[self.basis]
            up_b = self.upper[self.basis]
            for k in range(self.m):
                r = rate[k]
                if r < -PIVOT_TOL and np.isfinite(lo_b[k]):
                    t = (lo_b[k] - self.xb[k]) / r
                elif r > PIVOT_TOL and np.isfinite(up_b[k]):
                    t = (up_b[k] - self.xb[k]) / r
                else:
                    continue
                t = max(t, 0.0)
                if t < t_best - 1e-12 or (t <= t_best + 1e-12 and leave_pos >= 0
                                          and self.basis[k] < self.basis[leave_pos]):
                    t_best = t
                    leave_pos = k
                    leave_to_upper = r > 0
            t_flip = np.inf
            if np.isfinite(self.lower[j]) and np.isfinite(self.upper[j]):
                t_flip = self.upper[j] - self.lower[j]
            if t_flip < t_best - 1e-12:
                # bound flip, no basis change
                self.xb = self.xb + rate * t_flip
                self.status_arr[j] = _AT_UPPER if direction > 0 else _AT_LOWER
                if t_flip <= 1e-11:
                    self._count_degenerate()
                continue
            if leave_pos < 0:
                if allow_unbounded:
                    return "unbounded", y
                raise NumericalError("phase objective unbounded; scaling failure")
            # pivot
            alpha = w[leave_pos]
            if abs(alpha) < PIVOT_TOL:
                self._refactorize()
                w = self.binv @ self.A[:, j]
                alpha = w[leave_pos]
                if abs(alpha) < PIVOT_TOL:
                    raise NumericalError("pivot element vanished")
            t = t_best
            entering_start = {_AT_LOWER: self.lower[j], _AT_UPPER: self.upper[j],
                              _FREE_ZERO: 0.0}[int(self.status_arr[j])]
            self.xb = self.xb + rate * t
            leaving = self.basis[leave_pos]
            self.status_arr[leaving] = _AT_UPPER if leave_to_upper else _AT_LOWER
            self.basis[leave_pos] = j
            self.status_arr[j] = _BASIC
            self.xb[leave_pos] = entering_start + direction * t
            # product-form update of the basis inverse
            eta = self.binv[leave_pos, :] / alpha
            self.binv -= np.outer(w, eta)
            self.binv[leave_pos, :] = eta
            if t <= 1e-11:
                self._count_degenerate()

    def _count_degenerate(self):
        self.degen_count += 1
        if self.degen_count > 1000:
            self.bland = True

    def solve(self):
        n, m = self.n, self.m
        # initial parking: finite lower preferred, then upper, else free at zero
        for j in range(n):
            if np.isfinite(self.lower[j]):
                self.status_arr[j] = _AT_LOWER
            elif np.isfinite(self.upper[j]):
                self.status_arr[j] = _AT_UPPER
            else:
                self.status_arr[j] = _FREE_ZERO
        self.status_arr[n:] = _DISABLED
        vals = np.zeros(self.n_tot)
        at_lo = self.status_arr[:n] == _AT_LOWER
        at_up = self.status_arr[:n] == _AT_UPPER
        vals[:n][at_lo] = self.lower[:n][at_lo]
        vals[:n][at_up] = self.upper[:n][at_up]
        r = self.b - self.A[:, :n] @ vals[:n]
        c_phase1 = np.zeros(self.n_tot)
        for i in range(m):
            aj = n + i
            self.status_arr[aj] = _BASIC
            if r[i] >= 0:
                self.lower[aj], self.upper[aj] = 0.0, np.inf
                c_phase1[aj] = 1.0
            else:
                self.lower[aj], self.upper[aj] = -np.inf, 0.0
                c_phase1[aj] = -1.0
        self.basis = list(range(n, n + m))
        self.binv = np.eye(m)
        self.xb = r.copy()

        outcome, _ = self._phase(c_phase1, allow_unbounded=False)
        phase1_obj = float(c_phase1[self.basis] @ self.xb)
        if phase1_obj > 1e-7:
            return LpSolution(status=INFEASIBLE)
        # drive artificials out of the basis; pin those on redundant rows
        for pos in range(m):
            col = self.basis[pos]
            if col < n:
                continue
            row_coeffs = self.binv[pos, :] @ self.A[:, :n]
            pivot_j = -1
            for j in range(n):
                if self.status_arr[j] in (_AT_LOWER, _AT_UPPER, _FREE_ZERO) and abs(row_coeffs[j]) > 1e-9:
                    pivot_j = j
                    break
            if pivot_j < 0:
                # redundant row: keep artificial basic, pinned at zero
                self.lower[col] = 0.0
                self.upper[col] = 0.0
                continue
            w = self.binv @ self.A[:, pivot_j]
            alpha = w[pos]
            start = {_AT_LOWER: self.lower[pivot_j], _AT_UPPER: self.upper[pivot_j],
                     _FREE_ZERO: 0.0}[int(self.status_arr[pivot_j])]
            self.status_arr[col] = _DISABLED
            self.basis[pos] = pivot_j
            self.status_arr[pivot_j] = _BASIC
            eta = self.binv[pos, :] / alpha
            self.binv -= np.outer(w, eta)
            self.binv[pos, :] = eta
            self.xb = self.xb - w * 0.0  # degenerate swap: artificial sat at 0
            self.xb[pos] = start
            self._refactorize()
        # disable all nonbasic artificials for phase 2
        for i in range(m):
            if self.status_arr[n + i] != _BASIC:
                self.status_arr[n + i] = _DISABLED

        self.degen_count = 0
        self.bland = False
        outcome, y = self._phase(self.c_real, allow_unbounded=True)
        if outcome == "unbounded":
            return LpSolution(status=UNBOUNDED)
        self._refactorize()
        y = self.binv.T @ self.c_real[self.basis]
        vals = self._nonbasic_values()
        z = vals
        z[self.basis] = self.xb
        # unscale
        x = z[:n] * self.col_scale
        duals = y * self.row_scale
        basis = tuple(sorted(self.basis))
        at_upper = tuple(int(j) for j in np.nonzero(self.status_arr == _AT_UPPER)[0])
        free_nb = tuple(int(j) for j in np.nonzero(self.status_arr == _FREE_ZERO)[0])
        return LpSolution(status=OPTIMAL, x=x, duals=duals, objective=None,
                          basis=basis, at_upper=at_upper, free_nonbasic=free_nb)


def solve_lp(lp: LinearProgram) -> LpSolution:
    """Solve an LP; statuses are 'optimal', 'infeasible' or 'unbounded'.

    Raises NumericalError when pivoting stalls beyond the anti-cycling
    fallback, which signals ill-conditioned input.
    """
    A, b, c, lower, upper, n_struct = standard_form(lp)
    sol = _Simplex(A, b, c, lower, upper).solve()
    if sol.status != OPTIMAL:
        return sol
    x = sol.x[:n_struct]
    obj = float(lp.c @ x)
    return LpSolution(status=OPTIMAL, x=x, duals=sol.duals, objective=obj,
                      basis=sol.basis, at_upper=sol.at_upper,
                      free_nonbasic=sol.free_nonbasic)


def dual_objective(lp: LinearProgram, sol: LpSolution) -> float:
    """Dual objective value of an optimal solution (for duality audits)."""
    A, b, c, lower, upper, n_struct = standard_form(lp)
    y = sol.duals
    d = c - A.T @ y
    val = float(y @ b)
    basic = set(sol.basis)
    at_up = set(sol.at_upper)
    for j in range(A.shape[1]):
        if j in basic or j in set(sol.free_nonbasic):
            continue
        bound = upper[j] if j in at_up else lower[j]
        if np.isfinite(bound) and abs(d[j]) > 1e-13:
            val += d[j] * bound
    return val


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(frozen=True)
class Polyhedron:
    """A x <= b."""

    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = np.atleast_2d(np.asarray(self.A, dtype=float))
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        if A.shape[0] != b.size:
            raise ValueError("row count mismatch between A and b")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @property
    def dim(self):
        return self.A.shape[1]

    @property
    def n_rows(self):
        return self.A.shape[0]

    def canonical(self) -> "Polyhedron":
        """Rows scaled to unit Euclidean norm, then lexicographically sorted."""
        norms = np.linalg.norm(self.A, axis=1)
        norms = np.where(norms > 1e-300, norms, 1.0)
        A = self.A / norms[:, None]
        b = self.b / norms
        # lexsort: primary key A[:, 0], then A[:, 1], ..., rhs last
        order = np.lexsort(np.vstack([A.T, b])[::-1])
        return Polyhedron(A[order], b[order])


def is_feasible(poly: Polyhedron, point, tol: float = 1e-9) -> bool:
    """True iff A point <= b + tol, tolerance absolute per row."""
    point = np.asarray(point, dtype=float)
    if point.size != poly.dim:
        raise ValueError(f"point dimension {point.size} != polyhedron dimension {poly.dim}")
    return bool(np.all(poly.A @ point <= poly.b + tol))


def _feasible_point(poly: Polyhedron):
    """Chebyshev-like interior point, or None when the polyhedron is empty."""
    m, d = poly.A.shape
    norms = np.linalg.norm(poly.A, axis=1)
    # variables: x (free), r >= 0; max r s.t. A x + ||a_i|| r <= b
    c = np.zeros(d + 1)
    c[d] = -1.0
    A_ub = np.hstack([poly.A, norms[:, None]])
    lower = np.full(d + 1, -np.inf)
    lower[d] = 0.0
    upper = np.full(d + 1, np.inf)
    upper[d] = 1e7  # cap the radius so unbounded polyhedra still return a point
    sol = solve_lp(LinearProgram(c=c, A_ub=A_ub, b_ub=poly.b, lower=lower, upper=upper))
    if sol.status != OPTIMAL or sol.x[d] < -1e-9:
        return None
    return sol.x[:d], float(sol.x[d])


def chebyshev_center(poly: Polyhedron):
    """(center, radius) of the largest inscribed ball; radius capped at 1e7."""
    res = _feasible_point(poly)
    if res is None:
        raise EmptyPolyhedronError("polyhedron is empty")
    return res


def remove_redundant_rows(poly: Polyhedron, tol: float = 1e-9) -> Polyhedron:
    """Minimal representation with the identical point set, canonical form.

    Each surviving row is tight for some feasible point (checked by one LP
    per row).  Raises EmptyPolyhedronError on infeasible input.
    """
    if _feasible_point(poly) is None:
        raise EmptyPolyhedronError("cannot reduce an empty polyhedron")
    cano = poly.canonical()
    A, b = cano.A, cano.b
    # drop exact duplicates (keep the tightest rhs per direction)
    keep = []
    seen = {}
    for i in range(A.shape[0]):
        key = tuple(np.round(A[i], 12))
        if key in seen:
            k = seen[key]
            if b[i] < b[k] - 1e-15:
                keep[keep.index(k)] = i
                seen[key] = i
            continue
        seen[key] = i
        keep.append(i)
    A, b = A[keep], b[keep]
    # LP test per row
    alive = list(range(A.shape[0]))
    i = 0
    while i < len(alive):
        row = alive[i]
        others = [r for r in alive if r != row]
        b_relax = b.copy()
        b_relax[row] = b[row] + 1.0
        test = LinearProgram(c=-A[row],
                             A_ub=A[[*others, row]], b_ub=b_relax[[*others, row]],
                             lower=np.full(A.shape[1], -np.inf),
                             upper=np.full(A.shape[1], np.inf))
        sol = solve_lp(test)
        if sol.status == OPTIMAL and -sol.objective <= b[row] + tol:
            alive.pop(i)
        else:
            i += 1
    return Polyhedron(A[alive], b[alive]).canonical()


# ---------------------------------------------------------------------------
# 2-D geometry

_BOX = 1e7
_UNBOUNDED_AT = 1e6


def _clip_halfspace(verts, a, bb):
    """Clip a convex CCW polygon by a x <= bb (Sutherland-Hodgman step)."""
    out = []
    n = len(verts)
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        fp = a @ p - bb
        fq = a @ q - bb
        if fp <= 1e-12:
            out.append(p)
        if (fp < -1e-12 and fq > 1e-12) or (fp > 1e-12 and fq < -1e-12):
            t = fp / (fp - fq)
            out.append(p + t * (q - p))
    return out


def _dedupe_ring(verts, tol=1e-9):
    out = []
    for v in verts:
        if not out or np.linalg.norm(v - out[-1]) > tol:
            out.append(v)
    while len(out) > 1 and np.linalg.norm(out[0] - out[-1]) <= tol:
        out.pop()
    # drop collinear middles
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(len(out)):
            a, bv, c = out[i - 1], out[i], out[(i + 1) % len(out)]
            cross = (bv[0] - a[0]) * (c[1] - a[1]) - (bv[1] - a[1]) * (c[0] - a[0])
            if abs(cross) <= 1e-9 * max(1.0, np.linalg.norm(c - a)):
                out.pop(i)
                changed = True
                break
    return out


def vertices_2d(poly: Polyhedron):
    """Counter-clockwise vertex list of a bounded 2-D polyhedron.

    Raises UnboundedRegionError when a recession direction exists and
    EmptyPolyhedronError when the polyhedron is empty.  Degenerate polyhedra
    (segments, points) return 2 or 1 vertices.
    """
    if poly.dim != 2:
        raise ValueError("vertices_2d requires a 2-D polyhedron")
    verts = [np.array([-_BOX, -_BOX]), np.array([_BOX, -_BOX]),
             np.array([_BOX, _BOX]), np.array([-_BOX, _BOX])]
    cano = poly.canonical()
    for i in range(cano.n_rows):
        verts = _clip_halfspace(verts, cano.A[i], cano.b[i])
        if not verts:
            raise EmptyPolyhedronError("polyhedron is empty")
    arr = _dedupe_ring([np.asarray(v) for v in verts])
    if not arr:
        raise EmptyPolyhedronError("polyhedron is empty")
    if any(np.abs(v).max() >= _UNBOUNDED_AT for v in arr):
        raise UnboundedRegionError("polyhedron has a recession direction")
    pts = np.array(arr)
    if len(pts) >= 3 and polygon_area(pts) < 0:
        pts = pts[::-1]
    return [p for p in pts]


def polygon_area(vertices) -> float:
    """Signed shoelace area; positive for CCW rings."""
    pts = np.asarray(vertices, dtype=float)
    if len(pts) < 3:
        return 0.0
    x, y = pts[:, 0], pts[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def convex_hull_2d(points):
    """Andrew monotone chain; returns CCW hull vertices (no repeats)."""
    pts = sorted({(round(float(p[0]), 12), round(float(p[1]), 12)) for p in points})
    if len(pts) <= 2:
        return [np.array(p) for p in pts]

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lo = []
    for p in pts:
        while len(lo) >= 2 and cross(lo[-2], lo[-1], p) <= 1e-14:
            lo.pop()
        lo.append(p)
    hi = []
    for p in reversed(pts):
        while len(hi) >= 2 and cross(hi[-2], hi[-1], p) <= 1e-14:
            hi.pop()
        hi.append(p)
    return [np.array(p) for p in lo[:-1] + hi[:-1]]


def halfspaces_from_vertices(vertices) -> Polyhedron:
    """Halfspace form of a convex CCW polygon (points and segments allowed)."""
    pts = [np.asarray(v, dtype=float) for v in vertices]
    if len(pts) == 1:
        p = pts[0]
        A = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])
        b = np.array([p[0], -p[0], p[1], -p[1]])
        return Polyhedron(A, b)
    if len(pts) == 2:
        d = pts[1] - pts[0]
        nrm = np.array([d[1], -d[0]])
        nrm = nrm / np.linalg.norm(nrm)
        t = d / np.linalg.norm(d)
        A = np.array([nrm, -nrm, t, -t])
        b = np.array([nrm @ pts[0], -(nrm @ pts[0]), t @ pts[1], -(t @ pts[0])])
        return Polyhedron(A, b)
    rows, rhs = [], []
    n = len(pts)
    for i in range(n):
        p, q = pts[i], pts[(i + 1) % n]
        d = q - p
        nrm = np.array([d[1], -d[0]])  # outward for CCW rings
        ln = np.linalg.norm(nrm)
        if ln < 1e-14:
            continue
        nrm = nrm / ln
        rows.append(nrm)
        rhs.append(nrm @ p)
    return Polyhedron(np.array(rows), np.array(rhs))
