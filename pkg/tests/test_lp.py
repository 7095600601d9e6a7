import numpy as np
import pytest

from flexgrid.errors import EmptyPolyhedronError, UnboundedRegionError
from flexgrid.lp import (
    INFEASIBLE,
    OPTIMAL,
    UNBOUNDED,
    LinearProgram,
    Polyhedron,
    chebyshev_center,
    convex_hull_2d,
    dual_objective,
    halfspaces_from_vertices,
    is_feasible,
    polygon_area,
    remove_redundant_rows,
    solve_lp,
    vertices_2d,
)

from oracles import membership_fraction, tableau_simplex, vertices_by_pairwise_intersection


def test_single_constraint_lp():
    # min -x s.t. x <= 5, x >= 0
    sol = solve_lp(LinearProgram(c=[-1.0], A_ub=[[1.0]], b_ub=[5.0]))
    assert sol.status == OPTIMAL
    assert sol.x[0] == pytest.approx(5.0, abs=1e-9)
    assert sol.objective == pytest.approx(-5.0, abs=1e-9)


def test_infeasible_lp():
    sol = solve_lp(LinearProgram(c=[1.0], A_ub=[[1.0]], b_ub=[-1.0]))
    assert sol.status == INFEASIBLE


def test_unbounded_lp():
    sol = solve_lp(LinearProgram(c=[-1.0]))
    assert sol.status == UNBOUNDED


def test_equality_and_bounds():
    # min x + y s.t. x + y = 1, 0.2 <= x <= 0.8, y >= 0.5
    lp = LinearProgram(c=[1.0, 1.0], A_eq=[[1.0, 1.0]], b_eq=[1.0],
                       lower=[0.2, 0.5], upper=[0.8, np.inf])
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == pytest.approx(1.0, abs=1e-9)
    assert sol.x[0] + sol.x[1] == pytest.approx(1.0, abs=1e-9)


def test_free_variable():
    # min y s.t. y >= x - 2, y >= -x, x free
    lp = LinearProgram(c=[0.0, 1.0],
                       A_ub=[[1.0, -1.0], [-1.0, -1.0]], b_ub=[2.0, 0.0],
                       lower=[-np.inf, -np.inf])
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == pytest.approx(-1.0, abs=1e-8)
    assert sol.x[0] == pytest.approx(1.0, abs=1e-8)


def _random_lp(rng, n=8, m=12):
    A = rng.normal(size=(m, n))
    x0 = rng.uniform(0.0, 1.0, size=n)  # keeps the LP feasible
    b = A @ x0 + rng.uniform(0.1, 1.0, size=m)
    c = rng.normal(size=n)
    return A, b, c, x0


def test_random_lps_match_oracle():
    rng = np.random.default_rng(42)
    solved = 0
    for _ in range(40):
        A, b, c, _ = _random_lp(rng)
        # bound variables above so the minimum exists
        lp = LinearProgram(c=c, A_ub=A, b_ub=b, upper=np.full(8, 50.0))
        sol = solve_lp(lp)
        A2 = np.vstack([A, np.eye(8)])
        b2 = np.concatenate([b, np.full(8, 50.0)])
        status, x, obj = tableau_simplex(c, A_ub=A2, b_ub=b2)
        assert sol.status == OPTIMAL
        assert status == "optimal"
        assert sol.objective == pytest.approx(obj, abs=1e-7)
        solved += 1
    assert solved == 40


def test_random_lps_with_equalities_match_oracle():
    rng = np.random.default_rng(7)
    for _ in range(25):
        A, b, c, x0 = _random_lp(rng, n=6, m=8)
        Aeq = rng.normal(size=(2, 6))
        beq = Aeq @ x0
        lp = LinearProgram(c=c, A_ub=A, b_ub=b, A_eq=Aeq, b_eq=beq,
                           upper=np.full(6, 50.0))
        sol = solve_lp(lp)
        A2 = np.vstack([A, np.eye(6)])
        b2 = np.concatenate([b, np.full(6, 50.0)])
        status, x, obj = tableau_simplex(c, A_ub=A2, b_ub=b2, A_eq=Aeq, b_eq=beq)
        assert sol.status == OPTIMAL and status == "optimal"
        assert sol.objective == pytest.approx(obj, abs=1e-7)


def test_duality_gap_zero():
    rng = np.random.default_rng(3)
    for _ in range(20):
        A, b, c, _ = _random_lp(rng)
        lp = LinearProgram(c=c, A_ub=A, b_ub=b, upper=np.full(8, 20.0))
        sol = solve_lp(lp)
        assert sol.status == OPTIMAL
        dual = dual_objective(lp, sol)
        assert dual == pytest.approx(sol.objective, rel=1e-7, abs=1e-7)


def test_feasibility_and_complementarity_residuals():
    rng = np.random.default_rng(11)
    for _ in range(10):
        A, b, c, _ = _random_lp(rng)
        lp = LinearProgram(c=c, A_ub=A, b_ub=b, upper=np.full(8, 20.0))
        sol = solve_lp(lp)
        r = A @ sol.x - b
        assert np.max(r) <= 1e-8
        slack = b - A @ sol.x
        compl = np.abs(sol.duals * slack)
        assert np.max(compl) <= 1e-6


def test_basis_determinism():
    rng = np.random.default_rng(19)
    A, b, c, _ = _random_lp(rng)
    lp = LinearProgram(c=c, A_ub=A, b_ub=b, upper=np.full(8, 20.0))
    first = solve_lp(lp)
    for _ in range(3):
        again = solve_lp(lp)
        assert again.basis == first.basis
        assert again.at_upper == first.at_upper
        assert np.array_equal(again.x, first.x)


def test_degenerate_lp_terminates():
    # many redundant rows through the optimum
    lp = LinearProgram(c=[-1.0, -1.0],
                       A_ub=[[1.0, 1.0], [1.0, 1.0], [2.0, 2.0], [1.0, 0.0], [0.0, 1.0]],
                       b_ub=[1.0, 1.0, 2.0, 1.0, 1.0])
    sol = solve_lp(lp)
    assert sol.status == OPTIMAL
    assert sol.objective == pytest.approx(-1.0, abs=1e-9)


def test_basis_reproduces_solution():
    # reported basis back-substitutes to x*
    rng = np.random.default_rng(5)
    A, b, c, _ = _random_lp(rng, n=5, m=7)
    lp = LinearProgram(c=c, A_ub=A, b_ub=b, upper=np.full(5, 30.0))
    sol = solve_lp(lp)
    from flexgrid.lp import standard_form
    S, bs, cs, lo, up, n = standard_form(lp)
    basis = [j for j in sol.basis if j < S.shape[1]]
    assert len(basis) == S.shape[0]
    nonbasic = [j for j in range(S.shape[1]) if j not in set(basis)]
    vals = np.zeros(S.shape[1])
    for j in nonbasic:
        vals[j] = up[j] if j in set(sol.at_upper) else (lo[j] if np.isfinite(lo[j]) else 0.0)
    xb = np.linalg.solve(S[:, basis], bs - S[:, nonbasic] @ vals[nonbasic])
    vals[basis] = xb
    assert np.allclose(vals[:n], sol.x, atol=1e-7)


# ---------------------------------------------------------------------------
# polyhedra


def _unit_box():
    return Polyhedron(A=[[1, 0], [-1, 0], [0, 1], [0, -1]], b=[1, 0, 1, 0])


def test_is_feasible_inside():
    assert is_feasible(_unit_box(), [0.5, 0.5])


def test_is_feasible_outside_by_tolerance():
    assert not is_feasible(_unit_box(), [1 + 1e-6, 0.0])
    assert is_feasible(_unit_box(), [1 + 1e-10, 0.0])


def test_is_feasible_dimension_mismatch():
    with pytest.raises(ValueError):
        is_feasible(_unit_box(), [0.5])


def test_is_feasible_matches_coordinate_oracle():
    rng = np.random.default_rng(23)
    box = _unit_box()
    for _ in range(100):
        p = rng.uniform(-0.5, 1.5, size=2)
        expect = (0 <= p[0] <= 1) and (0 <= p[1] <= 1)
        got = is_feasible(box, p)
        if min(abs(p[0]), abs(p[0] - 1), abs(p[1]), abs(p[1] - 1)) > 1e-8:
            assert got == expect


def test_remove_dominated_row():
    poly = Polyhedron(A=[[1.0], [1.0], [-1.0]], b=[1.0, 2.0, 0.0])
    red = remove_redundant_rows(poly)
    assert red.n_rows == 2
    assert is_feasible(red, [1.0]) and is_feasible(red, [0.0])
    assert not is_feasible(red, [1.1])


def test_remove_duplicate_rows_square():
    A = [[1, 0], [1, 0], [-1, 0], [0, 1], [0, -1], [0, 1]]
    b = [1, 1, 0, 1, 1, 1]
    red = remove_redundant_rows(Polyhedron(A, b))
    assert red.n_rows == 4


def test_remove_redundant_preserves_point_set():
    rng = np.random.default_rng(31)
    for _ in range(5):
        m = 12
        angles = rng.uniform(0, 2 * np.pi, size=m)
        A = np.column_stack([np.cos(angles), np.sin(angles)])
        b = rng.uniform(0.5, 2.0, size=m)
        poly = Polyhedron(A, b)
        red = remove_redundant_rows(poly)
        pts = rng.uniform(-3, 3, size=(100_000, 2))
        f_in = membership_fraction(poly.A, poly.b, pts)
        f_red = membership_fraction(red.A, red.b, pts)
        agree = np.mean(
            np.all(pts @ poly.A.T <= poly.b + 1e-9, axis=1)
            == np.all(pts @ red.A.T <= red.b + 1e-9, axis=1)
        )
        assert agree >= 0.999
        assert f_red == pytest.approx(f_in, abs=1e-3)


def test_remove_redundant_idempotent():
    rng = np.random.default_rng(37)
    angles = rng.uniform(0, 2 * np.pi, size=10)
    A = np.column_stack([np.cos(angles), np.sin(angles)])
    b = rng.uniform(0.5, 2.0, size=10)
    once = remove_redundant_rows(Polyhedron(A, b))
    twice = remove_redundant_rows(once)
    assert np.allclose(once.A, twice.A)
    assert np.allclose(once.b, twice.b)


def test_remove_redundant_empty_raises():
    poly = Polyhedron(A=[[1.0], [-1.0]], b=[-1.0, -1.0])
    with pytest.raises(EmptyPolyhedronError):
        remove_redundant_rows(poly)


def test_vertices_unit_square():
    verts = vertices_2d(_unit_box())
    assert len(verts) == 4
    assert polygon_area(verts) == pytest.approx(1.0, abs=1e-9)


def test_vertices_cone_triangle():
    # p >= 0, q <= p/3, q >= -p/3, p <= 3
    poly = Polyhedron(A=[[-1.0, 0.0], [-1 / 3, 1.0], [-1 / 3, -1.0], [1.0, 0.0]],
                      b=[0.0, 0.0, 0.0, 3.0])
    verts = vertices_2d(poly)
    expected = {(0.0, 0.0), (3.0, 1.0), (3.0, -1.0)}
    got = {(round(v[0], 7), round(v[1], 7)) for v in verts}
    assert got == expected


def test_vertices_match_pairwise_oracle():
    rng = np.random.default_rng(41)
    for _ in range(10):
        m = 8
        angles = rng.uniform(0, 2 * np.pi, size=m)
        A = np.column_stack([np.cos(angles), np.sin(angles)])
        b = rng.uniform(0.5, 2.0, size=m)
        # ensure boundedness by adding a box
        A = np.vstack([A, [[1, 0], [-1, 0], [0, 1], [0, -1]]])
        b = np.concatenate([b, [5, 5, 5, 5]])
        verts = vertices_2d(Polyhedron(A, b))
        oracle = vertices_by_pairwise_intersection(A, b)
        assert len(verts) == len(oracle)
        for v in verts:
            assert any(np.linalg.norm(v - o) < 1e-6 for o in oracle)


def test_vertices_unbounded_raises():
    poly = Polyhedron(A=[[1.0, 0.0]], b=[1.0])
    with pytest.raises(UnboundedRegionError):
        vertices_2d(poly)


def test_chebyshev_center_box():
    c, r = chebyshev_center(_unit_box())
    assert r == pytest.approx(0.5, abs=1e-7)
    assert np.allclose(c, [0.5, 0.5], atol=1e-6)


def test_hull_roundtrip():
    rng = np.random.default_rng(43)
    pts = rng.uniform(-1, 1, size=(30, 2))
    hull = convex_hull_2d(pts)
    poly = halfspaces_from_vertices(hull)
    for p in pts:
        assert is_feasible(poly, p, tol=1e-7)
    verts = vertices_2d(poly)
    assert len(verts) == len(hull)


def test_canonical_sorted_and_normalized():
    poly = Polyhedron(A=[[0, 2], [3, 0]], b=[2, 6])
    cano = poly.canonical()
    assert np.allclose(np.linalg.norm(cano.A, axis=1), 1.0)
    assert cano.A[0, 0] <= cano.A[1, 0]
