import numpy as np
import pytest
import scipy.optimize
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from src.errors import DimensionMismatchError, InconsistentSystemError
from src.numkit import (
    LPBuilder,
    LPProblem,
    LPStatus,
    chebyshev_residual,
    get_tolerance,
    kernel_basis,
    least_squares_min_norm,
    lp_solve,
    make_rng,
    rank,
    set_tolerances,
    spawn_seeds,
    subgradient_minimize,
    tolerances,
)

small_floats = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False, allow_infinity=False)


class TestTolerances:
    def test_defaults(self):
        assert get_tolerance("tol_feas") == 1e-9
        assert get_tolerance("rank_eps") == 1e-10

    def test_unknown_name_rejected(self):
        with pytest.raises(KeyError):
            set_tolerances(tol_missing=1.0)

    def test_non_positive_rejected(self):
        with pytest.raises(ValueError):
            set_tolerances(tol_feas=0.0)

    def test_context_restores(self):
        with tolerances(tol_feas=1e-3):
            assert get_tolerance("tol_feas") == 1e-3
        assert get_tolerance("tol_feas") == 1e-9


class TestLinalg:
    def test_rank_of_known_matrices(self):
        assert rank(np.eye(3)) == 3
        assert rank([[1.0, 2.0], [2.0, 4.0]]) == 1
        assert rank(np.zeros((2, 3))) == 0

    @given(arrays(float, (3, 5), elements=small_floats))
    @settings(max_examples=50, deadline=None)
    def test_kernel_basis_is_orthonormal_null_space(self, m):
        basis = kernel_basis(m)
        assert basis.shape == (5, 5 - rank(m))
        np.testing.assert_allclose(m @ basis, 0.0, atol=1e-8)
        np.testing.assert_allclose(basis.T @ basis, np.eye(basis.shape[1]), atol=1e-10)

    def test_min_norm_solution(self):
        y = least_squares_min_norm([[1.0, 1.0]], [2.0])
        np.testing.assert_allclose(y, [1.0, 1.0])

    def test_inconsistent_system(self):
        with pytest.raises(InconsistentSystemError):
            least_squares_min_norm([[1.0, 0.0], [1.0, 0.0]], [0.0, 1.0])

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            least_squares_min_norm(np.eye(2), [1.0, 2.0, 3.0])


class TestSimplexLP:
    def test_textbook_problem(self):
        # max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18
        sol = lp_solve(
            LPProblem([3.0, 5.0], a_ub=[[1, 0], [0, 2], [3, 2]], b_ub=[4, 12, 18], maximize=True)
        )
        assert sol.optimal
        assert sol.value == pytest.approx(36.0)
        np.testing.assert_allclose(sol.point, [2.0, 6.0], atol=1e-9)

    def test_infeasible(self):
        sol = lp_solve(LPProblem([1.0], a_eq=[[1.0]], b_eq=[-1.0]))
        assert sol.status is LPStatus.INFEASIBLE
        assert sol.value == np.inf

    def test_unbounded(self):
        sol = lp_solve(LPProblem([-1.0]))
        assert sol.status is LPStatus.UNBOUNDED

    def test_free_variables(self):
        sol = lp_solve(LPProblem([1.0], a_ub=[[-1.0]], b_ub=[3.0], lower=[-np.inf]))
        assert sol.value == pytest.approx(-3.0)

    @given(
        arrays(float, (3, 4), elements=st.floats(0.1, 3.0)),
        arrays(float, 4, elements=small_floats),
    )
    @settings(max_examples=40, deadline=None)
    def test_matches_scipy_on_bounded_problems(self, a, c):
        b = np.ones(3)
        ours = lp_solve(LPProblem(c, a_ub=a, b_ub=b))
        ref = scipy.optimize.linprog(c, A_ub=a, b_ub=b, bounds=[(0, None)] * 4, method="highs")
        assert ours.optimal
        assert ours.value == pytest.approx(ref.fun, abs=1e-7)

    def test_builder_splits_blocks(self):
        lp = LPBuilder()
        lp.add_variables("y", 3)
        lp.add_variables("t", 1, lower=-np.inf)
        lp.add_eq({"y": np.ones((1, 3))}, [1.0])
        lp.add_ub({"y": -np.eye(3), "t": np.ones((3, 1))}, np.zeros(3))
        lp.set_objective({"t": [1.0]}, maximize=True)
        solution, parts = lp.solve()
        assert solution.optimal
        assert parts["t"][0] == pytest.approx(1.0 / 3.0)
        np.testing.assert_allclose(parts["y"], np.full(3, 1.0 / 3.0), atol=1e-9)


class TestChebyshev:
    def test_zero_when_in_range(self):
        assert chebyshev_residual([1.0, 2.0], np.eye(2)) == pytest.approx(0.0, abs=1e-9)

    def test_constant_fit(self):
        # best constant approximation of (0, 2) in sup norm is 1
        assert chebyshev_residual([0.0, 2.0], np.ones((2, 1))) == pytest.approx(1.0)


def test_subgradient_finds_minimum_of_abs():
    point, value = subgradient_minimize(lambda x: (abs(x[0] - 1.0), np.sign(x - 1.0)), np.zeros(1))
    assert value < 1e-3
    assert point[0] == pytest.approx(1.0, abs=1e-3)


class TestRng:
    def test_same_seed_same_stream(self):
        assert np.array_equal(make_rng(7).random(5), make_rng(7).random(5))

    def test_children_are_independent(self):
        a, b = spawn_seeds(7, 2)
        assert not np.array_equal(make_rng(a).random(5), make_rng(b).random(5))
        assert make_rng(a).bit_generator.__class__.__name__ == "Philox"
