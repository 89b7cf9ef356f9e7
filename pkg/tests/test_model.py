import numpy as np
import pytest

from src.errors import DimensionMismatchError, IndexOutOfGridError, InfeasibleCredalSetError, QueryOutsideBodyError
from src.geometry import Ball, Segment, SimplexOfLabels
from src.model import (
    HypothesisFamily,
    OutcomeSpace,
    RewardSpec,
    argmax_lowest,
    convexify_reward,
    f_matrix,
    game_value,
    lower_prevision,
    optimal_arm,
    prevision_table,
    response_value,
    table_optimal_arms,
    upper_prevision,
    validate_family,
)
from src.scenarios import zerosum_scenario


@pytest.fixture
def simplex_family():
    """Three labels, one constraint y0 = theta * (y0 + y1), two arms."""
    space = OutcomeSpace(SimplexOfLabels("abc"))
    tensor = np.zeros((2, 1, 2, 3))
    # theta = (p, 1): F = [1 - p, -p, 0]
    tensor[:, 0, 0, :] = [-1.0, -1.0, 0.0]
    tensor[:, 0, 1, :] = [1.0, 0.0, 0.0]
    fam = HypothesisFamily(np.eye(2), np.array([[0.25, 1.0], [0.75, 1.0]]), tensor)
    reward = RewardSpec(np.array([[1.0, 0.0, 0.0], [0.0, 0.0, 0.5]]), np.zeros(2))
    return space, fam, reward


class TestFamily:
    def test_dimensions(self, simplex_family):
        _, fam, _ = simplex_family
        assert (fam.n_arms, fam.n_hypotheses, fam.dim_w, fam.dim_z, fam.dim_y) == (2, 2, 1, 2, 3)

    def test_f_matrix(self, simplex_family):
        _, fam, _ = simplex_family
        np.testing.assert_allclose(f_matrix(fam, 0, 0), [[0.75, -0.25, 0.0]])

    def test_index_checks(self, simplex_family):
        _, fam, _ = simplex_family
        with pytest.raises(IndexOutOfGridError):
            f_matrix(fam, 5, 0)
        with pytest.raises(DimensionMismatchError):
            fam.theta([1.0, 2.0, 3.0])

    def test_validation_passes(self, simplex_family):
        space, fam, _ = simplex_family
        report = validate_family(fam, space)
        assert report.passed
        assert len(report.cells) == 4

    def test_zero_tensor_fails_rank(self, simplex_family):
        space, fam, _ = simplex_family
        broken = HypothesisFamily(fam.arms, fam.hypotheses, np.zeros_like(fam.tensors))
        report = validate_family(broken, space)
        assert not report.passed
        assert all(not c.surjective for c in report.failures)

    def test_empty_hypothesis_grid_rejected(self, simplex_family):
        space, fam, _ = simplex_family
        empty = HypothesisFamily(fam.arms, np.zeros((0, 2)), fam.tensors)
        assert "hypothesis grid is empty" in validate_family(empty, space).issues


class TestPrevisions:
    def test_lower_and_upper(self, simplex_family):
        space, fam, reward = simplex_family
        # arm 0 rewards label a; K = {y0 = p (y0 + y1)}, so y0 ranges over [0, p]
        assert lower_prevision(fam, reward, space, 0, 0) == pytest.approx(0.0, abs=1e-9)
        assert upper_prevision(fam, reward, space, 0, 0) == pytest.approx(0.25)
        assert upper_prevision(fam, reward, space, 0, 1) == pytest.approx(0.75)

    def test_table_and_optimal_arm(self, simplex_family):
        space, fam, reward = simplex_family
        table = prevision_table(fam, reward, space)
        assert table.shape == (2, 2)
        arm, value = optimal_arm(fam, reward, space, 1, table)
        assert value == pytest.approx(table[:, 1].max())
        arms, values = table_optimal_arms(table)
        assert arms[1] == arm
        assert values[1] == pytest.approx(value)

    def test_ties_go_to_lowest_index(self):
        assert argmax_lowest([0.2, 0.5, 0.5]) == 1

    def test_infeasible_section(self):
        space = OutcomeSpace(Segment([1.0, -1.0], [1.0, 1.0]))
        # y1 = 2 y0 is outside the segment
        tensor = np.zeros((1, 1, 1, 2))
        tensor[0, 0, 0] = [-2.0, 1.0]
        fam = HypothesisFamily(np.eye(1), np.ones((1, 1)), tensor)
        reward = RewardSpec(np.zeros((1, 2)), np.zeros(1))
        with pytest.raises(InfeasibleCredalSetError):
            lower_prevision(fam, reward, space, 0, 0)

    def test_ball_prevision_closed_form(self):
        space = OutcomeSpace(Ball(2))
        # constraint u0 = 0: the section is the segment {(0, t, 1)}
        tensor = np.zeros((1, 1, 1, 3))
        tensor[0, 0, 0] = [1.0, 0.0, 0.0]
        fam = HypothesisFamily(np.eye(1), np.ones((1, 1)), tensor)
        reward = RewardSpec(np.array([[0.0, 1.0, 0.0]]), np.zeros(1))
        assert lower_prevision(fam, reward, space, 0, 0) == pytest.approx(-1.0)


class TestReward:
    def test_value_and_width(self):
        space = OutcomeSpace(SimplexOfLabels("ab"))
        reward = RewardSpec.shared([1.0, -1.0], 0.0, 3)
        assert reward.n_arms == 3
        assert reward.value(2, [0.25, 0.75]) == pytest.approx(-0.5)
        assert reward.range_width(space) == pytest.approx(2.0)

    def test_lipschitz_on_simplex(self):
        space = OutcomeSpace(SimplexOfLabels("abc"))
        reward = RewardSpec.shared([1.0, 0.0, -1.0], 0.0, 1)
        assert reward.lipschitz_constant(space, 0) == pytest.approx(1.0, abs=1e-6)
        assert reward.check_lipschitz(space)

    def test_convexified_reward(self):
        space = OutcomeSpace(SimplexOfLabels("abc"))
        convex = convexify_reward(space, [[0.0, 1.0, 2.0]])
        assert convex(0, [0.5, 0.0, 0.5]) == pytest.approx(1.0)
        with pytest.raises(QueryOutsideBodyError):
            convex(0, [1.5, -0.5, 0.0])


class TestGames:
    def test_matching_pennies(self):
        value, strategy = game_value([[1.0, -1.0], [-1.0, 1.0]])
        assert value == pytest.approx(0.0, abs=1e-9)
        np.testing.assert_allclose(strategy, [0.5, 0.5], atol=1e-9)

    def test_dominant_row(self):
        value, strategy = game_value([[0.5, 0.3], [0.1, 0.2]])
        assert value == pytest.approx(0.3)
        np.testing.assert_allclose(strategy, [1.0, 0.0], atol=1e-9)

    def test_zerosum_previsions_are_pure_response_values(self, rng):
        for _ in range(20):
            payoff = rng.uniform(-1.0, 1.0, size=(2, 3))
            scenario = zerosum_scenario([payoff], x_grid=3)
            for x in range(scenario.n_arms):
                expected = response_value(payoff, scenario.family.arms[x])
                assert scenario.table[x, 0] == pytest.approx(expected, abs=1e-8)
