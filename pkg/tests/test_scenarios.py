import json

import numpy as np
import pytest

from src.errors import ConfigError
from src.scenarios import (
    SCENARIO_BUILDERS,
    build_scenario,
    check_known_values,
    checks_to_dict,
    evaluate_quantity,
    finite_stochastic,
    hyperplane_scenario,
    linear_bandit,
    load_scenario,
    outcome_labels,
    payoff_of,
    save_scenario,
    scenario_from_document,
    simplex_grid,
    square_isometry_maps,
    traffic_abcde,
    zerosum_theta,
)

CHEAP_BUILDERS = [
    "finite_stochastic",
    "dhk_torus",
    "moment",
    "rot_triangle",
    "square_isometries",
    "zerosum",
    "pcb_desk",
    "lower_r",
]


@pytest.mark.parametrize("name", CHEAP_BUILDERS)
def test_known_values_reproduce(name):
    scenario = build_scenario(name)
    checks = check_known_values(scenario)
    assert checks
    failed = [c.quantity for c in checks if not c.passed]
    assert failed == []
    assert all(set(row) >= {"quantity", "expected", "computed", "passed"} for row in checks_to_dict(checks))


@pytest.mark.parametrize("name", CHEAP_BUILDERS)
def test_builders_validate(name):
    assert build_scenario(name).validate().passed


@pytest.mark.parametrize(
    "params", [{"D": 2, "arm_res": 6, "h_res": 4}, {"D": 4, "alpha": 0.1, "arm_res": 4, "h_res": 4}]
)
def test_cone_known_values_reproduce(params):
    scenario = build_scenario("lower_s", **params)
    assert scenario.validate().passed
    failed = [c.quantity for c in check_known_values(scenario) if not c.passed]
    assert failed == []


class TestRegistry:
    def test_every_builder_has_a_name(self):
        assert {"pcb_desk", "zerosum", "lower_s", "lower_r", "traffic_abcde"} <= set(SCENARIO_BUILDERS)

    def test_unknown_builder(self):
        with pytest.raises(ConfigError):
            build_scenario("roulette")

    def test_bad_parameters(self):
        with pytest.raises(ConfigError):
            build_scenario("dhk_torus", radius=3)

    def test_builder_is_recorded(self):
        scenario = build_scenario("dhk_torus", arm_res=4, h_res=4)
        assert scenario.meta["builder"] == {"name": "dhk_torus", "params": {"n": 1, "arm_res": 4, "h_res": 4}}

    def test_builder_reference_document(self):
        scenario = scenario_from_document({"builder": "finite_stochastic", "params": {"means": [0.1, 0.3]}})
        assert scenario.n_arms == 2
        with pytest.raises(ConfigError):
            scenario_from_document({"builder": "finite_stochastic", "seed": 1})

    def test_malformed_document(self):
        with pytest.raises(ConfigError):
            scenario_from_document({"name": "half"})
        with pytest.raises(ConfigError):
            scenario_from_document([1, 2])

    def test_saved_scenario_keeps_its_table(self, desk_pcb, tmp_path):
        path = save_scenario(desk_pcb, tmp_path / "desk.json")
        loaded = load_scenario(path)
        assert loaded.name == desk_pcb.name
        np.testing.assert_allclose(loaded.table, desk_pcb.table, atol=1e-12)
        assert json.loads(path.read_text())["meta"]["known_values"]

    def test_load_errors(self, tmp_path):
        with pytest.raises(ConfigError):
            load_scenario(tmp_path / "missing.json")
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ConfigError):
            load_scenario(bad)

    def test_unknown_quantity(self, desk_stochastic):
        with pytest.raises(KeyError):
            evaluate_quantity(desk_stochastic, "entropy")


class TestBuilders:
    def test_stochastic_ranges(self):
        with pytest.raises(ValueError):
            finite_stochastic([0.5, 1.5])
        with pytest.raises(ValueError):
            finite_stochastic([0.5, 0.1], hypotheses=[[0.5, 0.1, 0.0]])

    def test_stochastic_table_is_the_means(self, desk_stochastic):
        # point-valued sections: the lower prevision is the mean itself
        np.testing.assert_allclose(desk_stochastic.table[:, 0], [0.5, 0.2, -0.1, -0.4], atol=1e-9)
        assert desk_stochastic.optimal(1) == (1, pytest.approx(0.5))

    def test_linear_bandit_rejects_large_products(self):
        with pytest.raises(ValueError):
            linear_bandit([[1.0, 0.0]], [[2.0, 0.0]])

    def test_hyperplane_arms_meet_the_ball(self):
        scenario = hyperplane_scenario(seed=4)
        assert scenario.validate().passed
        with pytest.raises(ValueError):
            hyperplane_scenario(arms=np.zeros((1, 3, 3)))

    def test_traffic_reward_is_rescaled(self):
        scenario = traffic_abcde()
        scale = scenario.meta["reward_scale"]
        assert scale >= 1.0
        lipschitz = 0.5 * np.abs(scenario.reward.coef).sum(axis=1)
        assert np.max(lipschitz) <= 1.0 + 1e-12

    def test_zerosum_payoff_encoding(self, desk_zerosum):
        for h, payoff in enumerate(desk_zerosum.meta["payoffs"]):
            np.testing.assert_allclose(payoff_of(desk_zerosum, h), payoff)
        theta = zerosum_theta([[1.0, -1.0], [-1.0, 1.0]])
        assert theta[:2].tolist() == [1.0, 1.0]
        assert theta[2:4].tolist() == [0.0, 1.0]

    def test_labels_and_grids(self):
        assert outcome_labels([2, 2]) == [(0, 0), (0, 1), (1, 0), (1, 1)]
        grid = simplex_grid(2, 4)
        assert grid.shape == (5, 2)
        np.testing.assert_allclose(grid.sum(axis=1), 1.0)

    def test_square_symmetries_preserve_the_square(self):
        corners = np.array([[0, 0, 1], [1, 0, 1], [0, 1, 1], [1, 1, 1]], dtype=float)
        for m in square_isometry_maps():
            image = corners @ m.T
            assert sorted(map(tuple, np.round(image, 12))) == sorted(map(tuple, corners[:, :2]))
