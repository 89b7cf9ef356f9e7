import math

import numpy as np
import pytest

from src.errors import ConfigError, IncompatibleMeanError, PolicyProtocolError
from src.model import f_matrix
from src.nature import (
    FixedMeanNature,
    GreedyAdversary,
    LowerRAdversary,
    LowerRParams,
    LowerSAdversary,
    LowerSParams,
    NaturePolicy,
    compatibility_audit,
    make_nature,
    point_mean_map,
    zerosum_mean_map,
)
from src.scenarios import lower_r_scenario, lower_s_scenario


class StuckNature(NaturePolicy):
    """Always answers with the first body vertex, compatible or not."""

    name = "stuck"

    def _respond(self, x: int) -> np.ndarray:
        return self.scenario.space.body.vertices[0].copy()


@pytest.fixture(scope="module")
def cone():
    return lower_s_scenario(D=2, alpha=0.25, arm_res=8, h_res=4)


@pytest.fixture(scope="module")
def disk():
    return lower_r_scenario(lam=4.0)


class TestContract:
    def test_respond_before_reset(self):
        with pytest.raises(PolicyProtocolError):
            GreedyAdversary().respond(0)

    def test_factory(self):
        assert isinstance(make_nature("lower_s", {"delta": 0.1}), LowerSAdversary)
        with pytest.raises(ConfigError):
            make_nature("oracle")
        with pytest.raises(ConfigError):
            make_nature("greedy", {"speed": 2})


class TestGeneric:
    def test_greedy_on_point_sections(self, desk_stochastic):
        nature = GreedyAdversary()
        nature.reset(desk_stochastic, theta=0, seed=0)
        assert np.allclose(nature.respond(1), [1.0, 0.2])
        assert np.allclose(nature.respond(3), [1.0, -0.4])

    def test_fixed_mean_defaults_to_point_map(self, desk_stochastic):
        nature = FixedMeanNature()
        nature.reset(desk_stochastic, theta=1, seed=0)
        expected = point_mean_map(desk_stochastic, 1)
        for x in range(desk_stochastic.n_arms):
            assert np.allclose(nature.respond(x), expected[x])

    def test_incompatible_mean(self, desk_stochastic):
        means = np.tile([1.0, 0.9], (desk_stochastic.n_arms, 1))
        with pytest.raises(IncompatibleMeanError):
            FixedMeanNature(means).reset(desk_stochastic, theta=0, seed=0)

    def test_greedy_samples_vertices_on_simplex(self, desk_pcb):
        nature = GreedyAdversary()
        nature.reset(desk_pcb, theta=0, seed=5)
        y = nature.respond(0)
        assert sorted(y.tolist()) == [0.0] * (y.size - 1) + [1.0]


class TestAudit:
    def test_greedy_passes(self, desk_pcb):
        report = compatibility_audit(GreedyAdversary(), desk_pcb, theta=1, rounds=500, seed=2)
        assert report.passed
        assert len(report.arms) == desk_pcb.n_arms
        assert report.to_dict()["passed"] is True

    def test_zerosum_mixture_passes(self, matching_pennies):
        means = zerosum_mean_map(matching_pennies, 0, [0.3, 0.7])
        report = compatibility_audit(FixedMeanNature(means), matching_pennies, theta=0, rounds=2000, seed=4)
        assert report.passed

    def test_stuck_nature_fails(self, desk_stochastic):
        report = compatibility_audit(StuckNature(), desk_stochastic, theta=0, rounds=50)
        assert not report.passed
        assert report.arms[0].residual > report.arms[0].threshold


class TestLowerS:
    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            LowerSParams(alpha=0.3, delta=0.1)
        with pytest.raises(ValueError):
            LowerSParams(alpha=0.1, delta=0.5)

    def test_bernoulli_probability_bound(self, cone):
        alpha = cone.meta["alpha"]
        nature = LowerSAdversary(delta=0.25)
        nature.reset(cone, theta=0, seed=0)
        floor = (1.0 - alpha) / (1.0 + 2.0 * alpha)
        assert all(nature.p_delta(x) > floor for x in range(cone.n_arms))

    def test_outcomes_are_compatible(self, cone):
        nature = LowerSAdversary(delta=0.25)
        nature.reset(cone, theta=0, seed=0)
        for x in range(cone.n_arms):
            f = f_matrix(cone.family, x, 0)
            p = nature.p_delta(x)
            mixture = p * nature.y_delta(x) + (1.0 - p) * nature.y_perp()
            assert np.allclose(f @ mixture, 0.0, atol=1e-12)
            assert np.allclose(f @ nature.y_zero(x), 0.0, atol=1e-12)
            assert cone.space.body.contains(nature.y_zero(x), tol=1e-9)

    def test_leaves_mode_at_opposite_arm(self, cone):
        nature = LowerSAdversary(delta=0.25)
        nature.reset(cone, theta=0, seed=0)
        # arm 0 is -u* for hypothesis 0
        assert np.allclose(nature.respond(0), nature.y_zero(0))
        assert not nature.bernoulli

    def test_audit(self, cone):
        best = int(np.argmax(cone.family.arms @ -cone.family.arms[0]))
        report = compatibility_audit(LowerSAdversary(), cone, theta=0, rounds=100, reps=100, arms=[0, best])
        assert report.passed


class TestLowerR:
    def test_parameter_ranges(self):
        with pytest.raises(ValueError):
            LowerRParams(lam=4.0, alpha=1.0, psi=0.5, delta=0.5)
        floor = LowerRParams.min_delta(4.0, 7 * math.pi / 16, 1.2)
        with pytest.raises(ValueError):
            LowerRParams(lam=4.0, alpha=7 * math.pi / 16, psi=1.2, delta=0.5 * floor)

    def test_default_delta_admits_bernoulli_arms(self, disk):
        nature = LowerRAdversary()
        nature.reset(disk, theta=0, seed=0)
        products = np.abs(disk.family.arms @ disk.family.theta(0))
        assert np.any(products > nature.params.delta)

    def test_in_mode_reward(self, disk):
        nature = LowerRAdversary()
        nature.reset(disk, theta=0, seed=3)
        theta = disk.family.theta(0)
        x = int(np.argmax(np.abs(disk.family.arms @ theta)))
        psi = nature.params.psi
        for _ in range(50):
            y = nature.respond(x)
            assert disk.reward.value(x, y) == pytest.approx(-math.cos(psi))
        assert nature.bernoulli

    def test_in_mode_mean_is_on_the_credal_line(self, disk):
        nature = LowerRAdversary()
        nature.reset(disk, theta=0, seed=0)
        theta = disk.family.theta(0)
        for x in np.flatnonzero(np.abs(disk.family.arms @ theta) > nature.params.delta):
            p = nature.p_plus(int(x))
            assert 0.0 <= p <= 1.0
            mean = p * nature.y_pm(1.0) + (1.0 - p) * nature.y_pm(-1.0)
            assert np.allclose(f_matrix(disk.family, int(x), 0) @ mean, 0.0, atol=1e-12)

    def test_boundary_outcome_after_switch(self, disk):
        nature = LowerRAdversary()
        nature.reset(disk, theta=0, seed=0)
        theta = disk.family.theta(0)
        x = int(np.argmin(np.abs(disk.family.arms @ theta)))
        y = nature.respond(x)
        assert not nature.bernoulli
        assert np.allclose(y, nature.y_boundary(x))
        assert y[0] >= 0.0
        assert np.allclose(f_matrix(disk.family, x, 0) @ y, 0.0, atol=1e-12)

    def test_audit(self, disk):
        report = compatibility_audit(LowerRAdversary(), disk, theta=0, rounds=2000, seed=1)
        assert report.passed
