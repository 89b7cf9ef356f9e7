import math

import numpy as np
import pytest

from src.agents import (
    ConfidenceBallAgent,
    FixedArmAgent,
    GameUCBAgent,
    IUCBAgent,
    OptimalArmAgent,
    UCBAgent,
    confidence_radius,
    dz_distance,
    ellipsoid_max,
    make_agent,
    max_det_basis,
    optimistic_hypothesis,
    outcome_label,
)
from src.certificates import bound_simplex, compute_certificates, family_dims
from src.errors import (
    ConfigError,
    EmptyConfidenceSetError,
    OutcomeOutsideBodyError,
    PolicyProtocolError,
    SingularMatrixError,
)
from src.model import game_value
from src.nature import FixedMeanNature, GreedyAdversary, zerosum_mean_map
from src.scenarios import payoff_of, zerosum_scenario
from src.sim import EpisodeSpec, monte_carlo, regret_trace, run_episode


class TestProtocol:
    def test_select_before_reset(self):
        with pytest.raises(PolicyProtocolError):
            FixedArmAgent(0).select_arm()

    def test_select_twice(self, desk_stochastic):
        agent = FixedArmAgent(1)
        agent.reset(desk_stochastic, horizon=10, seed=0)
        assert agent.select_arm() == 1
        with pytest.raises(PolicyProtocolError):
            agent.select_arm()

    def test_observe_without_select(self, desk_stochastic):
        agent = FixedArmAgent(1)
        agent.reset(desk_stochastic, horizon=10, seed=0)
        with pytest.raises(PolicyProtocolError):
            agent.observe([1.0, 0.0])

    def test_reset_clears_pending_arm(self, desk_stochastic):
        agent = FixedArmAgent(2)
        agent.reset(desk_stochastic, horizon=10, seed=0)
        agent.select_arm()
        agent.reset(desk_stochastic, horizon=10, seed=0)
        assert agent.select_arm() == 2


class TestFactory:
    def test_unknown_kind(self):
        with pytest.raises(ConfigError):
            make_agent("thompson")

    def test_bad_parameters(self):
        with pytest.raises(ConfigError):
            make_agent("fixed", {"arm": 0, "colour": "red"})

    def test_builds_with_parameters(self):
        agent = make_agent("iucb", {"eta": 0.5, "strict": True})
        assert isinstance(agent, IUCBAgent)
        assert agent.eta_param == 0.5


class TestBaselines:
    def test_optimal_arm(self, desk_stochastic):
        agent = OptimalArmAgent(theta=1)
        agent.reset(desk_stochastic, horizon=5, seed=0)
        # hypothesis 1 is the means rolled by one place
        assert agent.select_arm() == 1

    def test_ucb_explores_then_exploits(self, desk_stochastic):
        agent = UCBAgent()
        agent.reset(desk_stochastic, horizon=100, seed=0)
        rewards = [1.0, -1.0, -1.0, -1.0]
        for k, t in enumerate(rewards):
            assert agent.select_arm() == k
            agent.observe([1.0, t])
        assert agent.select_arm() == 0
        assert agent.indices()[0] == pytest.approx(1.0 + 2.0 * math.sqrt(math.log(100)))

    @pytest.mark.slow
    def test_ucb_regret_below_finite_arm_bound(self, desk_stochastic):
        horizon, n_arms = 1000, desk_stochastic.n_arms
        spec = EpisodeSpec(desk_stochastic, "ucb", "fixed_mean", 0, horizon, nature_params={"sample_vertices": True})
        summary = monte_carlo(spec, reps=100, seed=0)
        assert summary.failures == 0
        bound = 8.0 * math.sqrt(n_arms * horizon * math.log(horizon)) + 3.0 * n_arms
        assert summary.mean_regret[-1] <= bound

    def test_max_det_basis(self):
        arms = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
        assert sorted(max_det_basis(arms).tolist()) == [0, 1]

    def test_max_det_basis_rank_deficient(self):
        with pytest.raises(SingularMatrixError):
            max_det_basis(np.array([[1.0, 0.0], [2.0, 0.0]]))

    def test_confidence_radius_first_round(self):
        assert confidence_radius(2, 1, 10) == pytest.approx((8.0 / 3.0 * math.log(10)) ** 2)

    def test_ellipsoid_max(self):
        assert ellipsoid_max([1.0, 0.0], np.array([0.5, 0.0]), np.eye(2), 4.0) == pytest.approx(2.5)

    def test_confidence_ball_runs(self, desk_stochastic):
        trace = run_episode(ConfidenceBallAgent(), GreedyAdversary(), desk_stochastic, 0, 30, seed=3)
        assert len(trace) == 30
        assert all(0 <= a < desk_stochastic.n_arms for a in trace.arms)


class TestIUCB:
    def test_optimistic_hypothesis(self):
        table = np.array([[0.1, 0.9], [0.5, 0.2]])
        assert optimistic_hypothesis([0, 1], table) == (1, 0, pytest.approx(0.9))
        assert optimistic_hypothesis([0], table) == (0, 1, pytest.approx(0.5))

    def test_optimistic_tie_goes_to_lowest_index(self):
        table = np.array([[0.5, 0.5]])
        assert optimistic_hypothesis([1, 0], table)[0] == 0

    def test_empty_candidates(self):
        with pytest.raises(EmptyConfidenceSetError):
            optimistic_hypothesis([], np.zeros((2, 2)))

    def test_true_hypothesis_is_consistent(self, desk_stochastic):
        zb = desk_stochastic.zbar
        for x in range(desk_stochastic.n_arms):
            ybar = np.array([1.0, desk_stochastic.family.hypotheses[2][x]])
            assert dz_distance(zb, 2, x, ybar) == pytest.approx(0.0, abs=1e-7)

    def test_retains_true_hypothesis(self, desk_stochastic):
        agent = IUCBAgent(eta=0.05)
        trace = run_episode(agent, GreedyAdversary(), desk_stochastic, theta=2, horizon=200, seed=1)
        assert 2 in agent.confidence
        assert not agent.eliminated
        assert agent.cycle >= 1
        # means rolled by two places put the best mean on arm 2
        assert trace.arms[-1] == 2

    def test_default_eta_is_positive(self, desk_stochastic):
        agent = IUCBAgent()
        agent.reset(desk_stochastic, horizon=100, seed=0)
        assert agent.eta > 0.0
        assert agent.threshold == pytest.approx(2.0 * (desk_stochastic.family.dim_z + 1) * agent.eta)

    def test_outcome_outside_body(self, desk_stochastic):
        agent = IUCBAgent(eta=1.0)
        agent.reset(desk_stochastic, horizon=10, seed=0)
        agent.select_arm()
        with pytest.raises(OutcomeOutsideBodyError):
            agent.observe([1.0, 5.0])

    @pytest.mark.slow
    @pytest.mark.parametrize("fixture", ["desk_stochastic", "desk_pcb", "desk_zerosum"])
    def test_cycles_shrink_the_confidence_set(self, fixture, request):
        scenario = request.getfixturevalue(fixture)
        ratio = 1.0 / (2.0 * (scenario.family.dim_z + 1))
        cycles = 0
        for seed in range(5):
            agent = IUCBAgent(eta=0.05)
            run_episode(agent, GreedyAdversary(), scenario, seed % scenario.n_hypotheses, 200, seed=seed)
            for before, after in zip(agent.history, agent.history[1:]):
                assert set(after) <= set(before)
            for _, rho, kept in agent.cycle_log:
                assert kept <= ratio * rho + 1e-12
            cycles += agent.cycle
        assert cycles >= 1

    @pytest.mark.slow
    def test_recommended_eta_keeps_truth_under_simplex_bound(self, desk_pcb):
        horizon = 500
        cert = compute_certificates(desk_pcb.family, desk_pcb.space, desk_pcb.reward)
        dims = family_dims(desk_pcb.family, desk_pcb.space)
        kept, runs, cycles = 0, 0, []
        for theta in range(desk_pcb.n_hypotheses):
            finals = []
            for seed in range(2):
                agent = IUCBAgent()
                trace = run_episode(agent, GreedyAdversary(), desk_pcb, theta, horizon, seed=seed)
                finals.append(regret_trace(trace, desk_pcb).final)
                kept += theta in agent.confidence
                runs += 1
                cycles.append(agent.cycle)
            bound = bound_simplex(cert, dims, horizon, agent.eta, 1.0 / math.sqrt(horizon))
            assert np.mean(finals) <= bound
        assert kept >= 0.95 * runs
        # the recommended step (about 28 here) ends no cycle within 500 rounds
        assert max(cycles) == 0

    @pytest.mark.slow
    def test_gapped_game_regret_stops_growing(self):
        # row 0 looks best under the first matrix, row 1 is best under the second
        scenario = zerosum_scenario([[[0.8, 0.8], [0.0, 0.0]], [[-0.4, -0.4], [0.4, 0.4]]], x_grid=4)
        for theta in range(2):
            agent = IUCBAgent(eta=0.01)
            trace = run_episode(agent, GreedyAdversary(sample_vertices=False), scenario, theta, 500, seed=0)
            regret = regret_trace(trace, scenario).cumulative
            early, late = regret[249], regret[-1] - regret[249]
            assert late <= 0.25 * early + 1e-9
            assert theta in agent.confidence
        assert early > 0.0


class TestGameUCB:
    def test_outcome_label(self):
        assert outcome_label(2, b=1, a=0, sign=+1) == 5
        assert outcome_label(2, b=0, a=1, sign=-1) == 2

    def test_plays_pure_arms_and_counts_outcomes(self, matching_pennies):
        means = zerosum_mean_map(matching_pennies, 0, [0.5, 0.5])
        agent = GameUCBAgent()
        trace = run_episode(agent, FixedMeanNature(means), matching_pennies, 0, 50, seed=7)
        pure = set(matching_pennies.meta["game"]["pure_arms"])
        assert set(trace.arms) <= pure
        assert agent.counts.sum() == pytest.approx(50.0)
        assert np.all(np.abs(agent.totals) <= agent.counts)

    def test_optimistic_payoff_before_data(self, matching_pennies):
        agent = GameUCBAgent()
        agent.reset(matching_pennies, horizon=10, seed=0)
        bonus = math.sqrt(2.0 * math.log(2.0 * 2 * 2 * 100))
        assert np.allclose(agent.optimistic_payoff(), bonus)

    @pytest.mark.slow
    def test_values_converge_at_the_bonus_rate(self, matching_pennies):
        horizon = 2000
        means = zerosum_mean_map(matching_pennies, 0, [0.5, 0.5])
        agent = GameUCBAgent()
        run_episode(agent, FixedMeanNature(means), matching_pennies, 0, horizon, seed=3)
        target, _ = game_value(payoff_of(matching_pennies, 0))
        assert np.all(agent.counts > 0)
        empirical, _ = game_value(agent.totals / agent.counts)
        assert empirical == pytest.approx(target, abs=0.05)

        # the optimistic matrix is the empirical one shifted cellwise by the bonus
        bonus = np.sqrt(2.0 * math.log(2.0 * 2 * 2 * horizon**2) / agent.counts)
        optimistic, _ = game_value(agent.optimistic_payoff())
        assert empirical + bonus.min() - 1e-9 <= optimistic <= empirical + bonus.max() + 1e-9
        assert optimistic - target > 0.05
