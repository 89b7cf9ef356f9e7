import json

import numpy as np
import pytest

from src.agents import FixedArmAgent, GameUCBAgent, IUCBAgent, OptimalArmAgent
from src.errors import OutcomeOutsideBodyError
from src.nature import FixedMeanNature, GreedyAdversary, NaturePolicy, zerosum_mean_map
from src.scenarios import zerosum_scenario
from src.sim import (
    EpisodeSpec,
    concentration_experiment,
    concentration_sweep,
    config_hash,
    credal_flat,
    monte_carlo,
    regret_trace,
    run_episode,
    write_concentration_csv,
    write_manifest,
    write_summary_csv,
    write_trace_csv,
)
from src.sim.io import TRACE_HEADER, fmt
from src.sim.monte_carlo import _padded
from src.sim.regret import RegretRecord


class FarNature(NaturePolicy):
    """Answers with a reward far outside the segment."""

    name = "far"

    def _respond(self, x: int) -> np.ndarray:
        return np.array([1.0, 5.0])


class TestEpisode:
    def test_optimal_agent_has_zero_regret(self, desk_stochastic):
        trace = run_episode(OptimalArmAgent(2), GreedyAdversary(), desk_stochastic, 2, 50, seed=0)
        regret = regret_trace(trace, desk_stochastic)
        assert regret.optimal_arm == 2
        np.testing.assert_allclose(regret.cumulative, 0.0, atol=1e-8)

    def test_empty_horizon(self, desk_stochastic):
        trace = run_episode(FixedArmAgent(0), GreedyAdversary(), desk_stochastic, 0, 0, seed=0)
        assert len(trace) == 0
        assert regret_trace(trace, desk_stochastic).final == 0.0

    def test_fixed_arm_regret(self, desk_stochastic):
        trace = run_episode(FixedArmAgent(3), GreedyAdversary(), desk_stochastic, 0, 10, seed=0)
        regret = regret_trace(trace, desk_stochastic)
        # best mean 0.5 against the played -0.4
        np.testing.assert_allclose(regret.cumulative, 0.9 * np.arange(1, 11), atol=1e-8)
        assert trace.rewards_consistent(desk_stochastic)

    def test_same_seed_same_trace(self, matching_pennies):
        means = zerosum_mean_map(matching_pennies, 0, [0.5, 0.5])

        def play(seed):
            return run_episode(GameUCBAgent(), FixedMeanNature(means), matching_pennies, 0, 40, seed=seed)

        first, second, other = play(11), play(11), play(12)
        assert np.array_equal(first.arms, second.arms)
        assert np.array_equal(first.outcomes, second.outcomes)
        assert not np.array_equal(first.outcomes, other.outcomes)

    def test_policy_error_is_raised(self, desk_stochastic):
        with pytest.raises(OutcomeOutsideBodyError):
            run_episode(IUCBAgent(eta=1.0), FarNature(), desk_stochastic, 0, 5, seed=0)

    def test_policy_error_is_recorded(self, desk_stochastic):
        trace = run_episode(IUCBAgent(eta=1.0), FarNature(), desk_stochastic, 0, 5, seed=0, on_error="record")
        assert len(trace) == 0
        assert trace.failed
        assert trace.flags["error"]["type"] == "OutcomeOutsideBodyError"
        assert trace.flags["error"]["round"] == 0

    def test_bad_error_mode(self, desk_stochastic):
        with pytest.raises(ValueError):
            run_episode(FixedArmAgent(0), GreedyAdversary(), desk_stochastic, 0, 5, seed=0, on_error="ignore")


class TestMonteCarlo:
    def test_single_repetition(self, desk_stochastic):
        spec = EpisodeSpec(desk_stochastic, "fixed", "greedy", 0, 20, agent_params={"arm": 1})
        summary = monte_carlo(spec, reps=1, seed=0)
        assert summary.mean_regret.shape == (20,)
        np.testing.assert_allclose(summary.mean_regret[-1], 0.3 * 20, atol=1e-8)
        assert np.all(summary.std_regret == 0.0)
        assert summary.failures == 0

    def test_optimal_mean_is_zero(self, desk_stochastic):
        spec = EpisodeSpec(desk_stochastic, "optimal", "greedy", 1, 15, agent_params={"theta": 1})
        summary = monte_carlo(spec, reps=3, seed=5)
        np.testing.assert_allclose(summary.mean_regret, 0.0, atol=1e-8)
        assert [t.seed for t in summary.traces] == [5, 6, 7]

    def test_rejects_zero_repetitions(self, desk_stochastic):
        spec = EpisodeSpec(desk_stochastic, "ucb", "greedy", 0, 10)
        with pytest.raises(ValueError):
            monte_carlo(spec, reps=0, seed=0)

    def test_truncated_curves_hold_their_last_value(self):
        records = [RegretRecord(0.5, 0, np.array([0.1, 0.3])), RegretRecord(0.5, 0, np.array([]))]
        np.testing.assert_allclose(_padded(records, 4), [[0.1, 0.3, 0.3, 0.3], [0.0, 0.0, 0.0, 0.0]])

    @pytest.mark.slow
    def test_workers_match_sequential(self, desk_stochastic):
        spec = EpisodeSpec(desk_stochastic, "ucb", "greedy", 0, 60)
        sequential = monte_carlo(spec, reps=4, seed=9)
        parallel = monte_carlo(spec, reps=4, seed=9, threads=2)
        np.testing.assert_array_equal(sequential.mean_regret, parallel.mean_regret)
        np.testing.assert_array_equal(sequential.std_regret, parallel.std_regret)


class TestConcentration:
    def test_flat_contains_the_true_means(self, desk_stochastic):
        flat = credal_flat(desk_stochastic, 0, 1)
        assert flat.dim == 0
        np.testing.assert_allclose(flat.point, [1.0, 0.2], atol=1e-9)

    def test_large_delta_is_never_reached(self, desk_pcb):
        result = concentration_experiment(desk_pcb, 0, GreedyAdversary(), 0, tau=20, delta=10.0, reps=5, seed=0)
        assert result.violation_rate == 0.0
        assert result.simplex_bound is not None
        assert 0.0 <= result.general_bound <= 1.0

    def test_simplex_bound_only_on_simplex(self, desk_stochastic):
        result = concentration_experiment(desk_stochastic, 0, GreedyAdversary(), 0, tau=5, delta=0.1, reps=2, seed=0)
        assert result.simplex_bound is None
        # deterministic outcomes sit on the flat
        assert result.violation_rate == 0.0

    def test_bad_arguments(self, desk_stochastic):
        with pytest.raises(ValueError):
            concentration_experiment(desk_stochastic, 0, GreedyAdversary(), 0, tau=0, delta=0.1, reps=2, seed=0)

    @pytest.mark.slow
    def test_rate_below_simplex_bound(self, matching_pennies):
        means = zerosum_mean_map(matching_pennies, 0, [0.5, 0.5])
        results = concentration_sweep(
            matching_pennies, 0, FixedMeanNature(means), 0, taus=[50, 200, 800], delta=0.3, reps=200, seed=1
        )
        for r in results:
            assert r.violation_rate <= r.simplex_bound + 0.05
        assert results[-1].violation_rate <= results[0].violation_rate

    @pytest.mark.slow
    def test_label_bound_dominates_at_long_runs(self):
        # half stakes: the payoff sign is random in every cell
        scenario = zerosum_scenario([[[0.5, -0.5], [-0.5, 0.5]]], x_grid=4)
        means = zerosum_mean_map(scenario, 0, [0.5, 0.5])
        result = concentration_experiment(scenario, 0, FixedMeanNature(means), 0, tau=400, delta=0.3, reps=2000, seed=2)
        assert result.reps == 2000
        assert result.violation_rate <= result.simplex_bound


class TestWriters:
    def test_csv_bytes_are_reproducible(self, desk_stochastic, tmp_path):
        def write(name):
            trace = run_episode(FixedArmAgent(1), GreedyAdversary(), desk_stochastic, 0, 5, seed=3)
            return write_trace_csv(tmp_path / name, trace, regret_trace(trace, desk_stochastic)).read_bytes()

        first = write("a.csv")
        assert first == write("b.csv")
        lines = first.decode().splitlines()
        assert lines[0] == ",".join(TRACE_HEADER)
        assert len(lines) == 6
        assert lines[1].split(",")[:2] == ["0", "1"]

    def test_summary_and_concentration_tables(self, desk_stochastic, tmp_path):
        spec = EpisodeSpec(desk_stochastic, "fixed", "greedy", 0, 4, agent_params={"arm": 0})
        path = write_summary_csv(tmp_path / "summary.csv", monte_carlo(spec, reps=2, seed=0))
        assert path.read_text().splitlines()[0] == "round,mean_regret,std_regret,reps"
        result = concentration_experiment(desk_stochastic, 0, GreedyAdversary(), 0, tau=3, delta=0.1, reps=2, seed=0)
        rows = write_concentration_csv(tmp_path / "c.csv", [result]).read_text().splitlines()
        # no simplex bound off the simplex
        assert rows[1].split(",")[4] == ""

    def test_fmt(self):
        assert fmt(None) == ""
        assert fmt(np.int64(3)) == "3"
        assert fmt(0.1) == "0.10000000000000001"

    def test_manifest(self, tmp_path):
        config = {"scenario": "pcb_desk", "horizon": 100}
        first = write_manifest(tmp_path / "a", config, seed=4, command="run").read_bytes()
        second = write_manifest(tmp_path / "b", config, seed=4, command="run").read_bytes()
        assert first == second
        manifest = json.loads(first)
        assert manifest["config_sha256"] == config_hash(config)
        assert manifest["seed"] == 4
        assert config_hash({**config, "horizon": 101}) != config_hash(config)
