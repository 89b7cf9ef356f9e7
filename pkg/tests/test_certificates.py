import math

import numpy as np
import pytest

from src.certificates import (
    Certificates,
    Dims,
    bound_gap,
    bound_main,
    bound_rows,
    bound_simplex,
    build_wnorm,
    build_zbar,
    cell_sine,
    certificate_report,
    chain_r_bound,
    concentration_bound_general,
    concentration_bound_simplex,
    family_dims,
    gamma_constant,
    gap_compute,
    hyperplane_r_bound,
    param_C,
    param_R,
    param_S,
    qualifying_pairs,
    recommended_eta_main,
    w_norm,
)
from src.errors import DegenerateInputError, NoApplicableMethodError, ZeroGapError
from src.scenarios import dhk_torus, finite_stochastic, lower_r_scenario, lower_s_scenario

CERT = Certificates(R=2.0, S=0.5, C=2.0, gap=0.1)
DIMS = Dims(dim_z=3, dim_w=1, labels=3)


class TestKnownValues:
    def test_torus_radius(self):
        scenario = dhk_torus(n=2)
        assert param_R(scenario.family, scenario.space) == pytest.approx(2.0, abs=1e-3)
        assert param_C(scenario.reward, scenario.space, scenario.family) == pytest.approx(2.0)

    def test_cone_family(self):
        alpha = 0.1
        scenario = lower_s_scenario(D=4, alpha=alpha)
        fam, space = scenario.family, scenario.space
        assert param_R(fam, space) == pytest.approx(1.0, abs=1e-3)
        ratio = param_S(fam, space).value / alpha
        assert 0.5 <= ratio <= 4.0
        assert scenario.table[0, 0] == pytest.approx(-0.5, abs=1e-6)

    @pytest.mark.slow
    def test_cone_family_sampled_sine(self):
        alpha = 0.25
        scenario = lower_s_scenario(D=2, alpha=alpha, arm_res=3, h_res=3)
        report = param_S(scenario.family, scenario.space, method="bruteforce", samples=200, seed=1)
        assert report.value == pytest.approx(2 * alpha / math.sqrt(1 + 4 * alpha**2), abs=5e-2)
        assert report.methods == {"bruteforce": len(report.cells)}

    def test_cone_cell_sampled_sine(self):
        alpha = 0.25
        scenario = lower_s_scenario(D=2, alpha=alpha, arm_res=3, h_res=3)
        value = cell_sine(scenario.family, scenario.space, 0, 0, "bruteforce", samples=60, seed=2)
        assert value == pytest.approx(2 * alpha / math.sqrt(1 + 4 * alpha**2), abs=5e-2)

    def test_disk_family(self):
        lam = 10.0
        scenario = lower_r_scenario(lam=lam)
        fam, space = scenario.family, scenario.space
        report = param_S(fam, space)
        assert report.value == pytest.approx(1.0, abs=1e-6)
        assert param_R(fam, space) <= lam + 1.0 + 1e-6

    def test_desk_pcb(self, desk_pcb):
        fam, space = desk_pcb.family, desk_pcb.space
        assert fam.dim_w == 2
        assert fam.dim_z == 4
        assert param_R(fam, space, desk_pcb.zbar) <= 8.0 + 1e-9
        assert param_S(fam, space).value == pytest.approx(1.0, abs=1e-9)

    def test_sampling_failure_propagates(self, desk_pcb, monkeypatch):
        # rays that never leave the body give no ratio to take
        monkeypatch.setattr(type(desk_pcb.space.body), "ray_exit", lambda self, p, d: float("inf"))
        with pytest.raises(DegenerateInputError):
            cell_sine(desk_pcb.family, desk_pcb.space, 0, 0, "bruteforce", samples=5)


class TestNorms:
    def test_wnorm_matches_primal_definition(self, desk_pcb, rng):
        fam, space = desk_pcb.family, desk_pcb.space
        wnorm = build_wnorm(fam, space)
        assert wnorm.exact
        for w in rng.standard_normal((4, fam.dim_w)):
            assert wnorm(w) == pytest.approx(w_norm(fam, space, w), rel=1e-6)

    def test_one_dimensional_w_uses_dual_norm(self, desk_stochastic):
        wnorm = build_wnorm(desk_stochastic.family, desk_stochastic.space)
        assert wnorm.method == "dual-norm"
        assert wnorm.lambdas.shape == (1, 1)

    def test_zbar_norm_constant_modulo_null(self, desk_pcb, rng):
        zb = desk_pcb.zbar
        v = rng.standard_normal(zb.dim)
        for column in zb.null_basis.T:
            assert zb.norm(v + 3.0 * column) == pytest.approx(zb.norm(v), abs=1e-9)

    def test_zbar_norm_scales(self, desk_stochastic, rng):
        zb = build_zbar(desk_stochastic.family, desk_stochastic.space)
        v = rng.standard_normal(zb.dim)
        assert zb.norm(-2.5 * v) == pytest.approx(2.5 * zb.norm(v))

    def test_hyperplane_bound_needs_one_constraint(self, desk_pcb):
        with pytest.raises(NoApplicableMethodError):
            hyperplane_r_bound(desk_pcb.family, desk_pcb.space)

    def test_chain_bound(self):
        assert chain_r_bound([1.0, 3.0, 2.0], depth=2) == 12.0
        with pytest.raises(ValueError):
            chain_r_bound([], depth=1)


class TestGap:
    def test_singleton_grid_has_infinite_gap(self):
        scenario = finite_stochastic([0.5, 0.2, -0.1], hypotheses=[[0.5, 0.2, -0.1]])
        result = gap_compute(scenario.family, scenario.reward, scenario.space)
        assert math.isinf(result.value)
        assert result.pairs == 0

    def test_qualifying_pairs(self):
        # hypothesis 1 looks better and its optimal arm 1 is worse under hypothesis 0
        table = np.array([[0.5, 0.2], [0.1, 0.9]])
        assert qualifying_pairs(table) == [(0, 1, 1)]

    def test_unsupported_body(self):
        scenario = lower_r_scenario(lam=2.0, arm_res=3, h_res=3)
        result = gap_compute(scenario.family, scenario.reward, scenario.space)
        if result.pairs:
            assert not result.supported
            assert math.isnan(result.value)


class TestBounds:
    def test_gamma(self):
        assert gamma_constant() == pytest.approx(6.877, abs=5e-3)

    @pytest.mark.parametrize("bound", [bound_main, bound_simplex])
    def test_monotone_in_horizon(self, bound):
        values = [bound(CERT, DIMS, n, eta=1.0, delta=0.01) for n in (10, 100, 1000, 10000)]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert all(math.isfinite(v) for v in values)

    def test_zero_delta_is_infinite(self):
        assert math.isinf(bound_main(CERT, DIMS, 100, eta=1.0, delta=0.0))

    def test_simplex_bound_needs_labels(self):
        with pytest.raises(ValueError):
            bound_simplex(CERT, Dims(3, 1), 100, eta=1.0, delta=0.1)

    def test_gap_bound(self):
        assert math.isfinite(bound_gap(CERT, DIMS, 1000, eta=1.0))
        with pytest.raises(ZeroGapError):
            bound_gap(CERT, DIMS, 1000, eta=1.0, gap=0.0)
        infinite = Certificates(R=2.0, S=0.5, C=2.0)
        # only the exponential tail remains
        assert bound_gap(infinite, DIMS, 10, eta=100.0) < 1e-6

    def test_recommended_eta(self):
        assert recommended_eta_main(CERT, DIMS, 100) == pytest.approx(2.0 * math.sqrt(math.log(200.0)))

    def test_concentration_bounds_capped(self):
        assert concentration_bound_general(DIMS, tau=1, delta=0.01) == 1.0
        assert concentration_bound_simplex(DIMS, tau=1, delta=0.01) == 1.0
        assert concentration_bound_simplex(DIMS, tau=10**5, delta=0.1) < 1e-100

    def test_rows_default_theorems(self):
        rows = bound_rows(CERT, DIMS, [100, 400])
        assert [(r["theorem"], r["N"]) for r in rows] == [
            ("main", 100), ("simplex", 100), ("gap", 100), ("main", 400), ("simplex", 400), ("gap", 400)
        ]
        assert rows[0]["delta"] == pytest.approx(0.1)

    def test_rows_reject_unknown_theorem(self):
        with pytest.raises(ValueError):
            bound_rows(CERT, DIMS, [10], theorems=["nope"])

    def test_report_writes_null_for_infinite_values(self):
        cert = Certificates(R=1.0, S=1.0, C=2.0)
        report = certificate_report(cert, DIMS, [100], delta=0.0, theorems=["main"])
        assert report["gap"] is None
        assert report["bounds"][0]["value"] is None
        assert set(report) >= {"R", "S", "C", "methods", "grid_resolutions"}

    def test_family_dims(self, desk_stochastic, desk_pcb):
        assert family_dims(desk_stochastic.family, desk_stochastic.space).labels is None
        dims = family_dims(desk_pcb.family, desk_pcb.space)
        assert dims.labels == desk_pcb.space.body.vertices.shape[0]
