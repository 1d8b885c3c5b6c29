import math

import numpy as np
import pytest

from lagbench.errors import ConfigurationError, InstabilityError, UnsupportedFormError
from lagbench.graph import (
    ConfounderSpec,
    GraphConfig,
    LaggedEdge,
    TemporalCausalGraph,
    add_confounder,
    generate_graph,
)
from lagbench.simulate import (
    BURN_IN,
    Dataset,
    NoiseModel,
    ScmSpec,
    TrendSeason,
    sample_noise,
    simulate,
    stability_check,
)

GAUSS = NoiseModel(kind="gaussian", scale=0.1)


def linear_spec(graph):
    return ScmSpec(graph=graph, form="linear", noise=(GAUSS,) * graph.num_variables)


def detrended_periodogram_argmax(series):
    """Index of the largest rFFT power bin after removing a linear trend."""
    t = np.arange(len(series))
    slope, intercept = np.polyfit(t, series, 1)
    resid = series - (slope * t + intercept)
    power = np.abs(np.fft.rfft(resid)) ** 2
    power[0] = 0.0
    return int(np.argmax(power))


class TestSampleNoise:
    def test_gaussian_std_calibrated(self):
        draws = sample_noise(GAUSS, 100_000, seed=11)
        assert 0.097 <= draws.std() <= 0.103
        assert abs(draws.mean()) < 3 * 0.1 / math.sqrt(100_000)

    def test_student_t_heavy_tailed_same_std(self):
        model = NoiseModel(kind="student_t", scale=0.1, dof=3.0)
        draws = sample_noise(model, 100_000, seed=12)
        assert 0.097 <= draws.std() <= 0.103
        from scipy.stats import kurtosis

        assert kurtosis(draws) > 1.0

    def test_laplace_std_calibrated(self):
        draws = sample_noise(NoiseModel(kind="laplace", scale=0.1), 100_000, seed=13)
        assert 0.097 <= draws.std() <= 0.103

    @pytest.mark.parametrize("ratio", [0.0, 0.5, 1.0])
    def test_mixed_std_calibrated(self, ratio):
        model = NoiseModel(kind="mixed", scale=0.1, mix_ratio=ratio)
        draws = sample_noise(model, 100_000, seed=14)
        assert 0.097 <= draws.std() <= 0.103

    def test_degenerate_mixture_matches_gaussian_stream(self):
        mixed = NoiseModel(kind="mixed", scale=0.1, mix_ratio=1.0)
        a = sample_noise(mixed, 5000, seed=99)
        b = sample_noise(GAUSS, 5000, seed=99)
        np.testing.assert_array_equal(a, b)

    def test_invalid_models_rejected(self):
        with pytest.raises(ConfigurationError):
            NoiseModel(kind="student_t", scale=0.1, dof=2.0)
        with pytest.raises(ConfigurationError):
            NoiseModel(kind="mixed", scale=0.1)
        with pytest.raises(ConfigurationError):
            NoiseModel(kind="gaussian", scale=0.0)
        with pytest.raises(ConfigurationError):
            NoiseModel(kind="cauchy", scale=0.1)


class TestSimulate:
    def test_pure_noise_reduction(self):
        # no edges at all is the "coefficients forced to zero" limit
        graph = TemporalCausalGraph(4, 2, ())
        data = simulate(linear_spec(graph), length=5000, seed=21)
        assert data.values.shape == (5000, 4)
        se_mean = 0.1 / math.sqrt(5000)
        se_var = 0.01 * math.sqrt(2.0 / (5000 - 1))
        for j in range(4):
            col = data.values[:, j]
            assert abs(col.mean()) < 3 * se_mean
            assert abs(col.var() - 0.01) < 3 * se_var

    def test_seasonal_peak_at_period_12(self):
        graph = generate_graph(GraphConfig(4, 2, 9, seed=5))
        spec = ScmSpec(
            graph=graph,
            form="trig_trend_seasonal",
            noise=(GAUSS,) * 4,
            trend_season=TrendSeason(
                trend_slope=0.001, season_period=12, harmonics=((0.5, 1, 0.0), (0.2, 2, 0.9))
            ),
        )
        data = simulate(spec, length=3000, seed=22)
        for j in range(4):
            assert detrended_periodogram_argmax(data.values[:, j]) == 3000 // 12

    def test_deterministic(self):
        graph = generate_graph(GraphConfig(4, 2, 9, seed=5))
        a = simulate(linear_spec(graph), length=500, seed=23)
        b = simulate(linear_spec(graph), length=500, seed=23)
        np.testing.assert_array_equal(a.values, b.values)
        np.testing.assert_array_equal(a.timestamps, b.timestamps)
        c = simulate(linear_spec(graph), length=500, seed=24)
        assert not np.array_equal(a.values, c.values)

    def test_unit_grid_timestamps(self):
        graph = TemporalCausalGraph(2, 1, (LaggedEdge(0, 0, 1, 0.3), LaggedEdge(1, 1, 1, 0.3)))
        data = simulate(linear_spec(graph), length=10, seed=1)
        np.testing.assert_array_equal(data.timestamps, np.arange(10.0))
        assert data.meta["burn_in"] == BURN_IN

    def test_burn_in_removes_initialization(self):
        graph = generate_graph(GraphConfig(4, 2, 9, seed=6))
        data = simulate(linear_spec(graph), length=5000, seed=25)
        q = 5000 // 4
        first, last = data.values[:q], data.values[-q:]
        for j in range(4):
            pooled_se = math.sqrt(first[:, j].var() / q + last[:, j].var() / q)
            assert abs(first[:, j].mean() - last[:, j].mean()) < 5 * pooled_se

    def test_polynomial_form_runs_and_stays_finite(self):
        graph = generate_graph(GraphConfig(4, 2, 9, seed=7))
        degrees = tuple(2 + (i % 2) for i in range(len(graph.edges)))
        spec = ScmSpec(
            graph=graph,
            form="polynomial",
            noise=(GAUSS,) * 4,
            poly_degrees=degrees,
        )
        data = simulate(spec, length=500, seed=26)
        assert np.all(np.isfinite(data.values))

    def test_divergence_raises_instability(self):
        graph = TemporalCausalGraph(1, 1, (LaggedEdge(0, 0, 1, 1.5),))
        with pytest.raises(InstabilityError) as err:
            simulate(linear_spec(graph), length=100, seed=27)
        assert err.value.variable == 0
        assert err.value.step < 100

    def test_confounder_raises_child_correlation(self):
        base = generate_graph(GraphConfig(4, 2, 9, seed=8))
        spec = ConfounderSpec(targets=((1, "linear"), (3, "linear")), ar_coeff=0.7, noise_scale=0.3)
        plain = simulate(linear_spec(base), length=5000, seed=28)
        confounded = simulate(linear_spec(add_confounder(base, spec)), length=5000, seed=28)
        corr = lambda d: np.corrcoef(d.values[:, 1], d.values[:, 3])[0, 1]
        assert corr(confounded) > corr(plain)
        # latent process never shows up in the observed edge set
        assert add_confounder(base, spec).edges == base.edges

    def test_spec_validation(self):
        graph = generate_graph(GraphConfig(2, 1, 2, seed=9))
        with pytest.raises(ConfigurationError):
            ScmSpec(graph=graph, form="linear", noise=(GAUSS,))
        with pytest.raises(ConfigurationError):
            ScmSpec(graph=graph, form="trig_trend_seasonal", noise=(GAUSS, GAUSS))
        with pytest.raises(ConfigurationError):
            ScmSpec(graph=graph, form="polynomial", noise=(GAUSS, GAUSS))
        with pytest.raises(ConfigurationError):
            ScmSpec(graph=graph, form="polynomial", noise=(GAUSS, GAUSS), poly_degrees=(4, 2))
        with pytest.raises(ConfigurationError):
            ScmSpec(graph=graph, form="linear", noise=(GAUSS, GAUSS), poly_degrees=(1, 1))


class TestStabilityCheck:
    def test_empty_graph_radius_zero(self):
        res = stability_check(linear_spec(TemporalCausalGraph(3, 2, ())))
        assert res.passed and res.spectral_radius == 0.0

    def test_explosive_self_edge_fails(self):
        graph = TemporalCausalGraph(1, 1, (LaggedEdge(0, 0, 1, 1.05),))
        res = stability_check(linear_spec(graph))
        assert not res.passed
        assert res.spectral_radius == pytest.approx(1.05)

    def test_generated_defaults_pass(self):
        for seed in range(5):
            graph = generate_graph(GraphConfig(4, 2, 9, seed=seed))
            assert stability_check(linear_spec(graph)).passed

    def test_nonlinear_form_unsupported(self):
        graph = generate_graph(GraphConfig(2, 1, 2, seed=0))
        spec = ScmSpec(
            graph=graph, form="polynomial", noise=(GAUSS, GAUSS), poly_degrees=(2, 3)
        )
        with pytest.raises(UnsupportedFormError):
            stability_check(spec)


class TestDataset:
    def test_rejects_nonincreasing_timestamps(self):
        with pytest.raises(ConfigurationError):
            Dataset(timestamps=[0.0, 0.0], values=[[1.0], [2.0]])

    def test_rejects_nonfinite_observed(self):
        with pytest.raises(ConfigurationError):
            Dataset(timestamps=[0.0, 1.0], values=[[1.0], [np.nan]])

    def test_nan_allowed_under_mask(self):
        data = Dataset(
            timestamps=[0.0, 1.0],
            values=[[1.0], [np.nan]],
            mask=[[True], [False]],
        )
        assert len(data) == 2 and data.num_variables == 1
