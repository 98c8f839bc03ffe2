import math

import numpy as np
import pytest

from wignerlab import ensembles as ens
from wignerlab import spectral_stats as ss
from wignerlab.errors import DegenerateExperimentError
from wignerlab.semicircle import classical_locations
from wignerlab.spectra import Spectrum

SQRT_HALF = math.sqrt(0.5)


def real_pair(n):
    a = ens.EnsembleSpec(n, ens.REAL_SYMMETRIC, ens.gaussian(1.0), ens.gaussian(1.0))
    b = ens.EnsembleSpec(n, ens.REAL_SYMMETRIC, ens.laplace(SQRT_HALF), ens.laplace(SQRT_HALF))
    return a, b


class TestSummarize:
    def test_constant_rows(self):
        n = 5
        gamma = classical_locations(n)
        eigs = np.tile(math.sqrt(n) * gamma, (10, 1))
        s = ss.summarize(eigs)
        np.testing.assert_allclose(s.mean, math.sqrt(n) * gamma)
        np.testing.assert_allclose(s.median, math.sqrt(n) * gamma)
        np.testing.assert_allclose(s.std_error_mean, 0.0, atol=1e-15)
        np.testing.assert_allclose(s.second_moment_about_gamma, 0.0, atol=1e-15)

    def test_known_deviation_moments(self):
        n = 3
        gamma = classical_locations(n)
        anchor = math.sqrt(n) * gamma
        # Deviations alternate +1 / -1 per trial: m2 = 1, m3 = 0, m4 = 1.
        eigs = np.vstack([anchor + 1.0, anchor - 1.0])
        s = ss.summarize(eigs)
        np.testing.assert_allclose(s.second_moment_about_gamma, 1.0)
        np.testing.assert_allclose(s.third_moment_about_gamma, 0.0, atol=1e-12)
        np.testing.assert_allclose(s.fourth_moment_about_gamma, 1.0)

    def test_explicit_gamma_passthrough(self):
        gamma = np.array([-1.0, 0.0, 1.0])
        eigs = np.zeros((4, 3))
        s = ss.summarize(eigs, gamma=gamma)
        np.testing.assert_array_equal(s.gamma, gamma)


class TestCountingFunction:
    def test_counts_normalized_values(self):
        n = 4
        s = Spectrum(math.sqrt(n) * np.array([-1.5, -0.5, 0.5, 1.5]))
        assert ss.counting_function(s, (-1.0, 1.0), n) == 2
        assert ss.counting_function(s, (-2.0, 2.0), n) == 4
        assert ss.counting_function(s, (0.49, 0.51), n) == 1

    def test_boundaries_inclusive(self):
        s = Spectrum(np.array([-1.0, 0.0, 1.0]))
        assert ss.counting_function(s, (-1.0, 1.0), 1) == 3

    def test_empty_interval_rejected(self):
        s = Spectrum(np.array([0.0]))
        with pytest.raises(ValueError):
            ss.counting_function(s, (1.0, -1.0), 1)


class TestDelta:
    def test_grid_validation(self):
        with pytest.raises(ValueError):
            ss._check_grid(np.linspace(-2.0, 2.5, 100), 4)
        with pytest.raises(ValueError):
            ss._check_grid(np.linspace(-2.5, 2.5, 11), 10)

    def test_default_grid_satisfies_contract(self):
        for n in (4, 100, 333):
            grid = ss.default_grid(n)
            assert grid[0] <= -2.5 and grid[-1] >= 2.5
            assert np.max(np.diff(grid)) <= 1.0 / n + 1e-12

    def test_synthetic_quantile_spectra_give_small_delta(self):
        # Spectra pinned at the classical locations track the limit CDF
        # to within one part in n.
        n = 64
        anchor = math.sqrt(n) * classical_locations(n)
        eigs = np.tile(anchor, (3, 1))
        delta = ss.delta_for_synthetic(eigs, ss.default_grid(n))
        assert delta <= 1.0 / n + 1e-9

    def test_synthetic_shifted_spectra_give_large_delta(self):
        n = 64
        anchor = math.sqrt(n) * (classical_locations(n) - 1.0)
        eigs = np.tile(anchor, (2, 1))
        delta = ss.delta_for_synthetic(eigs, ss.default_grid(n))
        assert delta > 0.15

    def test_gue_delta_moderate(self):
        value, se = ss.delta_statistic_detail(
            ens.gue(40), trials=200, grid=ss.default_grid(40), seed=21
        )
        assert 0.0 < value < 0.1
        assert 0.0 <= se < value

    def test_detail_matches_plain(self):
        spec = ens.gue(16)
        grid = ss.default_grid(16)
        v1 = ss.delta_statistic(spec, 120, grid, seed=4)
        v2, _ = ss.delta_statistic_detail(spec, 120, grid, seed=4)
        assert v1 == v2


class TestLocalizationProfile:
    def test_requires_trials(self):
        summary = ss.summarize_ensemble(ens.gue(8), trials=120, seed=1)
        with pytest.raises(ValueError):
            ss.localization_profile(summary)

    def test_profile_is_second_moment(self):
        summary = ss.summarize_ensemble(ens.gue(16), trials=500, seed=2)
        prof = ss.localization_profile(summary)
        np.testing.assert_array_equal(prof, summary.second_moment_about_gamma)

    def test_warns_on_hot_bulk(self, caplog):
        n = 8
        gamma = classical_locations(n)
        eigs = np.tile(math.sqrt(n) * gamma + 5.0, (500, 1))
        summary = ss.summarize(eigs)
        with caplog.at_level("WARNING", logger="wignerlab.spectral_stats"):
            ss.localization_profile(summary)
        assert any("ceiling" in rec.message for rec in caplog.records)


class TestShiftExperiment:
    def test_validation_errors(self):
        a, b = real_pair(10)
        mismatched = ens.EnsembleSpec(12, ens.REAL_SYMMETRIC, ens.laplace(SQRT_HALF),
                                      ens.laplace(SQRT_HALF))
        with pytest.raises(DegenerateExperimentError):
            ss.shift_experiment(a, mismatched, 100, seed=1)
        with pytest.raises(DegenerateExperimentError):
            ss.shift_experiment(a, a, 100, seed=1)  # zero fourth-moment gap
        gue_spec = ens.gue(10)
        with pytest.raises(DegenerateExperimentError):
            ss.shift_experiment(a, gue_spec, 100, seed=1)

    def test_curve_structure(self):
        a, b = real_pair(20)
        curve = ss.shift_experiment(a, b, trials=300, seed=8)
        assert curve.n == 20
        assert curve.kappa0 == pytest.approx(-3.0, abs=1e-10)
        assert curve.indices.tolist() == list(range(1, 21))
        np.testing.assert_allclose(curve.f2, curve.gamma**3 - 2.0 * curve.gamma)
        assert curve.aggregate_shift >= 0.0
        # f1 definition consistency against the two summaries.
        expect = 4.0 * math.sqrt(20) * (curve.summary_a.mean - curve.summary_b.mean) / curve.kappa0
        np.testing.assert_allclose(curve.f1, expect)

    def test_thread_invariance(self):
        a, b = real_pair(12)
        c1 = ss.shift_experiment(a, b, trials=120, seed=6, threads=1)
        c4 = ss.shift_experiment(a, b, trials=120, seed=6, threads=4)
        np.testing.assert_array_equal(c1.f1, c4.f1)

    def test_normalized_shift_check_zero_when_f1_equals_f2(self):
        a, b = real_pair(10)
        curve = ss.shift_experiment(a, b, trials=150, seed=3)
        forced = ss.ShiftCurve(
            n=curve.n, trials=curve.trials, kappa0=curve.kappa0,
            indices=curve.indices, gamma=curve.gamma,
            f1=curve.f2.copy(), f1_std_error=curve.f1_std_error,
            f2=curve.f2, aggregate_shift=curve.aggregate_shift,
            summary_a=curve.summary_a, summary_b=curve.summary_b,
        )
        vals = ss.normalized_shift_check(forced, [1, 2, 3])
        assert all(v == 0.0 for v in vals)
        budget = ss.normalized_shift_error_budget(curve, [1, 2, 3])
        assert all(b > 0.0 for b in budget)


class TestCountingVariance:
    def test_interval_validation(self):
        with pytest.raises(ValueError):
            ss.gue_counting_variance([8], (-2.5, 1.0), trials=100, seed=1)

    def test_variance_positive_and_modest(self):
        (v,) = ss.gue_counting_variance([30], (-1.0, 1.0), trials=300, seed=7)
        assert 0.0 < v < 10.0

    def test_matches_generic_runner(self):
        vals = ss.counting_variance_for_specs(
            [ens.gue(12)], (-1.0, 1.0), trials=150, seed=9
        )
        (oracle,) = ss.gue_counting_variance([12], (-1.0, 1.0), trials=150, seed=9)
        assert vals[0] == oracle
