import numpy as np
import pytest

import distributions
from distributions import FitResult, SweepRow, alpha_sweep, default_histogram_edges, fit_exp_decay, histogram
from errors import DegenerateFitError, HistogramRangeError, InsufficientDataError, MsnValidationError
from network import build_network

REL = 1e-9


class TestAlphaSweep:
    def test_example(self, example):
        assert alpha_sweep(example, 3) == [
            SweepRow(1, 6, 6, 5),
            SweepRow(2, 6, 6, 5),
            SweepRow(3, 4, 4, 1),
        ]

    def test_empty_network(self):
        rows = alpha_sweep(build_network([]), 2)
        assert [(r.mn_nonempty, r.cdc_nonzero, r.clcc_nonzero) for r in rows] == [(0, 0, 0), (0, 0, 0)]

    def test_bad_max_alpha(self, example):
        with pytest.raises(MsnValidationError):
            alpha_sweep(example, 0)

    def test_thread_count_does_not_change_result(self, example):
        assert alpha_sweep(example, 3, workers=1) == alpha_sweep(example, 3, workers=3)

    @pytest.mark.parametrize("seed", range(40))
    def test_counts_are_consistent(self, random_network, seed):
        rows = alpha_sweep(random_network(seed), 5)
        for row in rows:
            assert row.clcc_nonzero <= row.mn_nonempty
            assert row.cdc_nonzero <= row.mn_nonempty
        for first, second in zip(rows, rows[1:]):
            assert second.mn_nonempty <= first.mn_nonempty


class TestHistogram:
    def test_default_edges(self):
        edges = default_histogram_edges()
        assert len(edges) == 17
        assert edges[0] == 0.0
        assert edges[1] == 0.00002
        assert edges[15] == 0.0003
        assert edges[-1] == 1.0

    def test_empty_values(self):
        hist = histogram([], [0.1, 0.2])
        assert hist.counts == [0, 0]
        assert hist.cumulative_percent == [0.0, 0.0]

    def test_small_values(self):
        hist = histogram([0.00001, 0.00003])
        assert hist.counts[:4] == [0, 1, 1, 0]
        assert hist.cumulative_percent[:3] == [0.0, 50.0, 100.0]
        assert hist.cumulative_percent[-1] == 100.0

    def test_right_closed(self):
        hist = histogram([0.2, 0.2, 0.2], [0.1, 0.2, 0.3])
        assert hist.counts == [0, 3, 0]

    def test_zero_in_first_bin(self):
        assert histogram([0.0, 0.0], [0.0, 1.0]).counts == [2, 0]

    def test_value_above_last_edge(self):
        with pytest.raises(HistogramRangeError) as info:
            histogram([0.5, 2.0], [1.0])
        assert info.value.value == 2.0

    @pytest.mark.parametrize("edges", [[], [0.2, 0.1], [0.1, 0.1]])
    def test_bad_edges(self, edges):
        with pytest.raises(MsnValidationError):
            histogram([0.1], edges)

    def test_rows(self):
        hist = histogram([0.5], [0.0, 1.0])
        assert hist.rows() == [(0.0, 0, 0.0), (1.0, 1, 100.0)]

    @pytest.mark.parametrize("seed", range(20))
    def test_conservation(self, seed):
        values = np.random.default_rng(seed).uniform(0, 1, size=100)
        hist = histogram(values, default_histogram_edges())
        assert sum(hist.counts) == 100
        assert np.all(np.diff(hist.cumulative_percent) >= 0)
        assert hist.cumulative_percent[-1] == pytest.approx(100.0)


class TestFit:
    def test_noiseless_recovery(self):
        values = 2 * np.exp(np.arange(50) / -10)
        fit = fit_exp_decay(values)
        assert fit.A == pytest.approx(2, rel=REL)
        assert fit.t == pytest.approx(-10, rel=REL)
        assert fit.correlation_rate == pytest.approx(1, abs=REL)
        assert fit.n_points == 50
        assert fit.excluded == 0

    def test_noisy_recovery(self):
        rng = np.random.default_rng(1)
        values = 5 * np.exp(np.arange(50) / -3) * (1 + 0.01 * rng.standard_normal(50))
        fit = fit_exp_decay(values)
        assert fit.A == pytest.approx(5, rel=0.05)
        assert fit.correlation_rate > 0.99

    def test_order_invariant(self):
        values = 2 * np.exp(np.arange(30) / -7)
        shuffled = np.random.default_rng(3).permutation(values)
        assert fit_exp_decay(shuffled) == fit_exp_decay(values)

    def test_non_positive_values_excluded(self):
        values = list(2 * np.exp(np.arange(10) / -4)) + [0.0, 0.0, -1.0]
        fit = fit_exp_decay(values)
        assert fit.excluded == 3
        assert fit.n_points == 10
        assert fit.t == pytest.approx(-4, rel=REL)

    def test_constant_values(self):
        with pytest.raises(DegenerateFitError):
            fit_exp_decay([0.3] * 10)

    @pytest.mark.parametrize("values", [[], [1.0], [0.0, 0.0, 4.0]])
    def test_insufficient_data(self, values):
        with pytest.raises(InsufficientDataError):
            fit_exp_decay(values)

    def test_nonlinear(self):
        values = 3 * np.exp(np.arange(40) / -8)
        fit = fit_exp_decay(values, method="nonlinear")
        assert fit.method == "nonlinear"
        assert fit.A == pytest.approx(3, rel=1e-6)
        assert fit.t == pytest.approx(-8, rel=1e-6)

    def test_nonlinear_without_convergence(self, monkeypatch):
        def no_convergence(*args, **kwargs):
            raise RuntimeError("Optimal parameters not found")

        monkeypatch.setattr(distributions.optimize, "curve_fit", no_convergence)
        with pytest.raises(DegenerateFitError, match="did not converge"):
            fit_exp_decay(3 * np.exp(np.arange(40) / -8), method="nonlinear")

    def test_unknown_method(self):
        with pytest.raises(MsnValidationError):
            fit_exp_decay([1.0, 2.0], method="spline")

    def test_predict(self):
        fit = FitResult(2.0, -10.0, 1.0, 50)
        assert fit.predict([0, 10]) == pytest.approx([2.0, 2.0 / np.e])
