import math

import numpy as np
import pytest

import tpspeckle as tp
from tpspeckle.speckle import (
    EnsembleStat,
    TimeGrid,
    default_windows,
    ensemble_average,
    log_histogram,
    sample_series,
    summarize,
    windowed_contrast,
)
from tpspeckle.spectral import PhasorList, phasor_decomposition

SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)


class TestTimeGrid:
    def test_times(self):
        g = TimeGrid(100.0, 50.0, 4)
        assert np.array_equal(g.times, [100.0, 150.0, 200.0, 250.0])

    def test_count_validation(self):
        with pytest.raises(ValueError):
            TimeGrid(0.0, 100.0, 1)

    def test_short_step_warns(self):
        with pytest.warns(UserWarning, match="correlated"):
            TimeGrid(0.0, 1.0, 10)

    def test_default_windows(self):
        short, mid, long_ = default_windows()
        assert [w.label for w in (short, mid, long_)] == ["short", "intermediate", "long"]
        assert short.t_start == 100.0 and short.count == 1000
        assert mid.times[0] == 1.0e6 + 100.0
        assert long_.times[-1] == pytest.approx(1.0e9 + 1.0e5)


class TestSampleSeries:
    def test_single_mode_is_flat(self):
        source = PhasorList(coefficients=np.array([1.0]), energies=np.array([0.37]))
        series = sample_series(source, TimeGrid(100.0, 100.0, 50))
        assert np.allclose(series.values, 1.0, atol=1e-12)
        assert summarize(series).contrast == pytest.approx(0.0, abs=1e-7)

    def test_degenerate_grid_two_equal_samples(self):
        source = PhasorList(coefficients=np.array([0.6, 0.4]), energies=np.array([-1.0, 2.0]))
        with pytest.warns(UserWarning):
            grid = TimeGrid(123.0, 0.0, 2)
        series = sample_series(source, grid)
        assert series.values[0] == series.values[1]
        assert summarize(series).contrast == 0.0

    def test_callable_source(self):
        series = sample_series(lambda t: np.exp(-1j * t) * 2.0, TimeGrid(10.0, 10.0, 5))
        assert np.allclose(series.values, 4.0)


class TestSummarize:
    def test_constant(self):
        s = summarize(np.full(100, 3.3))
        assert s.contrast == 0.0
        assert s.mean == pytest.approx(3.3)

    def test_moment_contrast_identity_is_exact(self):
        rng = np.random.default_rng(8)
        s = summarize(rng.exponential(2.0, 5000))
        assert s.moment2 - 1.0 == s.contrast**2

    def test_exponential_contrast(self):
        rng = np.random.default_rng(2024)
        s = summarize(rng.exponential(1.0, 100_000))
        assert s.contrast == pytest.approx(1.0, abs=0.02)

    def test_product_of_exponentials(self):
        rng = np.random.default_rng(7)
        vals = rng.exponential(1.0, 100_000) * rng.exponential(1.0, 100_000)
        s = summarize(vals)
        assert s.contrast == pytest.approx(SQRT3, abs=0.05)
        assert s.moment2 == pytest.approx(4.0, abs=0.2)

    def test_scale_invariance(self):
        rng = np.random.default_rng(3)
        vals = rng.exponential(1.0, 10_000)
        c1 = summarize(vals).contrast
        c2 = summarize(vals * 977.3).contrast
        assert c1 == pytest.approx(c2, rel=1e-13)

    def test_errors(self):
        with pytest.raises(ValueError):
            summarize(np.array([]))
        with pytest.raises(ValueError):
            summarize(np.zeros(5))


class TestLogHistogram:
    def test_exponential_density_near_unit_intensity(self):
        rng = np.random.default_rng(5)
        h = log_histogram(rng.exponential(1.0, 1_000_000), bins_per_decade=20)
        # bin-averaged unit exponential as the reference on the I/<I> axis
        k = np.searchsorted(h.edges, 1.0, side="right") - 1
        for b in (k, k - 1):
            lo, hi = h.edges[b], h.edges[b + 1]
            expected = (math.exp(-lo) - math.exp(-hi)) / (hi - lo)
            assert h.density[b] == pytest.approx(expected, rel=0.05)

    def test_total_probability(self):
        rng = np.random.default_rng(6)
        h = log_histogram(rng.exponential(1.0, 200_000))
        assert (h.density * np.diff(h.edges)).sum() == pytest.approx(1.0, abs=1e-9)
        assert h.counts.sum() + h.underflow + h.overflow == h.n_samples

    def test_single_value_occupies_one_bin(self):
        h = log_histogram(np.full(500, 2.5))
        assert (h.counts > 0).sum() == 1
        assert h.counts.max() == 500

    def test_scale_invariance(self):
        rng = np.random.default_rng(12)
        vals = rng.exponential(1.0, 50_000)
        h1 = log_histogram(vals)
        h2 = log_histogram(vals * 3.7e4)
        assert np.array_equal(h1.counts, h2.counts)
        assert np.allclose(h1.density, h2.density, rtol=1e-12)

    def test_k_distributed_matches_model_over_four_decades(self):
        rng = np.random.default_rng(11)
        vals = rng.exponential(1.0, 1_000_000) * rng.exponential(1.0, 1_000_000)
        h = log_histogram(vals, bins_per_decade=16)
        mask = (h.centers >= 1e-3) & (h.centers <= 10.0)
        model = tp.pdf_k(h.centers[mask] * h.mean, h.mean, 1) * h.mean
        assert np.abs(h.density[mask] / model - 1.0).max() < 0.10

    def test_all_underflow_raises(self):
        with pytest.raises(ValueError, match="outside"):
            log_histogram(np.array([1.0, 1.0, 1e9]), lo=1e-4, hi=1e-2)

    def test_zero_samples_go_to_underflow(self):
        vals = np.concatenate([np.zeros(10), np.full(90, 1.0)])
        h = log_histogram(vals)
        assert h.underflow == 10


def _bosonic_phasors(n, w, u, seed, site_in, site_out):
    spec = tp.ChainSpec(n_sites=n, disorder_width=w, interaction=u)
    dis = tp.sample_disorder(spec, seed)
    dec = tp.diagonalize(tp.build_bosonic_block(spec, dis))
    return phasor_decomposition(dec, dec.flat(*site_in), dec.flat(*site_out))


class TestWindowedContrast:
    def test_duplicate_labels_rejected(self):
        g = TimeGrid(100.0, 100.0, 10, "a")
        with pytest.raises(ValueError, match="duplicate"):
            windowed_contrast(lambda t: np.ones_like(t) + 0j, [g, g])

    def test_weakly_interacting_pair_develops_fully(self):
        # scattered bosonic input at moderate interaction: long-window contrast ~ 1
        phasors = _bosonic_phasors(26, 0.01, 2.0, 0, (10, 11), (13, 16))
        out = windowed_contrast(phasors, [default_windows()[2]])
        assert out["long"].contrast == pytest.approx(1.0, abs=0.1)

    def test_free_pair_statistics_are_stationary(self):
        phasors = _bosonic_phasors(26, 0.01, 0.0, 0, (10, 11), (13, 16))
        out = windowed_contrast(phasors, default_windows())
        cs = [s.contrast for s in out.values()]
        assert max(cs) - min(cs) < 0.15


class TestEnsembleAverage:
    def test_single_seed_passthrough(self):
        stats = ensemble_average(lambda seed: {"a": 0.5}, [3])
        assert stats["a"] == EnsembleStat(mean=0.5, std=0.0, stderr=0.0, count=1)

    def test_no_disorder_means_no_dispersion(self):
        grid = TimeGrid(100.0, 100.0, 200)

        def experiment(seed):
            spec = tp.ChainSpec(n_sites=8, disorder_width=0.0)
            dis = tp.sample_disorder(spec, seed)
            dec = tp.diagonalize(tp.build_bosonic_block(spec, dis))
            ph = phasor_decomposition(dec, dec.flat(2, 3), dec.flat(4, 5))
            return {"c": summarize(sample_series(ph, grid)).contrast}

        stats = ensemble_average(experiment, [1, 2, 3, 4])
        assert stats["c"].count == 4
        assert stats["c"].std == 0.0

    def test_mean_and_stderr(self):
        values = {1: 1.0, 2: 2.0, 3: 3.0}
        stats = ensemble_average(lambda s: {"x": values[s]}, [1, 2, 3])
        assert stats["x"].mean == pytest.approx(2.0)
        expected_std = math.sqrt(2.0 / 3.0)
        assert stats["x"].std == pytest.approx(expected_std)
        assert stats["x"].stderr == pytest.approx(expected_std / math.sqrt(3))

    def test_empty_seed_list(self):
        with pytest.raises(ValueError):
            ensemble_average(lambda s: {"x": 1.0}, [])
