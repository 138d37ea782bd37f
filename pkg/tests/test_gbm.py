import math

import numpy as np
import pytest

from ammsim.gbm import (
    GbmParams,
    _GBM_STREAM,
    gbm_step,
    generate_path,
    load_path,
    save_path,
    trend_to_drift,
)


def params(**kwargs):
    defaults = dict(p0=2765.0, drift=0.0, sigma=1.0, dt=1e-4, seed=7)
    defaults.update(kwargs)
    return GbmParams(**defaults)


class TestStep:
    def test_flat_without_drift_and_vol(self):
        p = params(drift=0.0, sigma=0.0, dt=1.0)
        assert gbm_step(123.45, p, 0.0) == 123.45

    def test_pure_drift(self):
        p = params(drift=0.1, sigma=0.0, dt=1.0)
        assert gbm_step(1.0, p, 0.7) == pytest.approx(1.1051709180756477, rel=1e-15)

    def test_single_draw(self):
        # frozen from exp(-0.5/1.31e6 + sqrt(1/1.31e6)) * 2765
        p = params(p0=2765.0, drift=0.0, sigma=1.0, dt=1 / 1.31e6)
        assert gbm_step(2765.0, p, 1.0) == pytest.approx(2767.415791101828, rel=1e-12)

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            gbm_step(-1.0, params(), 0.0)
        with pytest.raises(ValueError):
            gbm_step(1.0, params(), math.nan)
        with pytest.raises(ValueError):
            gbm_step(1.0, params(), math.inf)


class TestParams:
    @pytest.mark.parametrize(
        "bad", [dict(p0=0), dict(p0=-1), dict(sigma=-0.1), dict(dt=0), dict(dt=-1), dict(drift=math.nan)]
    )
    def test_validation(self, bad):
        with pytest.raises(ValueError):
            params(**bad)


class TestTrendMapping:
    def test_endpoints(self):
        assert trend_to_drift(0.0) == 0.0
        assert trend_to_drift(-0.9) == pytest.approx(math.log(0.1), rel=1e-15)
        assert trend_to_drift(1.0) == pytest.approx(math.log(2.0), rel=1e-15)

    def test_rejects_total_loss(self):
        with pytest.raises(ValueError):
            trend_to_drift(-1.0)


class TestPath:
    def test_constant_path(self):
        p = params(drift=0.0, sigma=0.0, dt=1 / 100)
        path = generate_path(p, 100)
        assert len(path) == 101
        assert (path == p.p0).all()

    def test_deterministic(self):
        p = params(seed=123)
        a = generate_path(p, 5000)
        b = generate_path(p, 5000)
        assert np.array_equal(a, b)

    def test_seeds_give_distinct_paths(self):
        a = generate_path(params(seed=1), 100)
        b = generate_path(params(seed=2), 100)
        assert not np.array_equal(a, b)

    def test_seed_streams_are_uncorrelated(self):
        n = 20_000
        a = np.diff(np.log(generate_path(params(seed=1), n)))
        b = np.diff(np.log(generate_path(params(seed=2), n)))
        corr = np.corrcoef(a, b)[0, 1]
        assert abs(corr) < 0.05

    def test_deterministic_trend_hits_endpoint(self):
        # a -90% yearly trend takes 2765 to 276.5 when volatility is zero
        p = params(drift=trend_to_drift(-0.9), sigma=0.0, dt=1 / 10_000)
        path = generate_path(p, 10_000)
        assert path[0] == 2765.0
        assert path[-1] == pytest.approx(276.5, rel=1e-9)

    def test_matches_iterated_steps_exactly(self):
        p = params(seed=99)
        n = 200
        path = generate_path(p, n)
        rng = np.random.default_rng(np.random.SeedSequence(entropy=p.seed, spawn_key=(_GBM_STREAM,)))
        z = rng.standard_normal(n)
        current = p.p0
        for i in range(n):
            current = gbm_step(current, p, z[i])
            assert current == path[i + 1]

    def test_positivity(self):
        path = generate_path(params(sigma=2.0, seed=5), 50_000)
        assert (path > 0).all()

    def test_rejects_zero_steps(self):
        with pytest.raises(ValueError):
            generate_path(params(), 0)

    def test_overflow_raises(self):
        with pytest.raises(FloatingPointError):
            generate_path(params(drift=1e6, sigma=0.0, dt=1.0), 10)

    def test_log_return_statistics(self):
        sigma, dt, n = 1.0, 1e-5, 100_000
        p = params(drift=0.05, sigma=sigma, dt=dt, seed=31)
        path = generate_path(p, n)
        log_returns = np.diff(np.log(path))
        expected_mean = (p.drift - 0.5 * sigma**2) * dt
        se = sigma * math.sqrt(dt) / math.sqrt(n)
        assert abs(log_returns.mean() - expected_mean) <= 3 * se
        assert log_returns.var(ddof=1) == pytest.approx(sigma**2 * dt, rel=0.05)


class TestExportImport:
    def test_round_trip(self, tmp_path):
        path = generate_path(params(seed=11), 500)
        file = tmp_path / "path.txt"
        save_path(path, file)
        loaded = load_path(file)
        assert np.array_equal(path, loaded)

    def test_rejects_wrong_shape(self, tmp_path):
        file = tmp_path / "bad.txt"
        file.write_text("1 2 3\n4 5 6\n")
        with pytest.raises(ValueError):
            load_path(file)

    def test_rejects_non_positive_price(self, tmp_path):
        file = tmp_path / "bad.txt"
        file.write_text("0 100.0\n1 -5.0\n")
        with pytest.raises(ValueError):
            load_path(file)
