"""Acceptance suite: one test per release criterion, at pinned tolerances.

Run with ``pytest tests/test_acceptance.py -v -s`` to see one line per
criterion.  The stochastic criteria use the fixed seed base published in
the experiment outputs, so every run checks the same numbers.
"""

import math
import time

import numpy as np
import pytest

from ammsim.arbitrage import ArbDirection, ArbParams, execute_arbitrage, optimal_trade
from ammsim.config import baseline_config
from ammsim.engine import SimConfig, run_simulation
from ammsim.experiments import Experiment, SweepSpec, sweep, write_results
from ammsim.feed import FeedSpec
from ammsim.gbm import GbmParams, generate_path, trend_to_drift
from ammsim.metrics import impermanent_loss_analytic
from ammsim.pool import PoolState, quote_a_for_b, quote_b_for_a, spot_price

SEED_BASE = 1000
DESK_STEPS = 10_000
REPLICATIONS = 20


def no_fee_config(trend: float, sigma: float, seed: int, n_steps: int = DESK_STEPS) -> SimConfig:
    return SimConfig(
        pool_total_value_b=250e6,
        initial_price=2765.0,
        fee=0.0,
        gbm=GbmParams(p0=2765.0, drift=trend_to_drift(trend), sigma=sigma, dt=1.0 / n_steps, seed=seed),
        feed=None,
        arb=ArbParams(tau=0.0),
        horizon_years=1.0,
        n_steps=n_steps,
    )


def report(n: int, name: str, detail: str = "") -> None:
    suffix = f" ({detail})" if detail else ""
    print(f"\ncriterion {n} [{name}]: PASS{suffix}")


def test_criterion_1_analytic_loss_reproduction():
    start = time.perf_counter()
    trends = (-0.9, -0.5, 0.0, 0.5, 0.9)
    worst_deterministic = 0.0
    for trend in trends:
        result = run_simulation(no_fee_config(trend, sigma=0.0, seed=SEED_BASE))
        expected = impermanent_loss_analytic(1.0 + trend)
        worst_deterministic = max(worst_deterministic, abs(result.metrics.relative_profit - expected))
        assert result.metrics.relative_profit == pytest.approx(expected, abs=1e-6)

    worst_stochastic = 0.0
    for rep in range(REPLICATIONS):
        result = run_simulation(no_fee_config(0.0, sigma=1.0, seed=SEED_BASE + rep))
        realized_ratio = result.metrics.price_end / result.metrics.price_start
        expected = impermanent_loss_analytic(realized_ratio)
        worst_stochastic = max(worst_stochastic, abs(result.metrics.relative_profit - expected))
        assert result.metrics.relative_profit == pytest.approx(expected, abs=1e-4)

    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    report(
        1,
        "analytic loss reproduction",
        f"max err deterministic {worst_deterministic:.2e}, stochastic {worst_stochastic:.2e}, {elapsed:.1f}s",
    )


def test_criterion_2_closed_form_arbitrage_optimality():
    start = time.perf_counter()
    rng = np.random.default_rng(12345)
    n_instances, n_grid = 1000, 10_000
    checked_marginal = 0
    for _ in range(n_instances):
        ra = math.exp(rng.uniform(math.log(1e2), math.log(1e8)))
        rb = math.exp(rng.uniform(math.log(1e2), math.log(1e8)))
        fee = rng.choice([0.0, 0.003, 0.01])
        pool = PoolState(reserve_a=ra, reserve_b=rb, fee=fee)
        spot = spot_price(pool)
        market_price = spot * math.exp(rng.uniform(math.log(0.1), math.log(10.0)))

        delta_a, delta_b = optimal_trade(pool, market_price, ArbDirection.BUY_A)
        profit_closed = market_price * delta_a - delta_b

        gamma = 1.0 - fee
        grid = np.linspace(0.0, ra * (1 - 1e-9), n_grid)
        grid_cost = (ra * rb / (ra - grid) - rb) / gamma
        grid_profit = market_price * grid - grid_cost
        best = int(np.argmax(grid_profit))
        cell = grid[1] - grid[0]
        noise = 1e-12 * (market_price * ra + rb)

        assert profit_closed >= grid_profit[best] - noise
        if grid_profit[best] > noise:
            assert abs(delta_a - grid[best]) <= cell

        if delta_a > 0.0:
            marginal_cost = ra * rb / (gamma * (ra - delta_a) ** 2)
            assert marginal_cost == pytest.approx(market_price, rel=1e-9)
            checked_marginal += 1

    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    assert checked_marginal > 300  # the price draw puts plenty of mass above spot
    report(2, "closed-form arbitrage optimality", f"{n_instances} instances, {elapsed:.1f}s")


def test_criterion_3_invariant_suite():
    start = time.perf_counter()
    rng = np.random.default_rng(777)

    # no-fee swaps preserve the reserve product to 1e-9 relative
    for _ in range(500):
        ra, rb = np.exp(rng.uniform(np.log(1e2), np.log(1e8), size=2))
        pool = PoolState(reserve_a=ra, reserve_b=rb, fee=0.0)
        swap = quote_b_for_a(pool, rb * math.exp(rng.uniform(math.log(1e-6), math.log(10.0))))
        assert abs(swap.pool_after.k - pool.k) / pool.k <= 1e-9

    # positive-fee swaps strictly grow the product, in both directions
    for _ in range(500):
        ra, rb = np.exp(rng.uniform(np.log(1e2), np.log(1e8), size=2))
        pool = PoolState(reserve_a=ra, reserve_b=rb, fee=0.003)
        assert quote_b_for_a(pool, 0.01 * rb).pool_after.k > pool.k
        assert quote_a_for_b(pool, 0.01 * ra).pool_after.k > pool.k

    # realized exchange rate decreases with trade size
    pool = PoolState(reserve_a=45_000.0, reserve_b=125e6, fee=0.003)
    sizes = np.logspace(0, 7, 50)
    rates = [quote_b_for_a(pool, s).amount_out / s for s in sizes]
    assert all(r2 < r1 for r1, r2 in zip(rates, rates[1:]))

    # post-arbitrage spot inside the no-arbitrage band
    for _ in range(500):
        ra, rb = np.exp(rng.uniform(np.log(1e2), np.log(1e8), size=2))
        fee = rng.choice([0.0, 0.003, 0.01])
        pool = PoolState(reserve_a=ra, reserve_b=rb, fee=fee)
        market_price = spot_price(pool) * math.exp(rng.uniform(math.log(0.1), math.log(10.0)))
        params = ArbParams(tau=0.002)
        after, outcome = execute_arbitrage(pool, market_price, params)
        if outcome.direction is not ArbDirection.NONE:
            margin = 1.0 - fee - params.tau
            spot_after = spot_price(after)
            assert market_price * margin * (1 - 1e-12) <= spot_after
            assert spot_after <= market_price / margin * (1 + 1e-12)

    # solvency over a million-step stress run (the engine aborts on breach)
    stress = baseline_config(n_steps=1_000_000)
    result = run_simulation(stress)
    assert math.isfinite(result.metrics.relative_profit)

    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    report(3, "invariant suite incl. 1e6-step stress", f"{elapsed:.1f}s, {result.n_arb_trades} arb trades")


def test_criterion_4_fee_region_signs():
    start = time.perf_counter()
    base = baseline_config(n_steps=DESK_STEPS)
    spec = SweepSpec(Experiment.GROWTH, (-0.9, -0.5, 0.0, 1.0), REPLICATIONS, base, seed_base=SEED_BASE)
    curve = sweep(spec).curve()
    means = {param: mean for param, mean, _ in curve}
    assert means[-0.9] < 0
    assert means[-0.5] > 0
    assert means[0.0] > 0
    assert means[1.0] > 0
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    report(
        4,
        "fee-region sign profile",
        ", ".join(f"{p:+.0%}: {m:+.3f}" for p, m in sorted(means.items())) + f", {elapsed:.0f}s",
    )


def test_criterion_5_arbitrage_cost_monotonicity():
    start = time.perf_counter()
    base = baseline_config(n_steps=DESK_STEPS)
    grid = (0.0, 0.01, 0.02, 0.03, 0.04, 0.05)
    result = sweep(SweepSpec(Experiment.ARB_COST, grid, REPLICATIONS, base, seed_base=SEED_BASE))
    means = [mean for _, mean, _ in result.curve()]
    assert all(m2 <= m1 for m1, m2 in zip(means, means[1:]))

    # replications share seeds across grid points, so the tau effect is
    # paired within each replication; its standard error is the right one
    diff = result.values_for(0) - result.values_for(len(grid) - 1)
    stderr = diff.std(ddof=1) / math.sqrt(len(diff))
    assert diff.mean() > 2 * stderr

    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    report(
        5,
        "arbitrage-cost monotonicity",
        f"means {['%.3f' % m for m in means]}, diff {diff.mean():.3f} vs 2se {2 * stderr:.3f}, {elapsed:.0f}s",
    )


def test_criterion_6_standard_results():
    start = time.perf_counter()
    base = baseline_config(n_steps=DESK_STEPS)

    activity = sweep(
        SweepSpec(Experiment.TRADING_ACTIVITY, (4, 2, 1), REPLICATIONS, base, seed_base=SEED_BASE)
    ).curve()
    activity_means = [mean for _, mean, _ in activity]
    assert activity_means[0] < activity_means[1] < activity_means[2]

    liquidity = sweep(
        SweepSpec(Experiment.LIQUIDITY, (125e6, 250e6, 500e6), REPLICATIONS, base, seed_base=SEED_BASE)
    ).curve()
    liquidity_means = [mean for _, mean, _ in liquidity]
    assert liquidity_means[0] > liquidity_means[1] > liquidity_means[2]

    elapsed = time.perf_counter() - start
    assert elapsed < 240.0
    report(
        6,
        "standard results",
        f"activity {['%.3f' % m for m in activity_means]}, "
        f"liquidity {['%.3f' % m for m in liquidity_means]}, {elapsed:.0f}s",
    )


def test_criterion_7_gbm_statistics():
    n = 100_000
    sigma, dt = 1.0, 1e-5
    params = GbmParams(p0=2765.0, drift=0.2, sigma=sigma, dt=dt, seed=SEED_BASE)
    path = generate_path(params, n)
    log_returns = np.diff(np.log(path))

    expected_mean = (params.drift - 0.5 * sigma**2) * dt
    stderr = sigma * math.sqrt(dt) / math.sqrt(n)
    assert abs(log_returns.mean() - expected_mean) <= 3 * stderr
    assert log_returns.var(ddof=1) == pytest.approx(sigma**2 * dt, rel=0.05)
    assert np.array_equal(path, generate_path(params, n))
    report(7, "GBM statistics and determinism", f"{n} steps")


def test_criterion_8_end_to_end_determinism(tmp_path):
    base = baseline_config(n_steps=2000)
    spec = SweepSpec(Experiment.GROWTH, (-0.5, 0.0, 0.5), 3, base, seed_base=SEED_BASE)

    write_results(sweep(spec, n_jobs=1), tmp_path / "serial_1")
    write_results(sweep(spec, n_jobs=1), tmp_path / "serial_2")
    write_results(sweep(spec, n_jobs=4), tmp_path / "threaded")

    reference = (tmp_path / "serial_1" / "sweep.csv").read_bytes()
    assert (tmp_path / "serial_2" / "sweep.csv").read_bytes() == reference
    assert (tmp_path / "threaded" / "sweep.csv").read_bytes() == reference
    curve_ref = (tmp_path / "serial_1" / "curve.csv").read_bytes()
    assert (tmp_path / "threaded" / "curve.csv").read_bytes() == curve_ref
    report(8, "end-to-end determinism", "byte-identical CSVs, serial and threaded")
