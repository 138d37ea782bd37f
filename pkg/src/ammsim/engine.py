"""The simulation loop: one price update, trader order, and arbitrage per period.

Each loop iteration represents one simulation period and runs four blocks
in order: the market price advances one GBM step, arbitrageurs check the
pool, the period's trader order (if any) executes, and arbitrageurs check
again.  A thinned trade feed leaves iterations with only the price update
and arbitrage checks, so arbitrage check density does not depend on trader
activity.

Runs are strictly sequential and fully deterministic in the configuration;
distinct runs share no state and may execute concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .arbitrage import ArbDirection, ArbParams, execute_arbitrage
from .feed import EMPTY_FEED, FeedSpec, TradeEvent, TradeFeed, TradeSide, load_replay, synth_feed, to_quantities
from .gbm import GbmParams, generate_path
from .metrics import RunMetrics, compute_metrics
from .pool import PoolState, init_pool, pool_value, quote_a_for_b, quote_b_for_a, spot_price

FeedLike = Union[TradeFeed, FeedSpec, str, Path, None]


class SimulationAbort(RuntimeError):
    """Raised when a run hits a non-finite value or an insolvent pool."""


@dataclass
class SimConfig:
    """Everything needed to reproduce one run.

    ``n_steps`` defaults to the feed length (number of synthetic trades,
    or last replay step + 1); it must be given explicitly for feed-less
    runs.  ``gbm.dt`` has to equal ``horizon_years / n_steps``.
    """

    pool_total_value_b: float
    initial_price: float
    fee: float
    gbm: GbmParams
    feed: FeedLike = None
    arb: ArbParams = field(default_factory=ArbParams)
    horizon_years: float = 1.0
    n_steps: Optional[int] = None
    record_trajectory: bool = False


@dataclass(frozen=True, slots=True)
class SimState:
    """Carry-over state between loop iterations."""

    pool: PoolState
    arb: ArbParams
    n_arb_trades: int = 0
    arb_fee_b: float = 0.0
    trader_fee_b: float = 0.0


@dataclass(frozen=True, slots=True)
class RunResult:
    metrics: RunMetrics
    n_arb_trades: int
    total_arb_fee_b: float
    total_trader_fee_b: float
    # one (step, market_price, spot, pool_value_b) row per iteration, if recorded
    trajectory: Optional[list[tuple[int, float, float, float]]] = None


def materialize_feed(feed: FeedLike) -> TradeFeed:
    """Resolve the feed field of a config to a concrete event sequence."""
    if feed is None:
        return EMPTY_FEED
    if isinstance(feed, TradeFeed):
        return feed
    if isinstance(feed, FeedSpec):
        return synth_feed(feed)
    return load_replay(feed)


def step(state: SimState, market_price: float, event: Optional[TradeEvent] = None) -> SimState:
    """Run one loop iteration after the market price has been updated.

    Order within the iteration: arbitrage check, trader order (if any),
    arbitrage check.  Fees are accumulated in numeraire terms at the
    current market price.
    """
    pool = state.pool
    n_arb = state.n_arb_trades
    arb_fee = state.arb_fee_b
    trader_fee = state.trader_fee_b

    pool, outcome = execute_arbitrage(pool, market_price, state.arb)
    if outcome.direction is not ArbDirection.NONE:
        n_arb += 1
        arb_fee += _fee_value_b(outcome.direction, outcome.fee_paid, market_price)

    if event is not None:
        amount_in = to_quantities(event, market_price)
        if event.side is TradeSide.B_IN:
            swap = quote_b_for_a(pool, amount_in)
            trader_fee += swap.fee_paid
        else:
            swap = quote_a_for_b(pool, amount_in)
            trader_fee += swap.fee_paid * market_price
        pool = swap.pool_after

        pool, outcome = execute_arbitrage(pool, market_price, state.arb)
        if outcome.direction is not ArbDirection.NONE:
            n_arb += 1
            arb_fee += _fee_value_b(outcome.direction, outcome.fee_paid, market_price)

    return SimState(pool=pool, arb=state.arb, n_arb_trades=n_arb, arb_fee_b=arb_fee, trader_fee_b=trader_fee)


def _fee_value_b(direction: ArbDirection, fee_paid: float, market_price: float) -> float:
    # buy-A arbitrage pays its fee in B, buy-B in A
    if direction is ArbDirection.BUY_A:
        return fee_paid
    return fee_paid * market_price


def _resolve_n_steps(config: SimConfig, feed: TradeFeed) -> int:
    if config.n_steps is not None:
        n_steps = int(config.n_steps)
    elif len(feed) > 0:
        n_steps = int(feed.steps[-1]) + 1
    else:
        raise ValueError("n_steps must be given when the trade feed is empty")
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    return n_steps


def run_simulation(config: SimConfig) -> RunResult:
    """Run the full loop over the horizon and compute terminal metrics."""
    feed = materialize_feed(config.feed)
    n_steps = _resolve_n_steps(config, feed)
    if len(feed) > 0:
        if int(feed.steps[-1]) >= n_steps:
            raise ValueError(
                f"feed extends to step {int(feed.steps[-1])} but the run has only {n_steps} steps"
            )
        if (feed.steps[1:] == feed.steps[:-1]).any():
            raise ValueError("feed assigns more than one trade to a single step")
    expected_dt = config.horizon_years / n_steps
    if not math.isclose(config.gbm.dt, expected_dt, rel_tol=1e-9):
        raise ValueError(
            f"gbm.dt = {config.gbm.dt} inconsistent with horizon_years / n_steps = {expected_dt}"
        )

    pool_start = init_pool(config.pool_total_value_b, config.initial_price, config.fee)
    try:
        path = generate_path(config.gbm, n_steps)
    except FloatingPointError as exc:
        raise SimulationAbort(str(exc)) from exc
    state = SimState(pool=pool_start, arb=config.arb)
    trajectory: Optional[list[tuple[int, float, float, float]]] = (
        [] if config.record_trajectory else None
    )

    feed_steps = feed.steps
    next_event_idx = 0
    n_events = len(feed)
    for t in range(n_steps):
        market_price = float(path[t + 1])
        event = None
        if next_event_idx < n_events and feed_steps[next_event_idx] == t:
            event = feed[next_event_idx]
            next_event_idx += 1
        try:
            state = step(state, market_price, event)
        except ValueError as exc:
            # mid-run swap math only raises on numerical pathologies
            raise SimulationAbort(f"step {t}: {exc}") from exc
        pool = state.pool
        if not (
            pool.reserve_a > 0
            and pool.reserve_b > 0
            and math.isfinite(pool.reserve_a)
            and math.isfinite(pool.reserve_b)
        ):
            raise SimulationAbort(
                f"step {t}: pool left the solvent range "
                f"(reserve_a={pool.reserve_a}, reserve_b={pool.reserve_b})"
            )
        if trajectory is not None:
            trajectory.append((t, market_price, spot_price(pool), pool_value(pool, market_price)))

    price_start = float(path[0])
    price_end = float(path[-1])
    metrics = compute_metrics(
        pool_start=pool_start,
        pool_end=state.pool,
        price_start=price_start,
        price_end=price_end,
        fee_value_b=state.arb_fee_b + state.trader_fee_b,
    )
    return RunResult(
        metrics=metrics,
        n_arb_trades=state.n_arb_trades,
        total_arb_fee_b=state.arb_fee_b,
        total_trader_fee_b=state.trader_fee_b,
        trajectory=trajectory,
    )
