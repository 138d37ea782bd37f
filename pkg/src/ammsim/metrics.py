"""Liquidity-provider outcome metrics.

The provider's benchmark is holding the initial reserves outside the pool.
Relative profit is the ratio of the pool's value growth to that hold
benchmark, minus one; it decomposes exactly into the fee contribution
(cumulative fees over initial pool value) and a rebalancing component.

For a fee-free pool kept at the market price by arbitrage, relative
profit reduces to the classic divergence-loss curve

    2 * sqrt(r) / (1 + r) - 1,   r = price_end / price_start

which is non-positive everywhere and zero only at r = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .pool import PoolState, pool_value


@dataclass(frozen=True, slots=True)
class RunMetrics:
    """Terminal metrics of one simulation run (values in numeraire B)."""

    value_start_b: float
    value_end_b: float
    lp_gain: float  # value_end_b / value_start_b
    hold_gain: float  # hold-benchmark value ratio over the same prices
    relative_profit: float  # lp_gain / hold_gain - 1
    fee_gain_b: float  # cumulative fees, valued at collection-time prices
    rebalancing_component: float  # relative_profit minus the fee contribution
    price_start: float
    price_end: float

    @property
    def fee_contribution(self) -> float:
        """Fee share of relative profit: fee_gain_b / value_start_b."""
        return self.fee_gain_b / self.value_start_b


def _check_price(value: float, name: str) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be positive and finite, got {value}")


def relative_gain_no_fee(price_start: float, price_end: float) -> float:
    """Fee-free pool value ratio between two market prices: sqrt of the price ratio."""
    _check_price(price_start, "price_start")
    _check_price(price_end, "price_end")
    return math.sqrt(price_end / price_start)


def impermanent_loss_analytic(price_ratio: float) -> float:
    """Closed-form relative loss of a fee-free pool versus holding.

    Symmetric in ``price_ratio`` and ``1 / price_ratio``; at most zero.
    """
    _check_price(price_ratio, "price_ratio")
    return 2.0 * math.sqrt(price_ratio) / (1.0 + price_ratio) - 1.0


def hold_benchmark(pool_start: PoolState, price_start: float, price_end: float) -> float:
    """Value ratio of holding the initial reserves outside the pool."""
    _check_price(price_start, "price_start")
    _check_price(price_end, "price_end")
    return pool_value(pool_start, price_end) / pool_value(pool_start, price_start)


def compute_metrics(
    pool_start: PoolState,
    pool_end: PoolState,
    price_start: float,
    price_end: float,
    fee_value_b: float,
) -> RunMetrics:
    """Assemble terminal metrics from a completed run.

    ``fee_value_b`` is the cumulative fee income, each fee valued in B at
    the market price of the step it was collected.
    """
    value_start = pool_value(pool_start, price_start)
    value_end = pool_value(pool_end, price_end)
    lp_gain = value_end / value_start
    hold_gain = hold_benchmark(pool_start, price_start, price_end)
    relative_profit = lp_gain / hold_gain - 1.0
    fee_contribution = fee_value_b / value_start
    return RunMetrics(
        value_start_b=value_start,
        value_end_b=value_end,
        lp_gain=lp_gain,
        hold_gain=hold_gain,
        relative_profit=relative_profit,
        fee_gain_b=fee_value_b,
        rebalancing_component=relative_profit - fee_contribution,
        price_start=price_start,
        price_end=price_end,
    )
