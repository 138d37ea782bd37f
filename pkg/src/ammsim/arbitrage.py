"""Profit-maximizing arbitrage against the pool.

An arbitrageur watches the external market price ``p_m`` and the pool's
fee-free spot price ``p``.  A trade fires only when the prices diverge by
more than the combined friction of the protocol fee and the arbitrageur's
own transaction cost rate ``tau``:

    buy A from the pool when  p_m > p / (1 - fee - tau)
    buy B from the pool when  p_m < p * (1 - fee - tau)

The trade size maximizes gross profit subject to the fee-adjusted pool
constraint.  Writing ``gamma = 1 - fee``, the interior optimum for the
buy-A direction is

    delta_a* = Ra * (1 - sqrt(p / (gamma * p_m)))
    delta_b* = Rb * (sqrt(gamma * p_m / p) - 1) / gamma

clamped at zero when the divergence cannot cover the fee.  The buy-B
direction uses the same formulas with the roles of the assets exchanged
and the price inverted.  Transaction costs are charged on the
B-denominated notional of the arbitrageur's external-market leg
(``p_m * delta_a`` in both directions) and by default reduce the realized
profit; a trade executes only if the net profit is positive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .pool import PoolState, quote_a_for_b, quote_b_for_a, spot_price


class ArbDirection(Enum):
    BUY_A = "buy_a"
    BUY_B = "buy_b"
    NONE = "none"


@dataclass(frozen=True, slots=True)
class ArbParams:
    """Arbitrageur friction and behaviour switches.

    ``tau`` is the proportional transaction cost on the external leg, a
    proxy for competition intensity.  With ``tau_reduces_profit`` False,
    tau still widens the trigger band but is not subtracted from the
    realized profit.
    """

    tau: float = 0.0
    enabled: bool = True
    tau_reduces_profit: bool = True

    def __post_init__(self) -> None:
        if not 0.0 <= self.tau < 1.0:
            raise ValueError(f"tau must lie in [0, 1), got {self.tau}")


@dataclass(frozen=True, slots=True)
class ArbOutcome:
    """One arbitrage decision: executed quantities and profit, or a no-trade."""

    direction: ArbDirection
    delta_a: float = 0.0
    delta_b: float = 0.0
    gross_profit: float = 0.0
    net_profit: float = 0.0
    fee_paid: float = 0.0  # units of the input asset


NO_TRADE = ArbOutcome(direction=ArbDirection.NONE)


def _band_margin(pool: PoolState, params: ArbParams) -> float:
    margin = 1.0 - pool.fee - params.tau
    if margin <= 0.0:
        raise ValueError(f"fee + tau must be < 1, got {pool.fee + params.tau}")
    return margin


def detect_opportunity(pool: PoolState, market_price: float, params: ArbParams) -> ArbDirection:
    """Classify the price divergence against the no-arbitrage band."""
    if not (market_price > 0 and math.isfinite(market_price)):
        raise ValueError(f"market_price must be positive and finite, got {market_price}")
    margin = _band_margin(pool, params)
    spot = spot_price(pool)
    if market_price > spot / margin:
        return ArbDirection.BUY_A
    if market_price < spot * margin:
        return ArbDirection.BUY_B
    return ArbDirection.NONE


def optimal_trade(
    pool: PoolState, market_price: float, direction: ArbDirection
) -> tuple[float, float]:
    """Closed-form profit-maximizing quantities ``(delta_a, delta_b)``.

    Quantities are clamped to zero when the divergence is inside the fee
    band, so the marginal-profit condition has no positive root.
    """
    if direction is ArbDirection.NONE:
        raise ValueError("optimal_trade requires a trade direction, got NONE")
    gamma = pool.gamma
    spot = spot_price(pool)
    if direction is ArbDirection.BUY_A:
        ratio = spot / (gamma * market_price)
    else:
        ratio = market_price / (gamma * spot)
    if ratio >= 1.0:
        return 0.0, 0.0
    s = math.sqrt(ratio)
    if direction is ArbDirection.BUY_A:
        delta_a = pool.reserve_a * (1.0 - s)
        delta_b = pool.reserve_b * (1.0 / s - 1.0) / gamma
    else:
        delta_b = pool.reserve_b * (1.0 - s)
        delta_a = pool.reserve_a * (1.0 / s - 1.0) / gamma
    return delta_a, delta_b


def execute_arbitrage(
    pool: PoolState, market_price: float, params: ArbParams
) -> tuple[PoolState, ArbOutcome]:
    """Run one arbitrage check and apply the optimal trade if profitable.

    Returns the (possibly unchanged) pool together with the outcome.  The
    executed swap pays the protocol fee like any other trade; ``tau`` is
    settled outside the pool and only gates execution.
    """
    if not params.enabled:
        return pool, NO_TRADE
    direction = detect_opportunity(pool, market_price, params)
    if direction is ArbDirection.NONE:
        return pool, NO_TRADE

    delta_a, delta_b = optimal_trade(pool, market_price, direction)
    # skip float-noise dust trades so repeated checks settle instead of
    # chasing one-ulp residual divergence forever
    if direction is ArbDirection.BUY_A:
        if delta_a <= pool.reserve_a * 1e-14:
            return pool, NO_TRADE
        swap = quote_b_for_a(pool, delta_b)
        delta_a = swap.amount_out
        gross = market_price * delta_a - delta_b
    else:
        if delta_b <= pool.reserve_b * 1e-14:
            return pool, NO_TRADE
        swap = quote_a_for_b(pool, delta_a)
        delta_b = swap.amount_out
        gross = delta_b - market_price * delta_a

    hedge_notional = market_price * delta_a
    net = gross - params.tau * hedge_notional if params.tau_reduces_profit else gross
    if net <= 0.0:
        return pool, NO_TRADE
    outcome = ArbOutcome(
        direction=direction,
        delta_a=delta_a,
        delta_b=delta_b,
        gross_profit=gross,
        net_profit=net,
        fee_paid=swap.fee_paid,
    )
    return swap.pool_after, outcome
