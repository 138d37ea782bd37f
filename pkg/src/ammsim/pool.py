"""Constant product swap math for a two-asset liquidity pool.

The pool holds a risky asset A (e.g. WETH) and a numeraire B (e.g. USDC);
prices are quoted in units of B per unit of A.  Swaps preserve the reserve
product ``reserve_a * reserve_b`` up to the protocol fee: only the
fee-reduced input moves the exchange rate, but the full input amount is
credited to the reserves, so the product grows with every trade whenever
the fee is positive.

All operations are pure functions over an immutable :class:`PoolState`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum


class SwapDirection(Enum):
    """Which asset enters the pool and which leaves."""

    B_IN_A_OUT = "b_in_a_out"
    A_IN_B_OUT = "a_in_b_out"


@dataclass(frozen=True, slots=True)
class PoolState:
    """Immutable snapshot of the pool reserves.

    ``k`` is the reserve product; it is recomputed on construction so it
    always reflects the current reserves.
    """

    reserve_a: float
    reserve_b: float
    fee: float = 0.0
    k: float = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not (self.reserve_a > 0 and math.isfinite(self.reserve_a)):
            raise ValueError(f"reserve_a must be positive and finite, got {self.reserve_a}")
        if not (self.reserve_b > 0 and math.isfinite(self.reserve_b)):
            raise ValueError(f"reserve_b must be positive and finite, got {self.reserve_b}")
        if not 0.0 <= self.fee < 1.0:
            raise ValueError(f"fee must lie in [0, 1), got {self.fee}")
        if self.k is None:
            object.__setattr__(self, "k", self.reserve_a * self.reserve_b)

    @property
    def gamma(self) -> float:
        """Fraction of an input amount credited in the swap formula (1 - fee)."""
        return 1.0 - self.fee


@dataclass(frozen=True, slots=True)
class SwapResult:
    """Outcome of a single swap against the pool.

    ``fee_paid`` is denominated in the input asset; the full input amount
    (fee included) ends up in the input-side reserve of ``pool_after``.
    """

    direction: SwapDirection
    amount_in: float
    amount_out: float
    fee_paid: float
    pool_after: PoolState


def init_pool(total_value_b: float, initial_price: float, fee: float = 0.0) -> PoolState:
    """Create a pool worth ``total_value_b`` numeraire units, split 50/50 by value.

    Half the value is deposited as B, the other half as A converted at
    ``initial_price``, so the pool's spot price starts exactly at the
    market price.
    """
    if not (total_value_b > 0 and math.isfinite(total_value_b)):
        raise ValueError(f"total_value_b must be positive and finite, got {total_value_b}")
    if not (initial_price > 0 and math.isfinite(initial_price)):
        raise ValueError(f"initial_price must be positive and finite, got {initial_price}")
    reserve_b = total_value_b / 2.0
    reserve_a = reserve_b / initial_price
    return PoolState(reserve_a=reserve_a, reserve_b=reserve_b, fee=fee)


def _check_amount(amount: float, name: str) -> None:
    if not (amount > 0 and math.isfinite(amount)):
        raise ValueError(f"{name} must be positive and finite, got {amount}")


def quote_b_for_a(pool: PoolState, delta_b: float) -> SwapResult:
    """Swap ``delta_b`` units of B into the pool and receive A.

    The output solves ``(Ra - out) * (Rb + gamma * delta_b) = Ra * Rb``:

        out = Ra * gamma * delta_b / (Rb + gamma * delta_b)
    """
    _check_amount(delta_b, "delta_b")
    effective_in = pool.gamma * delta_b
    amount_out = pool.reserve_a * effective_in / (pool.reserve_b + effective_in)
    pool_after = PoolState(
        reserve_a=pool.reserve_a - amount_out,
        reserve_b=pool.reserve_b + delta_b,
        fee=pool.fee,
    )
    return SwapResult(
        direction=SwapDirection.B_IN_A_OUT,
        amount_in=delta_b,
        amount_out=amount_out,
        fee_paid=pool.fee * delta_b,
        pool_after=pool_after,
    )


def quote_a_for_b(pool: PoolState, delta_a: float) -> SwapResult:
    """Swap ``delta_a`` units of A into the pool and receive B (mirror of
    :func:`quote_b_for_a`)."""
    _check_amount(delta_a, "delta_a")
    effective_in = pool.gamma * delta_a
    amount_out = pool.reserve_b * effective_in / (pool.reserve_a + effective_in)
    pool_after = PoolState(
        reserve_a=pool.reserve_a + delta_a,
        reserve_b=pool.reserve_b - amount_out,
        fee=pool.fee,
    )
    return SwapResult(
        direction=SwapDirection.A_IN_B_OUT,
        amount_in=delta_a,
        amount_out=amount_out,
        fee_paid=pool.fee * delta_a,
        pool_after=pool_after,
    )


def spot_price(pool: PoolState) -> float:
    """Fee-free mid price of A in units of B: the ratio of the reserves."""
    return pool.reserve_b / pool.reserve_a


def effective_ask_price(pool: PoolState) -> float:
    """Marginal price an infinitesimal buyer of A actually pays, fee included."""
    return spot_price(pool) / pool.gamma


def pool_value(pool: PoolState, market_price: float) -> float:
    """Total pool value in numeraire units at the external market price."""
    if not (market_price > 0 and math.isfinite(market_price)):
        raise ValueError(f"market_price must be positive and finite, got {market_price}")
    return pool.reserve_a * market_price + pool.reserve_b
