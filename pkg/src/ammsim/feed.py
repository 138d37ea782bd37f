"""Per-step trader orders, replayed from file or synthesized.

Trades are denominated by their value in the numeraire B, so the
B-notional of every order is invariant to the price path; the input
quantity is converted at the prevailing market price when the order is
applied.  Feeds are array-backed, immutable sequences of
:class:`TradeEvent`.

Replay file schema: CSV with header ``step,side,value_b``, side in
{A_IN, B_IN}, value_b a positive decimal in numeraire units, UTF-8, LF
line endings.  Replay data is assumed to be pre-filtered (no MEV trades);
arbitrage is generated endogenously by the simulation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator, Sequence

import numpy as np

_FEED_STREAM = 2  # SeedSequence spawn key, disjoint from the GBM stream


class TradeSide(Enum):
    A_IN = 0
    B_IN = 1


@dataclass(frozen=True, slots=True)
class TradeEvent:
    """One trader order: fires at loop iteration ``step``."""

    step: int
    side: TradeSide
    value_b: float


@dataclass(frozen=True, slots=True)
class FeedSpec:
    """Calibration of a synthetic feed.

    Sizes are log-normal with mean ``total_volume_b / n_trades`` and the
    given log-scale dispersion; sides are i.i.d. with probability
    ``side_prob_a_in`` of selling A into the pool.
    """

    n_trades: int
    total_volume_b: float
    size_dispersion: float = 1.0
    side_prob_a_in: float = 0.5
    seed: int = 0

    def __post_init__(self) -> None:
        if self.n_trades < 1:
            raise ValueError(f"n_trades must be >= 1, got {self.n_trades}")
        if not (self.total_volume_b > 0 and math.isfinite(self.total_volume_b)):
            raise ValueError(f"total_volume_b must be positive, got {self.total_volume_b}")
        if not (self.size_dispersion >= 0 and math.isfinite(self.size_dispersion)):
            raise ValueError(f"size_dispersion must be non-negative, got {self.size_dispersion}")
        if not 0.0 <= self.side_prob_a_in <= 1.0:
            raise ValueError(f"side_prob_a_in must lie in [0, 1], got {self.side_prob_a_in}")


@dataclass(frozen=True, eq=False)
class TradeFeed(Sequence):
    """Array-backed immutable sequence of trade events."""

    steps: np.ndarray
    sides: np.ndarray  # TradeSide values as uint8
    values_b: np.ndarray

    def __post_init__(self) -> None:
        if not (len(self.steps) == len(self.sides) == len(self.values_b)):
            raise ValueError("feed arrays must have equal length")
        if len(self.steps) > 0:
            if (np.diff(self.steps) < 0).any():
                raise ValueError("feed steps must be weakly increasing")
            if self.steps[0] < 0:
                raise ValueError("feed steps must be non-negative")
            if not (self.values_b > 0).all():
                raise ValueError("feed values must be positive")
        for arr in (self.steps, self.sides, self.values_b):
            arr.setflags(write=False)

    @classmethod
    def from_events(cls, events: Sequence[TradeEvent]) -> "TradeFeed":
        return cls(
            steps=np.asarray([e.step for e in events], dtype=np.int64),
            sides=np.asarray([e.side.value for e in events], dtype=np.uint8),
            values_b=np.asarray([e.value_b for e in events], dtype=np.float64),
        )

    def __len__(self) -> int:
        return len(self.steps)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return TradeFeed(
                steps=self.steps[index].copy(),
                sides=self.sides[index].copy(),
                values_b=self.values_b[index].copy(),
            )
        return TradeEvent(
            step=int(self.steps[index]),
            side=TradeSide(int(self.sides[index])),
            value_b=float(self.values_b[index]),
        )

    def __iter__(self) -> Iterator[TradeEvent]:
        for i in range(len(self.steps)):
            yield self[i]

    def total_value_b(self) -> float:
        return float(self.values_b.sum())


EMPTY_FEED = TradeFeed(
    steps=np.empty(0, dtype=np.int64),
    sides=np.empty(0, dtype=np.uint8),
    values_b=np.empty(0, dtype=np.float64),
)


def synth_feed(spec: FeedSpec) -> TradeFeed:
    """Draw a synthetic feed matching the given volume calibration."""
    rng = np.random.default_rng(np.random.SeedSequence(entropy=spec.seed, spawn_key=(_FEED_STREAM,)))
    mean_size = spec.total_volume_b / spec.n_trades
    # log-normal parametrized by its mean: E[X] = exp(mu + s^2/2)
    mu = math.log(mean_size) - 0.5 * spec.size_dispersion**2
    values = rng.lognormal(mean=mu, sigma=spec.size_dispersion, size=spec.n_trades)
    a_in = rng.random(spec.n_trades) < spec.side_prob_a_in
    sides = np.where(a_in, TradeSide.A_IN.value, TradeSide.B_IN.value).astype(np.uint8)
    return TradeFeed(
        steps=np.arange(spec.n_trades, dtype=np.int64),
        sides=sides,
        values_b=values,
    )


def subsample_nth(feed: TradeFeed, n: int) -> TradeFeed:
    """Keep every n-th event (positions 0, n, 2n, ...), steps unchanged.

    Step indices are left at their original values so a thinned feed still
    spans the same simulation horizon.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return feed[::n]


def to_quantities(event: TradeEvent, market_price: float) -> float:
    """Input-asset quantity of an order at the current market price.

    B_IN orders send ``value_b`` units of B; A_IN orders send
    ``value_b / market_price`` units of A, so the B-denominated notional
    is the same either way.
    """
    if not (market_price > 0 and math.isfinite(market_price)):
        raise ValueError(f"market_price must be positive and finite, got {market_price}")
    if event.side is TradeSide.B_IN:
        return event.value_b
    return event.value_b / market_price


_HEADER = "step,side,value_b"
_SIDE_NAMES = {s.name: s for s in TradeSide}


def load_replay(path) -> TradeFeed:
    """Read a replay CSV, validating every row.

    Raises ValueError naming the offending line on any schema violation.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"replay file not found: {path}")
    steps: list[int] = []
    sides: list[int] = []
    values: list[float] = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        header = fh.readline().strip()
        if header != _HEADER:
            raise ValueError(f"{path}:1: expected header '{_HEADER}', got '{header}'")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            if len(parts) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 fields, got {len(parts)}")
            step_s, side_s, value_s = parts
            try:
                step = int(step_s)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: step '{step_s}' is not an integer") from None
            if step < 0:
                raise ValueError(f"{path}:{lineno}: step must be non-negative, got {step}")
            side = _SIDE_NAMES.get(side_s)
            if side is None:
                raise ValueError(f"{path}:{lineno}: side '{side_s}' is not one of A_IN, B_IN")
            try:
                value = float(value_s)
            except ValueError:
                raise ValueError(f"{path}:{lineno}: value_b '{value_s}' is not a number") from None
            if not (value > 0 and math.isfinite(value)):
                raise ValueError(f"{path}:{lineno}: value_b must be positive, got {value}")
            if steps and step < steps[-1]:
                raise ValueError(f"{path}:{lineno}: steps must be weakly increasing")
            steps.append(step)
            sides.append(side.value)
            values.append(value)
    return TradeFeed(
        steps=np.asarray(steps, dtype=np.int64),
        sides=np.asarray(sides, dtype=np.uint8),
        values_b=np.asarray(values, dtype=np.float64),
    )


def write_replay(feed: TradeFeed, path) -> None:
    """Write a feed in the replay CSV schema."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(_HEADER + "\n")
        for i in range(len(feed)):
            side = TradeSide(int(feed.sides[i]))
            fh.write(f"{int(feed.steps[i])},{side.name},{float(feed.values_b[i])!r}\n")
