"""Geometric Brownian motion price feed for the external market.

Each step multiplies the previous price by

    exp((drift - sigma^2 / 2) * dt + sigma * sqrt(dt) * z)

with ``z`` a standard normal draw.  Draws come from numpy's PCG64 seeded
through a SeedSequence with a module-specific stream key, so paths are
bit-reproducible for a given seed and statistically independent across
seeds and across the other random streams in this package.

A yearly price trend ``x`` (e.g. -0.9 for a 90% drop) maps to the drift
``log(1 + x)``: the zero-volatility path then ends exactly at
``p0 * (1 + x)`` and for positive volatility the mean terminal price does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_GBM_STREAM = 1  # SeedSequence spawn key; keeps this stream disjoint from the trade feed


@dataclass(frozen=True, slots=True)
class GbmParams:
    """Parameters of the price process.

    ``dt`` is the step size in years; for a run of N steps over horizon T
    it must equal T / N.
    """

    p0: float
    drift: float = 0.0
    sigma: float = 1.0
    dt: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if not (self.p0 > 0 and math.isfinite(self.p0)):
            raise ValueError(f"p0 must be positive and finite, got {self.p0}")
        if not math.isfinite(self.drift):
            raise ValueError(f"drift must be finite, got {self.drift}")
        if not (self.sigma >= 0 and math.isfinite(self.sigma)):
            raise ValueError(f"sigma must be non-negative and finite, got {self.sigma}")
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ValueError(f"dt must be positive and finite, got {self.dt}")


def trend_to_drift(trend: float) -> float:
    """Map a yearly growth rate (e.g. +0.5 for +50%) to the GBM drift."""
    if not (trend > -1.0 and math.isfinite(trend)):
        raise ValueError(f"trend must be a finite value > -1, got {trend}")
    return math.log1p(trend)


def _increment_terms(params: GbmParams) -> tuple[float, float]:
    drift_term = (params.drift - 0.5 * params.sigma * params.sigma) * params.dt
    vol_term = params.sigma * math.sqrt(params.dt)
    return drift_term, vol_term


def gbm_step(p_prev: float, params: GbmParams, z: float) -> float:
    """Advance the price by one step given the normal draw ``z``."""
    if not (p_prev > 0 and math.isfinite(p_prev)):
        raise ValueError(f"p_prev must be positive and finite, got {p_prev}")
    if not math.isfinite(z):
        raise ValueError(f"z must be finite, got {z}")
    drift_term, vol_term = _increment_terms(params)
    # np.exp (not math.exp) so single steps reproduce generate_path bit for bit
    return float(p_prev * np.exp(drift_term + vol_term * z))


def generate_path(params: GbmParams, n_steps: int) -> np.ndarray:
    """Generate the full price path of length ``n_steps + 1``.

    The path is a deterministic function of (params, seed); element i+1
    equals ``gbm_step`` applied to element i with the i-th draw of the
    seeded stream.
    """
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    rng = np.random.default_rng(np.random.SeedSequence(entropy=params.seed, spawn_key=(_GBM_STREAM,)))
    z = rng.standard_normal(n_steps)
    drift_term, vol_term = _increment_terms(params)
    with np.errstate(over="ignore"):  # overflow is caught by the range check below
        factors = np.exp(drift_term + vol_term * z)
        # cumprod over [p0, f1, f2, ...] multiplies left to right, matching iterated gbm_step
        prices = np.cumprod(np.concatenate(([params.p0], factors)))
    if not np.isfinite(prices).all() or not (prices > 0).all():
        raise FloatingPointError("generated price path left the positive finite range")
    return prices


def save_path(prices: np.ndarray, path) -> None:
    """Write a price path as a two-column text table (step_index, price)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for i, p in enumerate(prices):
            fh.write(f"{i} {float(p)!r}\n")


def load_path(path) -> np.ndarray:
    """Read a price path written by :func:`save_path`."""
    data = np.loadtxt(path, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError(f"expected two columns (step_index, price) in {path}")
    prices = data[:, 1]
    if not (prices > 0).all():
        raise ValueError(f"non-positive price in {path}")
    return prices
