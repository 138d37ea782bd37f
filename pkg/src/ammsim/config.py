"""Flat key-value run configuration with baseline defaults.

The config file format is one ``key = value`` per line with ``#``
comments.  Keys follow the baseline calibration table of the reference
WETH/USDC dataset:

    pool_size  initial pool value in numeraire units      (250e6)
    Q          yearly trading volume in numeraire units   (11.9e9)
    g          yearly price trend, e.g. -0.9 for -90%     (0.0)
    sigma      yearly return volatility                   (1.0)
    N          number of trades / simulation periods      (1310000)
    T          horizon in years                           (1.0)
    fee        protocol fee rate                          (0.003)
    tau        arbitrageur transaction cost rate          (0.0)
    seed       base random seed                           (0)
    p0         initial market price, B per A              (2765.0)

plus the synthetic-feed extras ``size_dispersion`` and ``side_prob_a_in``.
Unknown keys are rejected so typos cannot silently fall back to defaults.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Optional, Union

from .arbitrage import ArbParams
from .engine import SimConfig
from .feed import FeedSpec
from .gbm import GbmParams, trend_to_drift


class ConfigError(ValueError):
    """Invalid configuration file or option."""


DEFAULTS: dict[str, float] = {
    "pool_size": 250e6,
    "Q": 11.9e9,
    "g": 0.0,
    "sigma": 1.0,
    "N": 1_310_000,
    "T": 1.0,
    "fee": 0.003,
    "tau": 0.0,
    "seed": 0,
    "p0": 2765.0,
    "size_dispersion": 1.0,
    "side_prob_a_in": 0.5,
}

_INT_KEYS = {"N", "seed"}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, float]:
    """Parse config text into a complete key-value map over the defaults."""
    values = dict(DEFAULTS)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got '{raw.strip()}'")
        key, _, value_s = line.partition("=")
        key = key.strip()
        value_s = value_s.strip()
        if key not in DEFAULTS:
            raise ConfigError(f"{source}:{lineno}: unknown config key '{key}'")
        try:
            value = float(value_s)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: value for '{key}' is not a number: '{value_s}'") from None
        if key in _INT_KEYS:
            if value != int(value):
                raise ConfigError(f"{source}:{lineno}: '{key}' must be an integer, got {value_s}")
            value = int(value)
        values[key] = value
    _validate(values, source)
    return values


def _validate(values: dict[str, float], source: str) -> None:
    def fail(message: str) -> None:
        raise ConfigError(f"{source}: {message}")

    if values["pool_size"] <= 0:
        fail(f"pool_size must be positive, got {values['pool_size']}")
    if values["Q"] <= 0:
        fail(f"Q must be positive, got {values['Q']}")
    if values["g"] <= -1:
        fail(f"g must be > -1, got {values['g']}")
    if values["sigma"] < 0:
        fail(f"sigma must be non-negative, got {values['sigma']}")
    if values["N"] < 1:
        fail(f"N must be >= 1, got {values['N']}")
    if values["T"] <= 0:
        fail(f"T must be positive, got {values['T']}")
    if not 0 <= values["fee"] < 1:
        fail(f"fee must lie in [0, 1), got {values['fee']}")
    if not 0 <= values["tau"] < 1:
        fail(f"tau must lie in [0, 1), got {values['tau']}")
    if values["fee"] + values["tau"] >= 1:
        fail(f"fee + tau must be < 1, got {values['fee'] + values['tau']}")
    if values["p0"] <= 0:
        fail(f"p0 must be positive, got {values['p0']}")
    if values["size_dispersion"] < 0:
        fail(f"size_dispersion must be non-negative, got {values['size_dispersion']}")
    if not 0 <= values["side_prob_a_in"] <= 1:
        fail(f"side_prob_a_in must lie in [0, 1], got {values['side_prob_a_in']}")


def build_sim_config(values: dict[str, float]) -> SimConfig:
    """Turn a validated key-value map into a runnable configuration."""
    n_steps = int(values["N"])
    seed = int(values["seed"])
    horizon = float(values["T"])
    return SimConfig(
        pool_total_value_b=float(values["pool_size"]),
        initial_price=float(values["p0"]),
        fee=float(values["fee"]),
        gbm=GbmParams(
            p0=float(values["p0"]),
            drift=trend_to_drift(float(values["g"])),
            sigma=float(values["sigma"]),
            dt=horizon / n_steps,
            seed=seed,
        ),
        feed=FeedSpec(
            n_trades=n_steps,
            total_volume_b=float(values["Q"]),
            size_dispersion=float(values["size_dispersion"]),
            side_prob_a_in=float(values["side_prob_a_in"]),
            seed=seed,
        ),
        arb=ArbParams(tau=float(values["tau"])),
        horizon_years=horizon,
        n_steps=n_steps,
    )


def load_config(path: Optional[Union[str, Path]] = None) -> SimConfig:
    """Load a config file; with no path, return the full baseline defaults."""
    if path is None:
        return build_sim_config(dict(DEFAULTS))
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    return build_sim_config(parse_config_text(path.read_text(encoding="utf-8"), source=str(path)))


def baseline_config(n_steps: Optional[int] = None, **overrides: float) -> SimConfig:
    """Baseline configuration, optionally desk-scaled to fewer periods.

    Reducing ``N`` keeps the yearly volume Q, so the volume-to-liquidity
    ratio that drives the fee economics is preserved.
    """
    values = dict(DEFAULTS)
    if n_steps is not None:
        values["N"] = int(n_steps)
    for key, value in overrides.items():
        if key not in DEFAULTS:
            raise ConfigError(f"unknown config key '{key}'")
        values[key] = value
    _validate(values, "<baseline>")
    return build_sim_config(values)
