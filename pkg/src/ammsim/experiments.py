"""Parameter sweeps with Monte Carlo replication over the simulation.

Four experiments vary one lever each around a common base configuration:

    trading_activity   thin the trade feed to every n-th order
    liquidity          scale the initial pool value at fixed volume
    growth             yearly price trend of the risky asset
    growth_no_fee      same trend sweep with fee and tau forced to zero
    arb_cost           arbitrageur transaction cost rate tau

Replication r of every grid point uses seed ``seed_base + r``, so grid
points share random numbers and differences between them are paired.
Results are written as two CSV tables: ``sweep.csv`` with one row per
(grid point, replication) and ``curve.csv`` with the per-point mean and
standard error, ready for plotting.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path
from typing import Sequence, Union

import numpy as np

from .engine import RunResult, SimConfig, materialize_feed, run_simulation
from .feed import FeedSpec, subsample_nth
from .gbm import trend_to_drift


class Experiment(Enum):
    TRADING_ACTIVITY = "trading_activity"
    LIQUIDITY = "liquidity"
    GROWTH = "growth"
    GROWTH_NO_FEE = "growth_no_fee"
    ARB_COST = "arb_cost"


@dataclass(frozen=True)
class SweepSpec:
    experiment: Experiment
    grid: Sequence[float]
    replications: int
    base: SimConfig
    seed_base: int = 0

    def __post_init__(self) -> None:
        if len(self.grid) == 0:
            raise ValueError("grid must be non-empty")
        if self.replications < 1:
            raise ValueError(f"replications must be >= 1, got {self.replications}")


@dataclass(frozen=True, slots=True)
class RunRecord:
    """One row of sweep.csv."""

    experiment: str
    param: float
    replication: int
    seed: int
    relative_profit: float
    fee_gain: float  # fee contribution, as a fraction of initial pool value
    rebalancing_component: float
    n_arb_trades: int
    price_start: float
    price_end: float


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    records: list[RunRecord]  # ordered by (grid position, replication)

    def values_for(self, grid_index: int) -> np.ndarray:
        n_rep = self.spec.replications
        rows = self.records[grid_index * n_rep : (grid_index + 1) * n_rep]
        return np.asarray([r.relative_profit for r in rows])

    def curve(self) -> list[tuple[float, float, float]]:
        """Per grid point: (param, mean relative profit, standard error)."""
        out = []
        for i, param in enumerate(self.spec.grid):
            values = self.values_for(i)
            mean = float(np.mean(values))
            stderr = float(np.std(values, ddof=1) / math.sqrt(len(values))) if len(values) > 1 else 0.0
            out.append((float(param), mean, stderr))
        return out


def make_run_config(spec: SweepSpec, param: float, replication: int) -> SimConfig:
    """Build the run configuration for one (grid point, replication) cell."""
    base = spec.base
    seed = spec.seed_base + replication
    gbm = replace(base.gbm, seed=seed)
    feed = base.feed
    if isinstance(feed, FeedSpec):
        feed = replace(feed, seed=seed)
    config = replace(base, gbm=gbm, feed=feed)

    exp = spec.experiment
    if exp is Experiment.TRADING_ACTIVITY:
        n = int(param)
        if n != param or n < 1:
            raise ValueError(f"trading_activity grid values must be integers >= 1, got {param}")
        full = materialize_feed(config.feed)
        if config.n_steps is None:
            config.n_steps = len(full)
        config.feed = subsample_nth(full, n)
    elif exp is Experiment.LIQUIDITY:
        config.pool_total_value_b = float(param)
    elif exp is Experiment.GROWTH:
        config.gbm = replace(config.gbm, drift=trend_to_drift(float(param)))
    elif exp is Experiment.GROWTH_NO_FEE:
        config.gbm = replace(config.gbm, drift=trend_to_drift(float(param)))
        config.fee = 0.0
        config.arb = replace(config.arb, tau=0.0)
    elif exp is Experiment.ARB_COST:
        config.arb = replace(config.arb, tau=float(param))
    return config


def _run_cell(spec: SweepSpec, grid_index: int, replication: int) -> RunRecord:
    param = spec.grid[grid_index]
    config = make_run_config(spec, param, replication)
    result: RunResult = run_simulation(config)
    m = result.metrics
    return RunRecord(
        experiment=spec.experiment.value,
        param=float(param),
        replication=replication,
        seed=spec.seed_base + replication,
        relative_profit=m.relative_profit,
        fee_gain=m.fee_contribution,
        rebalancing_component=m.rebalancing_component,
        n_arb_trades=result.n_arb_trades,
        price_start=m.price_start,
        price_end=m.price_end,
    )


def sweep(spec: SweepSpec, n_jobs: int = 1) -> SweepResult:
    """Run every (grid point, replication) cell; results do not depend on n_jobs.

    Cells are independent, so they may be dispatched to worker threads;
    records are assembled in (grid position, replication) order either way.
    """
    cells = [(i, r) for i in range(len(spec.grid)) for r in range(spec.replications)]
    if n_jobs <= 1:
        records = [_run_cell(spec, i, r) for i, r in cells]
    else:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            records = list(pool.map(lambda cell: _run_cell(spec, *cell), cells))
    return SweepResult(spec=spec, records=records)


SWEEP_HEADER = (
    "experiment,param,replication,seed,relative_profit,fee_gain,"
    "rebalancing_component,n_arb_trades,p1,pT"
)
CURVE_HEADER = "param,mean,stderr"


def write_results(result: SweepResult, out_dir: Union[str, Path]) -> tuple[Path, Path]:
    """Write sweep.csv and curve.csv; floats use shortest round-trip form."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sweep_path = out_dir / "sweep.csv"
    curve_path = out_dir / "curve.csv"

    with open(sweep_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(SWEEP_HEADER + "\n")
        for r in result.records:
            fh.write(
                f"{r.experiment},{r.param!r},{r.replication},{r.seed},"
                f"{r.relative_profit!r},{r.fee_gain!r},{r.rebalancing_component!r},"
                f"{r.n_arb_trades},{r.price_start!r},{r.price_end!r}\n"
            )

    with open(curve_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CURVE_HEADER + "\n")
        for param, mean, stderr in result.curve():
            fh.write(f"{param!r},{mean!r},{stderr!r}\n")

    return sweep_path, curve_path


DEFAULT_GRIDS: dict[Experiment, tuple[float, ...]] = {
    Experiment.TRADING_ACTIVITY: (4, 2, 1),
    Experiment.LIQUIDITY: (125e6, 250e6, 500e6),
    Experiment.GROWTH: (-0.9, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 0.9),
    Experiment.GROWTH_NO_FEE: (-0.9, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 0.9),
    Experiment.ARB_COST: (0.0, 0.01, 0.02, 0.03, 0.04, 0.05),
}
