"""Agent-based Monte Carlo simulator of a constant-product AMM liquidity pool.

Quantifies liquidity-provider profit under interacting traders and
profit-maximizing arbitrageurs: swap math, closed-form arbitrage sizing,
a GBM market price feed, the period-by-period simulation loop, and a
parameter-sweep harness with CSV output.
"""

from .arbitrage import (
    ArbDirection,
    ArbOutcome,
    ArbParams,
    detect_opportunity,
    execute_arbitrage,
    optimal_trade,
)
from .config import ConfigError, DEFAULTS, baseline_config, load_config
from .engine import RunResult, SimConfig, SimState, SimulationAbort, run_simulation, step
from .experiments import (
    DEFAULT_GRIDS,
    Experiment,
    RunRecord,
    SweepResult,
    SweepSpec,
    sweep,
    write_results,
)
from .feed import (
    EMPTY_FEED,
    FeedSpec,
    TradeEvent,
    TradeFeed,
    TradeSide,
    load_replay,
    subsample_nth,
    synth_feed,
    to_quantities,
    write_replay,
)
from .gbm import GbmParams, gbm_step, generate_path, load_path, save_path, trend_to_drift
from .metrics import (
    RunMetrics,
    compute_metrics,
    hold_benchmark,
    impermanent_loss_analytic,
    relative_gain_no_fee,
)
from .pool import (
    PoolState,
    SwapDirection,
    SwapResult,
    effective_ask_price,
    init_pool,
    pool_value,
    quote_a_for_b,
    quote_b_for_a,
    spot_price,
)

__version__ = "0.1.0"
