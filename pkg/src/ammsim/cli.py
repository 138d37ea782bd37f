"""Command-line entry point.

Subcommands:

    simulate     run a single simulation and print terminal metrics
    sweep        run one of the experiments and write sweep.csv / curve.csv
    analytic-il  evaluate the closed-form divergence-loss curve on a ratio grid
    gen-feed     write a synthetic trade feed in the replay CSV schema

Exit codes: 0 success, 1 configuration error, 2 runtime abort, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from .config import ConfigError, load_config
from .engine import SimulationAbort, run_simulation
from .experiments import DEFAULT_GRIDS, Experiment, SweepSpec, sweep, write_results
from .feed import FeedSpec, synth_feed, write_replay
from .metrics import impermanent_loss_analytic, relative_gain_no_fee


class _Parser(argparse.ArgumentParser):
    # route usage errors through the config-error exit code
    def error(self, message: str):
        raise ConfigError(message)


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise ConfigError(f"--grid must be a comma-separated list of numbers, got '{text}'") from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ammsim", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a single simulation")
    p_sim.add_argument("--config", type=Path, default=None, help="config file (defaults to baseline)")
    p_sim.add_argument("--seed", type=int, default=None, help="override the config seed")
    p_sim.add_argument("--out", type=Path, default=None, help="directory for run.csv")

    p_sweep = sub.add_parser("sweep", help="run an experiment sweep")
    p_sweep.add_argument("--config", type=Path, default=None, help="base config file")
    p_sweep.add_argument(
        "--experiment",
        required=True,
        choices=[e.value for e in Experiment],
        help="which lever to sweep",
    )
    p_sweep.add_argument("--grid", type=str, default=None, help="comma-separated grid values")
    p_sweep.add_argument("--replications", type=int, default=20)
    p_sweep.add_argument("--seed", type=int, default=0, help="seed base; replication r uses seed+r")
    p_sweep.add_argument("--out", type=Path, required=True, help="output directory")
    p_sweep.add_argument("--jobs", type=int, default=1, help="concurrent replication workers")

    p_il = sub.add_parser("analytic-il", help="closed-form loss for a price-ratio grid")
    p_il.add_argument("--grid", type=str, default=None, help="comma-separated price ratios")
    p_il.add_argument("--out", type=Path, default=None, help="output CSV file (default stdout)")

    p_feed = sub.add_parser("gen-feed", help="write a synthetic replay CSV")
    p_feed.add_argument("--config", type=Path, default=None, help="config supplying N, Q and seed")
    p_feed.add_argument("--trades", type=int, default=None, help="override the number of trades")
    p_feed.add_argument("--volume", type=float, default=None, help="override the total volume")
    p_feed.add_argument("--seed", type=int, default=None, help="override the feed seed")
    p_feed.add_argument("--out", type=Path, required=True, help="output CSV file")

    return parser


def _cmd_simulate(args) -> int:
    config = load_config(args.config)
    if args.seed is not None:
        config.gbm = replace(config.gbm, seed=args.seed)
        if isinstance(config.feed, FeedSpec):
            config.feed = replace(config.feed, seed=args.seed)
    result = run_simulation(config)
    m = result.metrics
    rows = [
        ("relative_profit", m.relative_profit),
        ("fee_gain", m.fee_contribution),
        ("rebalancing_component", m.rebalancing_component),
        ("lp_gain", m.lp_gain),
        ("hold_gain", m.hold_gain),
        ("value_start_b", m.value_start_b),
        ("value_end_b", m.value_end_b),
        ("price_start", m.price_start),
        ("price_end", m.price_end),
        ("n_arb_trades", result.n_arb_trades),
        ("total_arb_fee_b", result.total_arb_fee_b),
        ("total_trader_fee_b", result.total_trader_fee_b),
    ]
    for name, value in rows:
        print(f"{name} = {value!r}")
    if args.out is not None:
        args.out.mkdir(parents=True, exist_ok=True)
        with open(args.out / "run.csv", "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(name for name, _ in rows) + "\n")
            fh.write(",".join(repr(value) for _, value in rows) + "\n")
    return 0


def _cmd_sweep(args) -> int:
    base = load_config(args.config)
    experiment = Experiment(args.experiment)
    grid = _parse_grid(args.grid) if args.grid is not None else DEFAULT_GRIDS[experiment]
    spec = SweepSpec(
        experiment=experiment,
        grid=grid,
        replications=args.replications,
        base=base,
        seed_base=args.seed,
    )
    result = sweep(spec, n_jobs=args.jobs)
    sweep_path, curve_path = write_results(result, args.out)
    print(f"wrote {sweep_path} and {curve_path}")
    return 0


def _cmd_analytic_il(args) -> int:
    if args.grid is not None:
        ratios = _parse_grid(args.grid)
    else:
        ratios = tuple(i / 10 for i in range(1, 41))  # 0.1 .. 4.0
    lines = ["ratio,relative_gain,impermanent_loss"]
    for r in ratios:
        lines.append(f"{r!r},{relative_gain_no_fee(1.0, r)!r},{impermanent_loss_analytic(r)!r}")
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text, encoding="utf-8")
    return 0


def _cmd_gen_feed(args) -> int:
    config = load_config(args.config)
    feed_spec = config.feed
    assert isinstance(feed_spec, FeedSpec)
    if args.trades is not None:
        feed_spec = replace(feed_spec, n_trades=args.trades)
    if args.volume is not None:
        feed_spec = replace(feed_spec, total_volume_b=args.volume)
    if args.seed is not None:
        feed_spec = replace(feed_spec, seed=args.seed)
    write_replay(synth_feed(feed_spec), args.out)
    print(f"wrote {args.out}")
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "analytic-il": _cmd_analytic_il,
    "gen-feed": _cmd_gen_feed,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SimulationAbort as exc:
        print(f"runtime abort: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
