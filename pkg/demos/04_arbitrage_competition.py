"""
Arbitrage competition helps the liquidity provider
==================================================

Arbitrageur transaction costs proxy how contested arbitrage is: at zero
cost, every divergence is closed immediately (maximum arbitrage volume);
at 5% only large dislocations are worth trading.  Rebalancing losses
depend on where the price ends up, not on how many arbitrage trades it
took to get there, while fee income grows with every trade, so cheaper
arbitrage means more profit for the provider.
"""

import os

from ammsim import Experiment, SweepSpec, baseline_config, sweep, write_results

N_STEPS = 4000
REPLICATIONS = 10
taus = (0.0, 0.005, 0.01, 0.02, 0.03, 0.04, 0.05)

base = baseline_config(n_steps=N_STEPS)
result = sweep(SweepSpec(Experiment.ARB_COST, taus, REPLICATIONS, base, seed_base=1000))

print("tau     mean profit (se)    arb trades/run")
for i, (tau, mean, se) in enumerate(result.curve()):
    rows = result.records[i * REPLICATIONS : (i + 1) * REPLICATIONS]
    trades = sum(r.n_arb_trades for r in rows) / len(rows)
    print(f"{tau:.3f}   {mean:+.4f} ({se:.4f})    {trades:,.0f}")

os.makedirs("demos/output", exist_ok=True)
write_results(result, "demos/output/arb_costs")
print("wrote demos/output/arb_costs/{sweep,curve}.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    curve = result.curve()
    x = [t * 100 for t, _, _ in curve]
    y = [m * 100 for _, m, _ in curve]
    err = [2 * se * 100 for _, _, se in curve]

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.errorbar(x, y, yerr=err, marker="o", capsize=3)
    ax.set_xlabel("arbitrageur transaction cost (%)")
    ax.set_ylabel("relative profit vs. holding (%)")
    ax.set_title("Provider profit falls as arbitrage gets more expensive")
    fig.tight_layout()
    fig.savefig("demos/output/04_arbitrage_competition.png", dpi=120)
    print("wrote demos/output/04_arbitrage_competition.png")
except ImportError:
    print("matplotlib not available, skipping the plot")
