"""
Divergence loss without fees: simulation meets the closed form
==============================================================

With zero fees and zero arbitrage costs, the pool tracks the market price
exactly and the provider's relative loss versus holding is the classic
inversely U-shaped curve 2*sqrt(r)/(1+r) - 1 in the terminal price ratio
r.  Here we run the full simulation loop across a grid of yearly trends
and overlay it on the formula.
"""

import os

import numpy as np

from ammsim import ArbParams, GbmParams, SimConfig, impermanent_loss_analytic, run_simulation
from ammsim.gbm import trend_to_drift

N_STEPS = 4000
trends = np.linspace(-0.9, 1.5, 25)

simulated = []
for trend in trends:
    config = SimConfig(
        pool_total_value_b=250e6,
        initial_price=2765.0,
        fee=0.0,
        gbm=GbmParams(p0=2765.0, drift=trend_to_drift(trend), sigma=0.0, dt=1 / N_STEPS, seed=0),
        feed=None,
        arb=ArbParams(tau=0.0),
        n_steps=N_STEPS,
    )
    simulated.append(run_simulation(config).metrics.relative_profit)

analytic = [impermanent_loss_analytic(1 + t) for t in trends]

print("trend   simulated   closed-form")
for t, sim, ana in zip(trends[::4], simulated[::4], analytic[::4]):
    print(f"{t:+.2f}   {sim:+.6f}   {ana:+.6f}")
print(f"\nmax |simulated - closed form| = {np.max(np.abs(np.array(simulated) - analytic)):.2e}")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(trends * 100, np.array(analytic) * 100, label="closed form", lw=2)
    ax.plot(trends * 100, np.array(simulated) * 100, "o", ms=4, label="simulated (no fees)")
    ax.axhline(0, color="grey", lw=0.8)
    ax.set_xlabel("yearly price trend (%)")
    ax.set_ylabel("relative profit vs. holding (%)")
    ax.set_title("Provider loss without fees")
    ax.legend()
    fig.tight_layout()
    os.makedirs("demos/output", exist_ok=True)
    fig.savefig("demos/output/02_impermanent_loss.png", dpi=120)
    print("wrote demos/output/02_impermanent_loss.png")
except ImportError:
    print("matplotlib not available, skipping the plot")
