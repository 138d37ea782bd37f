"""
Swap mechanics of a constant-product pool
=========================================

Build a small WETH/USDC-style pool, quote trades against it, and look at
how the realized exchange rate worsens with trade size and with the
protocol fee.
"""

import numpy as np

from ammsim import effective_ask_price, init_pool, quote_b_for_a, spot_price

# A pool worth 250m USDC at a market price of 2,765 USDC per WETH,
# split 50/50 by value like the production baseline.
pool = init_pool(250e6, 2765.0, fee=0.003)
print(f"reserves: {pool.reserve_a:,.2f} WETH / {pool.reserve_b:,.0f} USDC")
print(f"spot price          : {spot_price(pool):,.2f} USDC per WETH")
print(f"marginal ask w/ fee : {effective_ask_price(pool):,.2f} USDC per WETH")

# Quote a 1m USDC buy of WETH: the full input lands in the pool, the
# fee-reduced part sets the exchange rate.
swap = quote_b_for_a(pool, 1e6)
print(f"\n1m USDC buys {swap.amount_out:,.4f} WETH "
      f"(avg price {swap.amount_in / swap.amount_out:,.2f}, fee {swap.fee_paid:,.0f} USDC)")
print(f"reserve product grew by {swap.pool_after.k / pool.k - 1:.2e} (fee retention)")

# Realized price as a function of trade size: slippage is linear in the
# trade's share of the reserves for small trades, and explodes as the
# trade starts to dominate the pool.
sizes = np.logspace(4, 8, 60)  # 10k .. 100m USDC
avg_prices = {}
for fee in (0.0, 0.003, 0.01):
    p = init_pool(250e6, 2765.0, fee=fee)
    avg_prices[fee] = np.array([s / quote_b_for_a(p, s).amount_out for s in sizes])

rel_slippage = (avg_prices[0.003] / 2765.0 - 1) * 100
print("\ntrade size -> paid premium over spot (fee 0.3%):")
for s, prem in zip(sizes[::12], rel_slippage[::12]):
    print(f"  {s:>12,.0f} USDC : {prem:6.3f}%")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for fee, prices in avg_prices.items():
        ax.semilogx(sizes, prices, label=f"fee = {fee:.1%}")
    ax.axhline(2765.0, color="grey", lw=0.8, ls="--", label="spot")
    ax.set_xlabel("trade size (USDC)")
    ax.set_ylabel("average price paid (USDC/WETH)")
    ax.set_title("Price impact on a 250m USDC constant-product pool")
    ax.legend()
    fig.tight_layout()
    out = "demos/output/01_swap_mechanics.png"
    import os

    os.makedirs("demos/output", exist_ok=True)
    fig.savefig(out, dpi=120)
    print(f"\nwrote {out}")
except ImportError:
    print("\nmatplotlib not available, skipping the plot")
