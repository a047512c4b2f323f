"""
A little noise spreads the walk more uniformly
==============================================

Sweep the position-noise rate and compare the final distribution with a top
hat of width ``T/sqrt 2``. The distance dips at a small rate, close to where
the coin and position stop being entangled.
"""

from nuwalk.experiments import first_step_below, sweep_noise

T = 100
grid = [round(0.01 * k, 2) for k in range(11)]
rows = sweep_noise(T, "position", grid)

print("   p    tvd    negativity")
for r in rows:
    print(f"{r.p:5.2f}  {r.tvd_final:.4f}  {r.negativity_final:.2e}")

best = min(rows, key=lambda r: r.tvd_final)
k = first_step_below([r.negativity_final for r in rows], 1e-3)
print(f"closest to the top hat at p={best.p}; negativity below 1e-3 from p={grid[k]}")

# %%
# Coin noise never gets as close.
coin = sweep_noise(T, "coin", grid)
print("best coin-noise tvd:", min(r.tvd_final for r in coin))
