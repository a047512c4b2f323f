"""
Coin-position entanglement under noise
======================================

Negativity of the walker's state after each step for three noise rates,
with both coin and position measured.
"""

from nuwalk.experiments import negativity_decay_run

curves = negativity_decay_run(50, [0.0, 0.05, 0.1], target="both")
print("   t   p=0     p=0.05  p=0.1")
for t in range(0, 51, 5):
    print(f"{t:4d}  " + "  ".join(f"{curves[p][t]:.4f}" for p in curves))
