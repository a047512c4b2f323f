"""
Mixing on a cycle
=================

On an odd cycle the pure walk never settles, but its time average does.
Moderate decoherence makes the walk itself converge to uniform.
"""

from nuwalk.experiments import (
    classical_mixing_time,
    cycle_mixing_run,
    first_step_below,
    walk_mixing_time,
)

N = 29
run = cycle_mixing_run(N, "position", 0.2511, horizon=10 * N)
print("first step within 1/N of uniform:", first_step_below(run.series.tvd, 1 / N))
print("first step with negativity < 0.005:", first_step_below(run.series.negativity, 0.005, start=1))
print("mixing time M(1/N):", run.mixing.mixing_time)

# %%
# Size dependence at epsilon = 0.1: classical, decohered (pN = 3) and the
# time average of the pure walk.
print("  N  classical  decohered  pure-averaged")
for n in (5, 9, 13, 17):
    c = classical_mixing_time(n, 0.1)
    d = walk_mixing_time(n, "both", 3 / n, 0.1, 40 * n)
    a = walk_mixing_time(n, "position", 0.0, 0.1, 100 * n, averaged=True)
    print(f"{n:3d}  {c:9d}  {d:9d}  {a:13d}")
