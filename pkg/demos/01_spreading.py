"""
Ballistic spreading on the line
===============================

A noiseless coined walk spreads linearly in time, a classical random walk
only as the square root. Compare both standard deviations.
"""

import numpy as np

from nuwalk import WalkConfig, evolve
from nuwalk.experiments import classical_baseline
from nuwalk.observables import std_dev

T = 100
series, rho = evolve(WalkConfig.line(T), ("sigma",))

# %%
# The quantum spread grows as ``sigma ~ 0.54 T``.
for t in (10, 25, 50, 100):
    print(f"t={t:3d}  sigma_Q={series.sigma[t]:7.3f}  sigma_Q/t={series.sigma[t] / t:.4f}")
print("asymptotic constant sqrt(1 - 1/sqrt 2) =", np.sqrt(1 - 1 / np.sqrt(2)))

# %%
# The classical walk on the same lattice reaches only sqrt(T).
d = classical_baseline(rho.lattice, T)
print(f"classical sigma at T={T}: {std_dev(d):.3f}")
