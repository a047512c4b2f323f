"""
Trajectories versus the density matrix
=======================================

Unravel the noisy step into pure-state trajectories with random projective
measurements and compare the averaged distribution with the exact one.
"""

from nuwalk import WalkConfig, evolve, tvd
from nuwalk.experiments import trajectory_oracle

for samples in (1_000, 10_000, 100_000):
    config = WalkConfig.cycle(7, 10, "position", 0.5)
    series, _ = evolve(config, ("distribution",))
    sampled = trajectory_oracle(config, samples, seed=1)
    print(f"{samples:7d} trajectories: tvd = {tvd(series.distributions[-1], sampled):.4f}")
