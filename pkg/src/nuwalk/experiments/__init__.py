"""Reproduction drivers built on the walk core and observables."""

from .classical import classical_baseline, classical_mixing_time, classical_probs
from .oracle import trajectory_oracle
from .pure import PureState, pure_distributions
from .resources import (
    Cycle,
    Line,
    ResourceEstimate,
    classical_equivalent_steps,
    classical_estimate,
    resource_estimate,
)
from .runs import (
    CycleRun,
    SweepRow,
    cycle_mixing_run,
    first_step_below,
    negativity_decay_run,
    sweep_noise,
    time_averaged_pure_cycle,
    walk_mixing_time,
    warm_start_distribution,
)
from .scaling import ScalingFit, scaling_fit
