"""Finite-volume contraction experiments with the level-surface shift."""

from .experiment import (ExperimentResult, bump_profile, pseudo_distance_cells,
                         run_contraction_experiment, step_profile)
from .grid import Grid1D
from .scheme import CFL_LIMIT, max_wave_speed, step
from .shift import ShiftState, default_epsilon, v_epsilon

__all__ = [
    "Grid1D",
    "step",
    "max_wave_speed",
    "CFL_LIMIT",
    "v_epsilon",
    "default_epsilon",
    "ShiftState",
    "run_contraction_experiment",
    "ExperimentResult",
    "step_profile",
    "bump_profile",
    "pseudo_distance_cells",
]
