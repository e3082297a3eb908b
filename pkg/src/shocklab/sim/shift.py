"""The regularized shift velocity and the evolving shift record.

The shift follows dh/dt = V_eps(u(t, h(t))) with

    V_eps(u) = [a q(u,u_r) - q(u,u_l) - eps]_+ / (a eta(u|u_r) - eta(u|u_l)),

zero on the level surface Sigma_a (where the denominator vanishes; the
positive-part clamp already kills the numerator on a neighborhood of it).
The positive regularization eps keeps V_eps Lipschitz; it contributes at most
eps per unit time of upward drift to the monitored pseudo-distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..criteria.weighted import WeightedSetup, d_sm


def v_epsilon(setup: WeightedSetup, u: np.ndarray, epsilon: float) -> float:
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    numerator = d_sm(setup, u) - epsilon
    if numerator <= 0.0:
        return 0.0
    denominator = -setup.phi(u)  # a*eta(u|u_r) - eta(u|u_l)
    if abs(denominator) < 1e-300:
        return 0.0
    return numerator / denominator


def default_epsilon(setup: WeightedSetup) -> float:
    return 1e-6 * setup.functional_scale


@dataclass
class ShiftState:
    """Current shift position with its sampled-velocity bound and history."""

    h: float = 0.0
    epsilon: float = 0.0
    v_max: float = 0.0
    history: list[tuple[float, float, float, float]] = field(default_factory=list)
    # history rows: (t, h, E_a, dE_a estimate)

    def advance(self, dt: float, velocity: float) -> None:
        self.h += dt * velocity
        self.v_max = max(self.v_max, abs(velocity))

    def record(self, t: float, e_a: float, de_dt: float) -> None:
        self.history.append((t, self.h, e_a, de_dt))
