"""3x3 full Euler equations for a perfect gas, conservative variables (rho, q, E).

q = rho*v is the momentum, E = rho*(v^2/2 + e) the total energy and
p = (gamma - 1)*rho*e the pressure.  The convex entropy used throughout is

    eta(u) = (gamma - 1) * rho * ln(rho) - rho * ln(e),

with entropy flux v * eta.  Fields 1 and 3 (v -+ c) are genuinely nonlinear,
field 2 (v) is linearly degenerate and carries contact discontinuities with
equal velocity and pressure on both sides.
"""

from __future__ import annotations

import numpy as np

from ..core import GENUINELY_NONLINEAR, LINEARLY_DEGENERATE, SystemModel
from ..errors import DomainError


def euler_primitive_to_conservative(rho: float, v: float, e: float,
                                    gamma: float = 1.4) -> np.ndarray:
    """(rho, v, e) -> (rho, rho*v, rho*(v^2/2 + e))."""
    if gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    if rho <= 0.0 or e <= 0.0:
        raise DomainError("density and internal energy must be positive")
    return np.array([rho, rho * v, rho * (0.5 * v * v + e)])


def euler_conservative_to_primitive(u: np.ndarray, gamma: float = 1.4) -> tuple[float, float, float]:
    """(rho, q, E) -> (rho, v, e); inverse of the conversion above."""
    if gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    rho, q, en = float(u[0]), float(u[1]), float(u[2])
    if rho <= 0.0:
        raise DomainError("nonpositive density")
    v = q / rho
    e = en / rho - 0.5 * v * v
    if e <= 0.0:
        raise DomainError("nonpositive internal energy")
    return rho, v, e


def euler_sound_speed(rho: float, e: float, gamma: float = 1.4) -> float:
    """c = sqrt(gamma*(gamma-1)*e); vanishes only in the vacuum limit e -> 0."""
    if gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    if e <= 0.0:
        raise DomainError("nonpositive internal energy")
    return float(np.sqrt(gamma * (gamma - 1.0) * e))


class EulerModel(SystemModel):
    name = "euler"
    n = 3
    component_names = ("rho", "q", "E")
    field_kinds = (GENUINELY_NONLINEAR, LINEARLY_DEGENERATE, GENUINELY_NONLINEAR)

    def __init__(self, gamma: float = 1.4, rho_floor: float = 1e-10, e_floor: float = 1e-10):
        if gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        self.gamma = float(gamma)
        self.rho_floor = float(rho_floor)
        self.e_floor = float(e_floor)

    # -- thermodynamics ----------------------------------------------------

    def primitive(self, u) -> tuple[float, float, float]:
        return euler_conservative_to_primitive(u, self.gamma)

    def pressure(self, u) -> float:
        rho, _, e = self.primitive(u)
        return (self.gamma - 1.0) * rho * e

    def internal_energy(self, u) -> float:
        return self.primitive(u)[2]

    # -- system surface ------------------------------------------------------

    def flux(self, u):
        rho, v, e = self.primitive(u)
        p = (self.gamma - 1.0) * rho * e
        return np.array([u[1], u[1] * v + p, (u[2] + p) * v])

    def flux_jacobian(self, u):
        g = self.gamma
        rho, v, e = self.primitive(u)
        p = (g - 1.0) * rho * e
        ht = (u[2] + p) / rho
        return np.array([
            [0.0, 1.0, 0.0],
            [0.5 * (g - 3.0) * v * v, (3.0 - g) * v, g - 1.0],
            [v * (0.5 * (g - 1.0) * v * v - ht), ht - (g - 1.0) * v * v, g * v],
        ])

    def entropy(self, u):
        rho, _, e = self.primitive(u)
        return float((self.gamma - 1.0) * rho * np.log(rho) - rho * np.log(e))

    def entropy_flux(self, u):
        _, v, _ = self.primitive(u)
        return float(v * self.entropy(u))

    def entropy_gradient(self, u):
        rho, v, e = self.primitive(u)
        g = self.gamma
        d_rho = g * (np.log(rho) + 1.0) - np.log(rho * e) - 0.5 * v * v / e
        d_q = v / e
        d_en = -1.0 / e
        return np.array([d_rho, d_q, d_en])

    def eigen(self, u):
        rho, v, e = self.primitive(u)
        c = euler_sound_speed(rho, e, self.gamma)
        p = (self.gamma - 1.0) * rho * e
        ht = (u[2] + p) / rho
        lams = np.array([v - c, v, v + c])
        r1 = np.array([1.0, v - c, ht - v * c])
        r2 = np.array([1.0, v, 0.5 * v * v])
        r3 = np.array([1.0, v + c, ht + v * c])
        # Slow acoustic field flipped so grad(lambda).r > 0; contact keeps
        # its density component positive.
        vecs = np.column_stack([-r1 / np.linalg.norm(r1),
                                r2 / np.linalg.norm(r2),
                                r3 / np.linalg.norm(r3)])
        return lams, vecs

    def in_domain(self, u):
        if not np.all(np.isfinite(u)) or u[0] <= self.rho_floor:
            return False
        e = u[2] / u[0] - 0.5 * (u[1] / u[0]) ** 2
        return bool(e > self.e_floor)

    def evaluable(self, u):
        if not np.all(np.isfinite(u)) or u[0] <= 0.0:
            return False
        e = u[2] / u[0] - 0.5 * (u[1] / u[0]) ** 2
        return bool(e > 0.0)

    def domain_margin(self, u):
        if not np.all(np.isfinite(u)):
            return -1.0
        rho = u[0]
        if rho <= 0.0:
            return float(rho - self.rho_floor)
        e = u[2] / rho - 0.5 * (u[1] / rho) ** 2
        return float(min(rho - self.rho_floor, e - self.e_floor))

    def default_box(self):
        return np.array([0.1, -4.0, 0.2]), np.array([4.0, 4.0, 12.0])

    def params(self) -> dict:
        return {"gamma": self.gamma, "rho_floor": self.rho_floor, "e_floor": self.e_floor}
