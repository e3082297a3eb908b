"""2x2 isentropic gas dynamics in conservative variables (rho, rho*v)."""

from __future__ import annotations

import numpy as np

from ..core import GENUINELY_NONLINEAR, SystemModel
from ..errors import DomainError


class IsentropicEulerModel(SystemModel):
    """Pressure law p = kappa * rho^gamma, gamma > 1.

    Entropy is the mechanical energy rho*v^2/2 + kappa*rho^gamma/(gamma-1)
    with flux v*(eta + p).  Both fields are genuinely nonlinear; eigenvectors
    are oriented so grad(lambda_i).r_i > 0.
    """

    name = "isentropic-euler"
    n = 2
    component_names = ("rho", "q")
    field_kinds = (GENUINELY_NONLINEAR, GENUINELY_NONLINEAR)

    def __init__(self, gamma: float = 1.4, kappa: float = 1.0, rho_floor: float = 1e-10):
        if gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        if kappa <= 0.0:
            raise ValueError("kappa must be positive")
        self.gamma = float(gamma)
        self.kappa = float(kappa)
        self.rho_floor = float(rho_floor)

    def pressure(self, rho: float) -> float:
        return self.kappa * rho ** self.gamma

    def sound_speed(self, rho: float) -> float:
        return float(np.sqrt(self.gamma * self.kappa * rho ** (self.gamma - 1.0)))

    def flux(self, u):
        rho, q = u
        if rho <= 0.0:
            raise DomainError("nonpositive density")
        return np.array([q, q * q / rho + self.pressure(rho)])

    def flux_jacobian(self, u):
        rho, q = u
        v = q / rho
        c2 = self.gamma * self.kappa * rho ** (self.gamma - 1.0)
        return np.array([[0.0, 1.0], [c2 - v * v, 2.0 * v]])

    def entropy(self, u):
        rho, q = u
        if rho <= 0.0:
            raise DomainError("nonpositive density")
        return float(0.5 * q * q / rho + self.kappa * rho ** self.gamma / (self.gamma - 1.0))

    def entropy_flux(self, u):
        rho, q = u
        v = q / rho
        return float(v * (self.entropy(u) + self.pressure(rho)))

    def entropy_gradient(self, u):
        rho, q = u
        v = q / rho
        return np.array([-0.5 * v * v
                         + self.gamma * self.kappa * rho ** (self.gamma - 1.0) / (self.gamma - 1.0),
                         v])

    def entropy_hessian(self, u):
        rho, q = u
        v = q / rho
        dpp = self.gamma * self.kappa * rho ** (self.gamma - 2.0)
        return np.array([[v * v / rho + dpp, -v / rho], [-v / rho, 1.0 / rho]])

    def eigen(self, u):
        rho, q = u
        v = q / rho
        c = self.sound_speed(rho)
        lams = np.array([v - c, v + c])
        r1 = np.array([1.0, v - c])
        r2 = np.array([1.0, v + c])
        # grad(lambda).r > 0: flip the slow family.
        vecs = np.column_stack([-r1 / np.linalg.norm(r1), r2 / np.linalg.norm(r2)])
        return lams, vecs

    def in_domain(self, u):
        return bool(np.all(np.isfinite(u)) and u[0] > self.rho_floor)

    def evaluable(self, u):
        return bool(np.all(np.isfinite(u)) and u[0] > 0.0)

    def domain_margin(self, u):
        return float(u[0] - self.rho_floor)

    def default_box(self):
        return np.array([0.05, -5.0]), np.array([5.0, 5.0])

    def params(self) -> dict:
        return {"gamma": self.gamma, "kappa": self.kappa, "rho_floor": self.rho_floor}
