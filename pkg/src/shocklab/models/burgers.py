"""Scalar convex-flux model: f = u^2/2, eta = u^2/2, q = u^3/3."""

from __future__ import annotations

import numpy as np

from ..core import GENUINELY_NONLINEAR, SystemModel


class BurgersModel(SystemModel):
    name = "burgers"
    n = 1
    component_names = ("u",)
    field_kinds = (GENUINELY_NONLINEAR,)

    def flux(self, u):
        return np.array([0.5 * u[0] * u[0]])

    def flux_jacobian(self, u):
        return np.array([[u[0]]])

    def entropy(self, u):
        return float(0.5 * u[0] * u[0])

    def entropy_flux(self, u):
        return float(u[0] ** 3 / 3.0)

    def entropy_gradient(self, u):
        return np.array([u[0]])

    def entropy_hessian(self, u):
        return np.array([[1.0]])

    def eigen(self, u):
        return np.array([u[0]]), np.array([[1.0]])

    def in_domain(self, u):
        return bool(np.all(np.isfinite(u)))

    def evaluable(self, u):
        return bool(np.all(np.isfinite(u)))

    def domain_margin(self, u):
        return 1.0

    def default_box(self):
        return np.array([-3.0]), np.array([3.0])

    def params(self) -> dict:
        return {}
