"""4x4 planar isentropic magnetohydrodynamics in Lagrangian coordinates.

Conservative variables U = (v, q, u, w) with specific volume v, tangential
magnetic moment q = v*B, and velocity components (u, w).  The normal magnetic
field beta is a constant model parameter; the pressure law is p(v) = v^-gamma.
The system reads

    v_t - u_x = 0,   q_t - beta*w_x = 0,
    u_t + (p + B^2/2)_x = 0,   w_t - beta*B_x = 0,

with entropy  eta(U) = v^(1-gamma)/(gamma-1) + (u^2 + w^2)/2 + q^2/(2v)  and
entropy flux  u*(p + B^2/2) - beta*w*B.

All eigenstructure work happens in the non-conservative chart W = (v, B, u, w)
where the quasilinear matrix is simple; results are mapped back through
dU/dW.  The four wave speeds are -+sqrt(alpha_+-) with alpha_-+ the two roots
of the characteristic quartic in lambda^2; all four fields are genuinely
nonlinear as long as B != 0, so states with |B| below a configurable floor
are rejected.
"""

from __future__ import annotations

import numpy as np

from ..core import GENUINELY_NONLINEAR, SystemModel
from ..errors import DegenerateError, DomainError


def mhd_alpha(v: float, B: float, beta: float, gamma: float) -> tuple[float, float]:
    """Squared slow/fast speeds (alpha_minus, alpha_plus).

    Roots in lambda^2 of  lambda^4 - ((B^2+beta^2)/v + c^2) lambda^2
    + (beta^2/v) c^2 = 0  with c^2 = gamma * v^(-gamma-1).  Satisfies
    0 < alpha_minus < c^2 < alpha_plus whenever B != 0.
    """
    if v <= 0.0:
        raise DomainError("specific volume must be positive")
    if gamma <= 1.0:
        raise ValueError("gamma must exceed 1")
    c2 = gamma * v ** (-gamma - 1.0)
    s = (B * B + beta * beta) / v + c2
    disc = s * s - 4.0 * beta * beta * c2 / v
    root = np.sqrt(max(disc, 0.0))
    return 0.5 * (s - root), 0.5 * (s + root)


def mhd_quasilinear_matrix(v: float, B: float, beta: float, gamma: float) -> np.ndarray:
    """Advection matrix of the system in the chart W = (v, B, u, w)."""
    c2 = gamma * v ** (-gamma - 1.0)
    return np.array([
        [0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, B / v, -beta / v],
        [-c2, B, 0.0, 0.0],
        [0.0, -beta, 0.0, 0.0],
    ])


def mhd_eigen(U: np.ndarray, beta: float, gamma: float,
              b_floor: float = 1e-8) -> tuple[np.ndarray, np.ndarray]:
    """Wave speeds and unit eigenvectors in the chart W = (v, B, u, w).

    Returns (lambda_1..lambda_4 ascending, column matrix r_1..r_4).  The
    speeds come in opposite pairs lambda_1 = -lambda_4, lambda_2 = -lambda_3.
    Raises DegenerateError when |B| falls below ``b_floor`` (the two middle
    speeds collide with +-|beta|/sqrt(v) there and the eigenbasis breaks down).
    """
    v, q = float(U[0]), float(U[1])
    if v <= 0.0:
        raise DomainError("specific volume must be positive")
    B = q / v
    if abs(B) < b_floor:
        raise DegenerateError(f"|B|={abs(B):.3e} below floor {b_floor:.1e}")
    c2 = gamma * v ** (-gamma - 1.0)
    am, ap = mhd_alpha(v, B, beta, gamma)
    sqm, sqp = np.sqrt(am), np.sqrt(ap)
    lams = np.array([-sqp, -sqm, sqm, sqp])

    def col(alpha: float, sq: float, sign: float) -> np.ndarray:
        r = np.array([sign,
                      -sign * (alpha - c2) / B,
                      sq,
                      -beta * (alpha - c2) / (B * sq)])
        return r / np.linalg.norm(r)

    vecs = np.column_stack([
        col(ap, sqp, 1.0),
        col(am, sqm, 1.0),
        col(am, sqm, -1.0),
        col(ap, sqp, -1.0),
    ])
    return lams, vecs


class MhdModel(SystemModel):
    name = "mhd"
    n = 4
    component_names = ("v", "q", "u", "w")
    field_kinds = (GENUINELY_NONLINEAR,) * 4

    def __init__(self, gamma: float = 5.0 / 3.0, beta: float = 1.0,
                 v_floor: float = 1e-10, b_floor: float = 1e-8):
        if gamma <= 1.0:
            raise ValueError("gamma must exceed 1")
        if beta == 0.0:
            raise ValueError("normal field beta must be nonzero")
        self.gamma = float(gamma)
        self.beta = float(beta)
        self.v_floor = float(v_floor)
        self.b_floor = float(b_floor)

    def pressure(self, v: float) -> float:
        return v ** (-self.gamma)

    def magnetic_field(self, U) -> float:
        return float(U[1] / U[0])

    def flux(self, U):
        v, q, u, w = U
        if v <= 0.0:
            raise DomainError("nonpositive specific volume")
        B = q / v
        return np.array([-u,
                         -self.beta * w,
                         self.pressure(v) + 0.5 * B * B,
                         -self.beta * B])

    def flux_jacobian(self, U):
        v, q, _, _ = U
        dp = -self.gamma * v ** (-self.gamma - 1.0)
        return np.array([
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 0.0, 0.0, -self.beta],
            [dp - q * q / v ** 3, q / v ** 2, 0.0, 0.0],
            [self.beta * q / v ** 2, -self.beta / v, 0.0, 0.0],
        ])

    def entropy(self, U):
        v, q, u, w = U
        if v <= 0.0:
            raise DomainError("nonpositive specific volume")
        return float(v ** (1.0 - self.gamma) / (self.gamma - 1.0)
                     + 0.5 * (u * u + w * w) + 0.5 * q * q / v)

    def entropy_flux(self, U):
        v, q, u, w = U
        B = q / v
        return float(u * (self.pressure(v) + 0.5 * B * B) - self.beta * w * B)

    def entropy_gradient(self, U):
        v, q, u, w = U
        B = q / v
        return np.array([-(self.pressure(v) + 0.5 * B * B), B, u, w])

    def entropy_hessian(self, U):
        v, q, u, w = U
        g = self.gamma
        h = np.zeros((4, 4))
        h[0, 0] = g * v ** (-g - 1.0) + q * q / v ** 3
        h[0, 1] = h[1, 0] = -q / v ** 2
        h[1, 1] = 1.0 / v
        h[2, 2] = 1.0
        h[3, 3] = 1.0
        return h

    def eigen(self, U):
        lams, vecs_w = mhd_eigen(U, self.beta, self.gamma, self.b_floor)
        v, q = float(U[0]), float(U[1])
        B = q / v
        # dU/dW for W = (v, B, u, w): only q = v*B mixes coordinates.
        to_cons = np.array([
            [1.0, 0.0, 0.0, 0.0],
            [B, v, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ])
        vecs = to_cons @ vecs_w
        vecs /= np.linalg.norm(vecs, axis=0, keepdims=True)
        return lams, vecs

    def in_domain(self, U):
        if not np.all(np.isfinite(U)) or U[0] <= self.v_floor:
            return False
        return bool(abs(U[1] / U[0]) >= self.b_floor)

    def evaluable(self, U):
        return bool(np.all(np.isfinite(U)) and U[0] > 0.0)

    def domain_margin(self, U):
        if not np.all(np.isfinite(U)):
            return -1.0
        v = U[0]
        if v <= 0.0:
            return float(v - self.v_floor)
        return float(min(v - self.v_floor, abs(U[1] / v) - self.b_floor))

    def default_box(self):
        return np.array([0.3, 0.2, -2.0, -2.0]), np.array([3.0, 3.0, 2.0, 2.0])

    def params(self) -> dict:
        return {"gamma": self.gamma, "beta": self.beta,
                "v_floor": self.v_floor, "b_floor": self.b_floor}
