"""Weighted stability setup and the two pointwise functionals.

For an admissible discontinuity (u_l, u_r, sigma) and weight a > 0, the level
function

    phi(u) = eta(u|u_l) - a * eta(u|u_r)

splits the state space along the surface Sigma_a = {phi = 0}.  The smooth-part
functional D_sm(u) = a q(u,u_r) - q(u,u_l) is tested on Sigma_a, and the jump
functional

    D_RH(u_-, u_+, s) = a q(u_+,u_r) - q(u_-,u_l) - s (a eta(u_+|u_r) - eta(u_-|u_l))

on entropic sub-discontinuities whose endpoints are separated by Sigma_a.
Nonpositivity of both is the computable stability criterion; a strictly
positive value at a reproducible witness refutes it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..core import SystemModel, relative_entropy, relative_entropy_flux
from ..errors import AdmissibilityError
from ..waves import Discontinuity, classify_admissibility, infer_family, solve_speed


@dataclass(frozen=True)
class WeightedSetup:
    """An admissible reference discontinuity together with the weight a."""

    model: SystemModel
    u_l: np.ndarray
    u_r: np.ndarray
    sigma: float
    a: float
    family: int | None = None
    _flags: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError("weight a must be positive")
        d = Discontinuity(self.u_l.copy(), self.u_r.copy(), self.sigma,
                          family=self.family)
        flags = classify_admissibility(self.model, d)
        if not flags.rankine_hugoniot:
            raise AdmissibilityError("reference pair violates the jump condition")
        if not flags.entropy_inequality:
            raise AdmissibilityError("reference pair violates the entropy inequality")
        object.__setattr__(self, "family", d.family)
        self._flags.update(flags.as_dict())

    def with_weight(self, a: float) -> "WeightedSetup":
        return WeightedSetup(self.model, self.u_l, self.u_r, self.sigma, a,
                             family=self.family)

    # -- level geometry ------------------------------------------------------

    def phi(self, u: np.ndarray) -> float:
        return (relative_entropy(self.model, u, self.u_l)
                - self.a * relative_entropy(self.model, u, self.u_r))

    def phi_gradient(self, u: np.ndarray) -> np.ndarray:
        m = self.model
        return ((1.0 - self.a) * m.entropy_gradient(u)
                - m.entropy_gradient(self.u_l) + self.a * m.entropy_gradient(self.u_r))

    @property
    def phi_scale(self) -> float:
        m = self.model
        return 1.0 + abs(m.entropy(self.u_l)) + abs(m.entropy(self.u_r))

    @property
    def functional_scale(self) -> float:
        m = self.model
        return 1.0 + abs(m.entropy_flux(self.u_l)) + abs(m.entropy_flux(self.u_r))

    @property
    def tol_violation(self) -> float:
        """Threshold separating genuine positivity from roundoff."""
        return 1e-8 * self.functional_scale

    def interior_seed(self) -> np.ndarray:
        """State strictly inside the convex side of Sigma_a.

        phi(u_l) < 0 < phi(u_r) always; the bounded side sits around u_l when
        a < 1 and around u_r when a > 1.
        """
        return self.u_l if self.a <= 1.0 else self.u_r

    def summary(self) -> dict:
        return {
            "model": {"name": self.model.name, "params": self.model.params()},
            "u_l": [float(x) for x in self.u_l],
            "u_r": [float(x) for x in self.u_r],
            "sigma": float(self.sigma),
            "a": float(self.a),
            "family": self.family,
        }


def setup_from_states(model: SystemModel, u_l, u_r, a: float,
                      sigma: float | None = None,
                      family: int | None = None) -> WeightedSetup:
    u_l = np.asarray(u_l, float)
    u_r = np.asarray(u_r, float)
    if sigma is None:
        sigma = solve_speed(model, u_l, u_r)
    return WeightedSetup(model, u_l, u_r, float(sigma), float(a), family=family)


def d_sm(setup: WeightedSetup, u: np.ndarray) -> float:
    """a q(u, u_r) - q(u, u_l)."""
    m = setup.model
    return (setup.a * relative_entropy_flux(m, u, setup.u_r)
            - relative_entropy_flux(m, u, setup.u_l))


def d_sm_gradient(setup: WeightedSetup, u: np.ndarray) -> np.ndarray:
    """Exact gradient of D_sm; q(.,v) has gradient grad q - grad f^T grad eta(v)."""
    m = setup.model
    gq = m.entropy_gradient(u) @ m.flux_jacobian(u)  # compatibility: grad q(u)
    jt = m.flux_jacobian(u).T
    g_r = gq - jt @ m.entropy_gradient(setup.u_r)
    g_l = gq - jt @ m.entropy_gradient(setup.u_l)
    return setup.a * g_r - g_l


def d_rh_raw(setup: WeightedSetup, u_minus: np.ndarray, u_plus: np.ndarray,
             sigma: float) -> float:
    """The jump functional without admissibility gating (for sweeps/audits)."""
    m = setup.model
    return (setup.a * relative_entropy_flux(m, u_plus, setup.u_r)
            - relative_entropy_flux(m, u_minus, setup.u_l)
            - sigma * (setup.a * relative_entropy(m, u_plus, setup.u_r)
                       - relative_entropy(m, u_minus, setup.u_l)))


def d_rh(setup: WeightedSetup, d: Discontinuity) -> float:
    """The jump functional; requires the jump and entropy flags on ``d``."""
    flags = d.admissibility
    if not (flags.rankine_hugoniot and flags.entropy_inequality):
        flags = classify_admissibility(setup.model, d)
    if not flags.rankine_hugoniot:
        raise AdmissibilityError("sub-discontinuity violates the jump condition")
    if not flags.entropy_inequality:
        raise AdmissibilityError("sub-discontinuity violates the entropy inequality")
    return d_rh_raw(setup, d.u_minus, d.u_plus, d.sigma)


def separation_signs(setup: WeightedSetup, u_minus: np.ndarray,
                     u_plus: np.ndarray) -> tuple[float, float]:
    return setup.phi(u_minus), setup.phi(u_plus)


def crosses_outward(setup: WeightedSetup, phi_minus: float, phi_plus: float) -> bool:
    """Sign condition of the plain criterion: u_- inside, u_+ outside."""
    return phi_minus < 0.0 < phi_plus


def crosses_either_way(setup: WeightedSetup, phi_minus: float, phi_plus: float) -> bool:
    """Strong-criterion condition: endpoints strictly separated by Sigma_a."""
    return phi_minus * phi_plus < 0.0
