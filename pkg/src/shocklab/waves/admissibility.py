"""Discontinuity container and admissibility classification.

Flags follow the classical hierarchy: an exact jump condition
(rankine_hugoniot), the entropy inequality q jump <= sigma * eta jump
(entropy_inequality), the extended Lax bracketing
lambda_{l-1}(u_-) <= sigma <= lambda_{l+1}(u_+), and - when a connecting
curve is supplied - the Liu monotone-speed condition along that curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from ..core import SystemModel
from .curves import HUGONIOT, WaveCurve, rh_residual_vector

RH_TOL = 1e-9
ENTROPY_SLACK = 1e-10
LIU_TOL = 1e-9


@dataclass
class AdmissibilityFlags:
    rankine_hugoniot: bool = False
    entropy_inequality: bool = False
    lax: bool = False
    liu: bool | None = None

    def as_dict(self) -> dict:
        return {
            "rankine_hugoniot": self.rankine_hugoniot,
            "entropy_inequality": self.entropy_inequality,
            "lax": self.lax,
            "liu": self.liu,
        }


@dataclass
class Discontinuity:
    u_minus: np.ndarray
    u_plus: np.ndarray
    sigma: float
    family: int | None = None
    admissibility: AdmissibilityFlags = field(default_factory=AdmissibilityFlags)

    def jump(self) -> np.ndarray:
        return self.u_plus - self.u_minus


def solve_speed(model: SystemModel, u_minus: np.ndarray, u_plus: np.ndarray) -> float:
    """Least-squares speed of the jump; exact when the pair is on a locus."""
    du = u_plus - u_minus
    df = model.flux(u_plus) - model.flux(u_minus)
    denom = float(du @ du)
    if denom == 0.0:
        raise ValueError("u_minus and u_plus coincide")
    return float(df @ du) / denom


def infer_family(model: SystemModel, d: Discontinuity) -> int | None:
    """Family by classical Lax bracketing lambda_i(u_+) <= sigma <= lambda_i(u_-)."""
    lam_m = model.eigen(d.u_minus)[0]
    lam_p = model.eigen(d.u_plus)[0]
    scale = 1.0 + max(np.max(np.abs(lam_m)), np.max(np.abs(lam_p)))
    tol = 1e-8 * scale
    candidates = [i for i in range(1, model.n + 1)
                  if lam_p[i - 1] <= d.sigma + tol and d.sigma <= lam_m[i - 1] + tol]
    if not candidates:
        return None
    # Narrowest bracket wins when several families qualify.
    return min(candidates,
               key=lambda i: (abs(lam_m[i - 1] - d.sigma) + abs(lam_p[i - 1] - d.sigma), i))


def classify_admissibility(model: SystemModel, d: Discontinuity,
                           curve: WaveCurve | None = None) -> AdmissibilityFlags:
    """Populate and return the admissibility flags of ``d``.

    The Liu flag is only set when a Hugoniot curve connecting the two states
    (based at either one) is supplied; it checks the monotone-speed condition
    sigma(s_0) <= sigma(s) on [0, s_0] as seen from the curve's base, with
    equality tolerated (contact discontinuities).
    """
    flags = d.admissibility
    res = rh_residual_vector(model, d.u_minus, d.u_plus, d.sigma)
    scale = 1.0 + float(np.max(np.abs(model.flux(d.u_minus))))
    flags.rankine_hugoniot = bool(np.max(np.abs(res)) <= RH_TOL * scale)

    ent_gap = (model.entropy_flux(d.u_plus) - model.entropy_flux(d.u_minus)
               - d.sigma * (model.entropy(d.u_plus) - model.entropy(d.u_minus)))
    flags.entropy_inequality = bool(ent_gap <= ENTROPY_SLACK * scale)

    if d.family is None:
        d.family = infer_family(model, d)
    if d.family is None:
        flags.lax = False
    else:
        lam_m = model.eigen(d.u_minus)[0]
        lam_p = model.eigen(d.u_plus)[0]
        tol = 1e-10 * (1.0 + max(np.max(np.abs(lam_m)), np.max(np.abs(lam_p))))
        lo = lam_m[d.family - 2] if d.family >= 2 else -np.inf
        hi = lam_p[d.family] if d.family < model.n else np.inf
        flags.lax = bool(lo - tol <= d.sigma <= hi + tol)

    if curve is not None and curve.kind == HUGONIOT:
        flags.liu = _liu_flag(model, d, curve)
    return flags


def _liu_flag(model: SystemModel, d: Discontinuity, curve: WaveCurve) -> bool | None:
    base = curve.base_state
    if np.allclose(base, d.u_minus, rtol=0.0, atol=1e-9 * (1.0 + np.max(np.abs(base)))):
        target = d.u_plus
        from_left = True
    elif np.allclose(base, d.u_plus, rtol=0.0, atol=1e-9 * (1.0 + np.max(np.abs(base)))):
        target = d.u_minus
        from_left = False
    else:
        return None
    dists = np.linalg.norm(curve.states - target, axis=1)
    k0 = int(np.argmin(dists))
    lo = float(curve.s[max(k0 - 1, 0)])
    hi = float(curve.s[min(k0 + 1, len(curve.s) - 1)])
    if hi > lo:
        opt = minimize_scalar(lambda t: float(np.sum((curve.state_at(t) - target) ** 2)),
                              bounds=(lo, hi), method="bounded",
                              options={"xatol": 1e-12 * (1.0 + hi)})
        s0 = float(opt.x)
    else:
        s0 = float(curve.s[k0])
    if np.linalg.norm(curve.state_at(s0) - target) > 1e-6 * (1.0 + np.linalg.norm(target)):
        return None
    sig0 = float(curve.speed_at(s0))
    mask = curve.s <= s0 + 1e-15
    seg = curve.speeds[mask]
    tol = LIU_TOL * (1.0 + abs(sig0))
    if from_left:
        # Liu: the sub-speed never drops below the full-shock speed.
        return bool(np.min(seg) >= sig0 - tol)
    return bool(np.max(seg) <= sig0 + tol)
