"""Constructive no-stability witnesses along rarefaction and contact curves.

Two mechanisms produce a state where a stability functional turns positive:

* A genuinely nonlinear neighbor family: follow the backward rarefaction
  curve from u_l (weights a < 1) or the forward one from u_r (a > 1) until it
  first pierces the level surface Sigma_a.  The auxiliary function

      F(s) = a (q(R(s),u_r) - lam(R(s)) eta(R(s)|u_r))
               - q(R(s),u_l) + lam(R(s)) eta(R(s)|u_l)

  starts positive, has derivative F'(s) = lam'(s) * phi(R(s)) > 0 up to the
  first crossing, and equals D_sm at the crossing - which is therefore
  positive.

* A linearly degenerate neighbor family: slide along the contact curve from
  u_l (a < 1) or u_r (a > 1) until the far side of Sigma_a is reached; the
  contact piece from the reference state to that point has D_RH equal to a
  single positive jump-balance term because the contact speed is constant and
  the curve integral vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..core import (LINEARLY_DEGENERATE, fd_step, relative_entropy,
                    relative_entropy_flux)
from ..errors import (ContinuationError, DomainExitError, NotApplicableError,
                      ShockLabError)
from ..waves import WaveCurve, trace_hugoniot, trace_rarefaction
from .certificates import NO_CONTRACTION, Certificate
from .surface import PHI_TOL
from .weighted import WeightedSetup, d_rh_raw, d_sm

BACKWARD = "backward"
FORWARD = "forward"


@dataclass
class IntersectionResult:
    found: bool
    ubar: np.ndarray | None
    sbar: float | None
    curve: WaveCurve | None
    span_traced: float
    phi_at_ubar: float | None = None


def rarefaction_intersection(setup: WeightedSetup, family: int, direction: str,
                             span: float | None = None, step: float | None = None,
                             max_span: float | None = None) -> IntersectionResult:
    """First crossing of the family's rarefaction curve with Sigma_a.

    The backward curve starts at u_l, the forward curve at u_r.  The traced
    span doubles until a sign change of phi appears, the curve exits the
    domain, or ``max_span`` is exhausted; the crossing is refined by bisection
    on the dense ODE output to |phi| <= 1e-10 (scaled).
    """
    if setup.model.field_kind(family) == LINEARLY_DEGENERATE:
        raise NotApplicableError(f"family {family} is linearly degenerate")
    if direction not in (BACKWARD, FORWARD):
        raise ValueError("direction must be 'backward' or 'forward'")
    base = setup.u_l if direction == BACKWARD else setup.u_r
    jump = float(np.linalg.norm(setup.u_r - setup.u_l))
    if span is None:
        span = 4.0 * (jump + 1.0)
    if max_span is None:
        max_span = 64.0 * span
    if step is None:
        step = span / 200.0
    phi_tol = PHI_TOL * setup.phi_scale
    sign0 = np.sign(setup.phi(base))
    if sign0 == 0.0:
        sign0 = -1.0 if direction == BACKWARD else 1.0

    current = span
    while True:
        exited = False
        try:
            curve = trace_rarefaction(setup.model, base, family, direction,
                                      span=current, step=step)
        except DomainExitError as err:
            curve = err.partial_curve
            exited = True
        if curve is None or len(curve) < 2:
            return IntersectionResult(False, None, None, curve, 0.0)
        phis = np.array([setup.phi(u) for u in curve.states])
        flips = np.flatnonzero(np.sign(phis[1:]) * sign0 < 0.0)
        if len(flips):
            k = int(flips[0]) + 1
            lo, hi = float(curve.s[k - 1]), float(curve.s[k])
            dense = curve._extra.get("dense")
            state_at = (lambda t: np.asarray(dense(t))) if dense is not None \
                else curve.state_at
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                val = setup.phi(state_at(mid))
                if abs(val) <= phi_tol:
                    break
                if np.sign(val) == sign0:
                    lo = mid
                else:
                    hi = mid
            sbar = 0.5 * (lo + hi)
            ubar = state_at(sbar)
            return IntersectionResult(True, ubar, float(sbar), curve,
                                      float(curve.span), float(setup.phi(ubar)))
        if exited or current >= max_span:
            return IntersectionResult(False, None, None, curve, float(curve.span))
        current = min(2.0 * current, max_span)
        step = current / 400.0


class ProfileAssertionError(AssertionError):
    """F-function sign assertion failed; carries the offending sample."""

    def __init__(self, message: str, s: float, value: float):
        super().__init__(message)
        self.s = s
        self.value = value


@dataclass
class FFunctionProfile:
    s: np.ndarray
    f_values: np.ndarray
    f_prime_reduced: np.ndarray
    f_prime_fd: np.ndarray
    f_at_sbar: float
    d_sm_at_ubar: float

    def table(self) -> list[tuple[float, float, float]]:
        return [(float(a), float(b), float(c))
                for a, b, c in zip(self.s, self.f_values, self.f_prime_reduced)]


def f_function_profile(setup: WeightedSetup, curve: WaveCurve, sbar: float,
                       ubar: np.ndarray | None = None,
                       n_samples: int = 120) -> FFunctionProfile:
    """Tabulate F and its reduced derivative along ``curve`` up to ``sbar``.

    Asserts F(0) > 0 and F' > 0 strictly inside (0, sbar); checks that the
    reduced derivative lam'(s) * phi(R(s)) (all flux terms cancel) matches the
    full finite-difference derivative, and that F(sbar) reproduces D_sm at the
    crossing state.  Raises ProfileAssertionError on a sign failure, which
    signals either a defective traced curve or an out-of-hypothesis setup.
    """
    model = setup.model
    family = curve.family
    dense = curve._extra.get("dense")
    state_at = (lambda t: np.asarray(dense(t))) if dense is not None else curve.state_at
    ode_sign = 1.0 if curve.kind.endswith("forward") else -1.0

    def f_value(u: np.ndarray) -> float:
        lam = model.eigenvalue(u, family)
        return (setup.a * (relative_entropy_flux(model, u, setup.u_r)
                           - lam * relative_entropy(model, u, setup.u_r))
                - relative_entropy_flux(model, u, setup.u_l)
                + lam * relative_entropy(model, u, setup.u_l))

    s_grid = np.linspace(0.0, sbar, n_samples)
    f_vals = np.empty(n_samples)
    f_red = np.empty(n_samples)
    f_fd = np.empty(n_samples)
    delta = max(1e-7 * sbar, 1e-12)
    for i, s in enumerate(s_grid):
        u = state_at(s)
        f_vals[i] = f_value(u)
        tangent = ode_sign * model.eigenvector(u, family)
        h = fd_step(u)
        dlam = (model.eigenvalue(u + h * tangent, family)
                - model.eigenvalue(u - h * tangent, family)) / (2.0 * h)
        f_red[i] = dlam * setup.phi(u)
        sm = max(s - delta, 0.0)
        sp = min(s + delta, sbar)
        f_fd[i] = (f_value(state_at(sp)) - f_value(state_at(sm))) / (sp - sm)

    if f_vals[0] <= 0.0:
        raise ProfileAssertionError(
            f"F(0) = {f_vals[0]:.6e} is not positive", 0.0, float(f_vals[0]))
    interior = (s_grid > 0.0) & (s_grid < sbar)
    bad = np.flatnonzero(interior & (f_red <= 0.0))
    if len(bad):
        k = int(bad[0])
        raise ProfileAssertionError(
            f"F'({s_grid[k]:.6g}) = {f_red[k]:.6e} is not positive",
            float(s_grid[k]), float(f_red[k]))

    witness = ubar if ubar is not None else state_at(sbar)
    dsm = d_sm(setup, witness)
    return FFunctionProfile(
        s=s_grid,
        f_values=f_vals,
        f_prime_reduced=f_red,
        f_prime_fd=f_fd,
        f_at_sbar=float(f_vals[-1]),
        d_sm_at_ubar=float(dsm),
    )


def intersection_witness_certificate(setup: WeightedSetup, family: int,
                                     direction: str,
                                     intersection: IntersectionResult,
                                     profile: FFunctionProfile,
                                     mechanism: str) -> Certificate:
    value = profile.d_sm_at_ubar
    violated = value > setup.tol_violation
    kind = NO_CONTRACTION if violated else "H1-pass"
    return Certificate(
        kind=kind,
        setup=setup.summary(),
        values={
            "functional": "d_sm",
            "value": float(value),
            "tol_violation": setup.tol_violation,
            "f_at_zero": float(profile.f_values[0]),
            "f_at_sbar": profile.f_at_sbar,
            "f_minus_dsm": profile.f_at_sbar - profile.d_sm_at_ubar,
        },
        witness={
            "state": [float(x) for x in intersection.ubar],
            "curve_family": int(family),
            "curve_direction": direction,
            "curve_parameter": float(intersection.sbar),
            "phi_at_witness": float(intersection.phi_at_ubar),
        },
        coverage={
            "mechanism": mechanism,
            "span_traced": float(intersection.span_traced),
            "profile_samples": int(len(profile.s)),
            "interpretation": ("D_sm positive on the surface: stability criterion "
                               "refuted for this weight" if violated else
                               "crossing found but D_sm not positive beyond tolerance"),
        },
    )


def degenerate_neighbor_check(setup: WeightedSetup, family: int,
                              span: float | None = None,
                              step: float | None = None) -> Certificate:
    """No-stability witness through a linearly degenerate neighbor family.

    For a < 1 the contact curve of ``family`` (required < the reference
    family) is traced from u_l until eta(S(s)|u_l) > a eta(S(s)|u_r); for
    a > 1 (family > reference) from u_r until the opposite side condition
    holds.  The certificate additionally records that the contact speed is
    constant along the traced curve and that the jump-balance curve integral
    vanishes, which reduces D_RH of the contact piece to a single term.

    Raises NotApplicableError when the field is not degenerate, the family is
    on the wrong side of the reference family, or no qualifying parameter is
    found on the traced span.
    """
    model = setup.model
    if model.field_kind(family) != LINEARLY_DEGENERATE:
        raise NotApplicableError(f"family {family} is not linearly degenerate")
    if setup.family is None:
        raise NotApplicableError("reference discontinuity has no identified family")
    if setup.a < 1.0 and not family < setup.family:
        raise NotApplicableError("weights below 1 need a degenerate family below "
                                 f"the reference family {setup.family}")
    if setup.a > 1.0 and not family > setup.family:
        raise NotApplicableError("weights above 1 need a degenerate family above "
                                 f"the reference family {setup.family}")

    low_side = setup.a < 1.0 or (setup.a == 1.0 and family < setup.family)
    base = setup.u_l if low_side else setup.u_r
    jump = float(np.linalg.norm(setup.u_r - setup.u_l))
    if span is None:
        span = 8.0 * (jump + 1.0)
    if step is None:
        step = span / 400.0
    margin = 1e-8 * setup.phi_scale

    chosen = None
    for direction in (1, -1):
        try:
            curve = trace_hugoniot(model, base, family, span=span, step=step,
                                   direction=direction)
        except ContinuationError as err:
            curve = err.partial_curve
            if curve is None or len(curve) < 2:
                continue
        except ShockLabError:
            continue
        phis = np.array([setup.phi(u) for u in curve.states])
        hits = np.flatnonzero(phis > margin) if low_side else np.flatnonzero(phis < -margin)
        if len(hits):
            chosen = (curve, int(hits[0]))
            break
    if chosen is None:
        raise NotApplicableError(
            f"contact curve never met the side condition within span {span:g}")

    curve, k = chosen
    s_star = float(curve.s[k])
    u_star = curve.states[k]
    lam_base = model.eigenvalue(base, family)
    sigma_drift = float(np.max(np.abs(curve.speeds[:k + 1] - lam_base)))

    def integrand(t: float) -> float:
        return curve.speed_derivative_at(t) * relative_entropy(model, base,
                                                               curve.state_at(t))

    curve_integral, _ = quad(integrand, 0.0, s_star, limit=200)

    if low_side:
        u_minus, u_plus = base, u_star
        reduced = setup.a * (relative_entropy_flux(model, u_star, setup.u_r)
                             - lam_base * relative_entropy(model, u_star, setup.u_r))
    else:
        u_minus, u_plus = u_star, base
        reduced = (-relative_entropy_flux(model, u_star, setup.u_l)
                   + lam_base * relative_entropy(model, u_star, setup.u_l))
    value = d_rh_raw(setup, u_minus, u_plus, lam_base)
    violated = value > setup.tol_violation
    return Certificate(
        kind=NO_CONTRACTION if violated else "H2-pass",
        setup=setup.summary(),
        values={
            "functional": "d_rh",
            "value": float(value),
            "reduced_value": float(reduced),
            "tol_violation": setup.tol_violation,
            "sigma_drift": sigma_drift,
            "curve_integral": float(curve_integral),
        },
        witness={
            "u_minus": [float(x) for x in u_minus],
            "u_plus": [float(x) for x in u_plus],
            "sigma": float(lam_base),
            "family": int(family),
            "curve_parameter": s_star,
        },
        coverage={
            "mechanism": "degenerate-neighbor contact piece",
            "span_traced": float(curve.span),
            "direction": int(curve.branch_sign),
            "interpretation": ("D_RH positive at contact witness" if violated
                               else "no qualifying violation at the found parameter"),
        },
    )
