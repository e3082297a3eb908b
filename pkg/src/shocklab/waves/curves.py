"""Hugoniot locus continuation and rarefaction integral curves.

Hugoniot loci solve the n-equation jump system f(S) - f(base) = sigma*(S - base)
for the n+1 unknowns (S, sigma) by pseudo-arclength predictor-corrector
continuation: each step predicts along the current unit tangent in (S, sigma)
space and corrects with Newton under a hyperplane constraint orthogonal to
that tangent.  The curve starts at the base with sigma(0) = lambda_i(base)
and initial tangent +-r_i(base); the branch sign is the one whose speed trend
matches the admissible (Liu) orientation of the family unless the caller
forces it.

Rarefaction curves integrate du/ds = +-r_i(u) with an adaptive RK45; the sign
is chosen so that lambda_i is monotone in the requested direction (the
eigenvector convention makes grad(lambda_i).r_i > 0 on genuinely nonlinear
fields, so "forward" is +r_i and "backward" is -r_i).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.integrate import solve_ivp
from scipy.interpolate import CubicSpline

from ..core import LINEARLY_DEGENERATE, SystemModel
from ..errors import ContinuationError, DomainExitError

HUGONIOT = "hugoniot"
RAREFACTION_FORWARD = "rarefaction-forward"
RAREFACTION_BACKWARD = "rarefaction-backward"

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
MIN_STEP_FRACTION = 1e-6


@dataclass
class WaveCurve:
    """A discretized wave curve with per-sample speed (Hugoniot) or eigenvalue."""

    model: SystemModel
    family: int
    kind: str
    base_state: np.ndarray
    parameterization: str
    s: np.ndarray
    states: np.ndarray
    speeds: np.ndarray
    rh_residuals: np.ndarray | None = None
    branch_sign: int = 1
    _extra: dict = field(default_factory=dict, repr=False)

    def __len__(self) -> int:
        return len(self.s)

    @property
    def span(self) -> float:
        return float(self.s[-1])

    @cached_property
    def _state_spline(self) -> CubicSpline:
        return CubicSpline(self.s, self.states, axis=0)

    @cached_property
    def _speed_spline(self) -> CubicSpline:
        return CubicSpline(self.s, self.speeds)

    @cached_property
    def _speed_derivative(self):
        return self._speed_spline.derivative()

    def state_at(self, s: float) -> np.ndarray:
        return np.asarray(self._state_spline(s))

    def speed_at(self, s: float) -> float:
        return float(self._speed_spline(s))

    def speed_derivative_at(self, s: float) -> float:
        return float(self._speed_derivative(s))

    def tangent_at(self, s: float) -> np.ndarray:
        t = np.asarray(self._state_spline(s, 1))
        nrm = np.linalg.norm(t)
        return t / nrm if nrm > 0 else t

    def rh_residual(self, idx: int) -> float:
        if self.rh_residuals is None:
            return float("nan")
        return float(self.rh_residuals[idx])

    def to_csv(self) -> str:
        cols = ["s", *self.model.component_names, "sigma_or_lambda", "rh_residual"]
        lines = [",".join(cols)]
        res = (self.rh_residuals if self.rh_residuals is not None
               else np.full(len(self.s), np.nan))
        for k in range(len(self.s)):
            row = [repr(float(self.s[k]))]
            row += [repr(float(x)) for x in self.states[k]]
            row.append(repr(float(self.speeds[k])))
            row.append(repr(float(res[k])))
            lines.append(",".join(row))
        return "\n".join(lines) + "\n"


def rh_residual_vector(model: SystemModel, base: np.ndarray, state: np.ndarray,
                       sigma: float) -> np.ndarray:
    return model.flux(state) - model.flux(base) - sigma * (state - base)


def _newton_correct(model: SystemModel, base: np.ndarray, y: np.ndarray,
                    tangent: np.ndarray, anchor: np.ndarray) -> np.ndarray | None:
    """Newton iteration on [RH residual; tangent . (y - anchor)] = 0."""
    n = model.n
    y = y.copy()
    for _ in range(NEWTON_MAX_ITER):
        state, sigma = y[:n], y[n]
        if not model.evaluable(state):
            return None
        res = rh_residual_vector(model, base, state, sigma)
        con = tangent @ (y - anchor)
        if np.max(np.abs(res)) <= NEWTON_TOL and abs(con) <= NEWTON_TOL:
            return y
        jac = np.empty((n + 1, n + 1))
        jac[:n, :n] = model.flux_jacobian(state) - sigma * np.eye(n)
        jac[:n, n] = -(state - base)
        jac[n, :] = tangent
        try:
            delta = np.linalg.solve(jac, np.concatenate([res, [con]]))
        except np.linalg.LinAlgError:
            return None
        y -= delta
        if not np.all(np.isfinite(y)):
            return None
    return None


def _branch_direction(model: SystemModel, family: int, liu_sign: int | None,
                      direction: int | None) -> tuple[int, int]:
    """Initial tangent sign and the Liu speed-trend sign of the branch.

    With the grad(lambda).r > 0 orientation, the speed trend along +r_i is
    positive, so the tangent sign equals the wanted trend.  Default trends:
    family 1 (and every intermediate family, viewed from the left state)
    decreases the speed; family n (viewed from the right state) increases it.
    Linearly degenerate families carry no trend; they default to +r_i.
    """
    degenerate = model.field_kind(family) == LINEARLY_DEGENERATE
    if direction is not None:
        return int(np.sign(direction)) or 1, 0 if degenerate else int(np.sign(direction))
    if degenerate:
        return 1, 0
    if liu_sign is None:
        liu_sign = 1 if (family == model.n and model.n > 1) else -1
    return liu_sign, liu_sign


def trace_hugoniot(model: SystemModel, base: np.ndarray, family: int, span: float,
                   step: float, liu_sign: int | None = None,
                   direction: int | None = None,
                   max_samples: int = 100_000) -> WaveCurve:
    """Trace the i-family Hugoniot branch from ``base`` up to arclength ``span``.

    ``liu_sign`` (+1/-1) requests the branch whose speed increases/decreases;
    ``direction`` (+1/-1) instead forces the initial tangent +-r_i and is the
    way to choose a side on linearly degenerate families.  The parameter s is
    cumulative state-space arclength with s=0 at the base.

    Raises ContinuationError (with the partial curve attached) when Newton
    fails below the minimal step, a fold is detected, or the curve leaves the
    strict domain.
    """
    model.require_strict(base)
    if not 1 <= family <= model.n:
        raise ValueError(f"family must be in 1..{model.n}")
    if span <= 0.0 or step <= 0.0:
        raise ValueError("span and step must be positive")

    lam0 = model.eigenvalue(base, family)
    r0 = model.eigenvector(base, family)
    sign, trend = _branch_direction(model, family, liu_sign, direction)
    dlam = model.lambda_directional_derivative(base, family, r0)
    tangent = np.concatenate([sign * r0, [0.5 * sign * dlam]])
    tangent /= np.linalg.norm(tangent)

    n = model.n
    s_vals = [0.0]
    states = [base.copy()]
    speeds = [lam0]
    residuals = [0.0]

    y = np.concatenate([base, [lam0]])
    h = step
    min_step = max(MIN_STEP_FRACTION * span, 1e-15)

    def fail(msg: str):
        curve = _assemble_hugoniot(model, base, family, s_vals, states, speeds,
                                   residuals, sign)
        raise ContinuationError(msg, partial_curve=curve)

    while s_vals[-1] < span and len(s_vals) < max_samples:
        accepted = None
        while accepted is None:
            pred = y + h * tangent
            accepted = _newton_correct(model, base, pred, tangent, pred)
            if accepted is None:
                h *= 0.5
                if h < min_step:
                    fail(f"Newton breakdown at s={s_vals[-1]:.6g} (step underflow)")
        new_state, new_sigma = accepted[:n], float(accepted[n])
        if not model.in_domain(new_state):
            fail(f"curve left the strict domain at s={s_vals[-1]:.6g}")
        new_tangent = accepted - y
        nrm = np.linalg.norm(new_tangent)
        if nrm == 0.0:
            fail("continuation stalled (zero step)")
        new_tangent /= nrm
        if new_tangent @ tangent <= 0.0:
            fail(f"fold detected at s={s_vals[-1]:.6g}")
        ds = float(np.linalg.norm(new_state - y[:n]))
        s_vals.append(s_vals[-1] + ds)
        states.append(new_state.copy())
        speeds.append(new_sigma)
        residuals.append(float(np.max(np.abs(
            rh_residual_vector(model, base, new_state, new_sigma)))))
        y = accepted
        tangent = new_tangent
        h = min(h * 1.3, step)

    if len(s_vals) >= max_samples and s_vals[-1] < span:
        fail("sample budget exhausted before reaching the requested span")

    curve = _assemble_hugoniot(model, base, family, s_vals, states, speeds,
                               residuals, sign)
    curve._extra["liu_trend"] = trend
    return curve


def _assemble_hugoniot(model, base, family, s_vals, states, speeds, residuals, sign):
    return WaveCurve(
        model=model,
        family=family,
        kind=HUGONIOT,
        base_state=base.copy(),
        parameterization="state-space arclength, pseudo-arclength continuation",
        s=np.asarray(s_vals),
        states=np.asarray(states),
        speeds=np.asarray(speeds),
        rh_residuals=np.asarray(residuals),
        branch_sign=sign,
    )


def trace_rarefaction(model: SystemModel, base: np.ndarray, family: int,
                      direction: str, span: float, step: float) -> WaveCurve:
    """Integrate the i-family rarefaction curve from ``base``.

    ``direction`` is "forward" (lambda_i increasing) or "backward"
    (lambda_i decreasing).  Raises DomainExitError with the partial curve when
    the trajectory reaches the domain boundary before the requested span.
    """
    model.require_strict(base)
    if model.field_kind(family) == LINEARLY_DEGENERATE:
        raise ValueError(f"family {family} is linearly degenerate; "
                         "its contact curve is a Hugoniot locus")
    if direction not in ("forward", "backward"):
        raise ValueError("direction must be 'forward' or 'backward'")
    sign = 1.0 if direction == "forward" else -1.0

    def rhs(_s, u):
        return sign * model.eigenvector(u, family)

    def exit_event(_s, u):
        return model.domain_margin(u)

    exit_event.terminal = True
    exit_event.direction = -1

    s_eval = np.linspace(0.0, span, max(2, int(np.ceil(span / step)) + 1))
    sol = solve_ivp(rhs, (0.0, span), base, method="RK45", t_eval=s_eval,
                    rtol=1e-10, atol=1e-10, dense_output=True,
                    events=exit_event, max_step=max(step, span / 50.0))
    states = sol.y.T
    s_vals = sol.t
    lams = np.array([model.eigenvalue(u, family) for u in states])
    curve = WaveCurve(
        model=model,
        family=family,
        kind=RAREFACTION_FORWARD if sign > 0 else RAREFACTION_BACKWARD,
        base_state=base.copy(),
        parameterization="integral-curve arclength of the unit eigenvector field",
        s=s_vals,
        states=states,
        speeds=lams,
        rh_residuals=None,
        branch_sign=int(sign),
    )
    curve._extra["dense"] = sol.sol
    if sol.status == 1:  # terminated by the domain-exit event
        raise DomainExitError(
            f"rarefaction curve left the domain at s={s_vals[-1] if len(s_vals) else 0.0:.6g}",
            partial_curve=curve)
    if not sol.success:
        raise DomainExitError(f"rarefaction integration failed: {sol.message}",
                              partial_curve=curve)
    return curve


def polish_discontinuity(model: SystemModel, base: np.ndarray, state: np.ndarray,
                         sigma: float) -> tuple[np.ndarray, float]:
    """Newton-polish an approximate Hugoniot point to residual <= 1e-12.

    The correction is constrained to the hyperplane through the initial guess
    orthogonal to the jump direction, so the point stays on its branch.
    """
    jumpdir = state - base
    nrm = np.linalg.norm(jumpdir)
    if nrm == 0.0:
        return state.copy(), sigma
    tangent = np.concatenate([jumpdir / nrm, [0.0]])
    y0 = np.concatenate([state, [sigma]])
    out = _newton_correct(model, base, y0, tangent, y0)
    if out is None:
        raise ContinuationError("failed to polish the discontinuity onto the locus")
    return out[:model.n], float(out[model.n])


def curve_point(curve: WaveCurve, s0: float,
                polish: bool = True) -> tuple[np.ndarray, float]:
    """State and speed at parameter ``s0``, optionally polished onto the locus."""
    if not 0.0 <= s0 <= curve.span:
        raise ValueError(f"s0={s0} outside the traced span [0, {curve.span:.6g}]")
    state = curve.state_at(s0)
    speed = curve.speed_at(s0)
    if polish and curve.kind == HUGONIOT and s0 > 0.0:
        state, speed = polish_discontinuity(curve.model, curve.base_state, state, speed)
    return state, speed
