"""Integral consistency oracles along traced Hugoniot curves.

Along an i-family locus S(s) with speed sigma(s), the flux/entropy jump
balance gives

    q(S(s),v) - sigma(s) eta(S(s)|v)
        = q(u,v) - sigma(s) eta(u|v) + int_0^s sigma'(t) eta(u|S(t)) dt,

for any reference v, where u is the base state.  Both sides are computed
independently here (left directly, right by adaptive quadrature over spline
interpolants of the traced samples), making agreement a strong cross-check of
the continuation output.  The two-point variant anchored at an interior s0
yields the entropy-loss profile g(s) together with its near-field quadratic
and far-field linear bounds in |sigma(s) - sigma(s0)|.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from ..core import SystemModel, relative_entropy, relative_entropy_flux
from ..errors import QuadratureError
from .curves import HUGONIOT, WaveCurve

QUAD_TOL = 1e-11


def _integrate(fun, a: float, b: float) -> float:
    if a == b:
        return 0.0
    val, err = quad(fun, a, b, epsabs=QUAD_TOL, epsrel=QUAD_TOL, limit=400)
    if not np.isfinite(val) or err > 1e-6 * (1.0 + abs(val)):
        raise QuadratureError(f"quadrature error estimate {err:.2e} too large")
    return val


def diperna_check(model: SystemModel, curve: WaveCurve, v: np.ndarray,
                  s: float) -> tuple[float, float]:
    """Both sides of the jump-balance identity at parameter ``s``.

    Returns (lhs, rhs); the caller asserts their agreement.
    """
    if curve.kind != HUGONIOT:
        raise ValueError("diperna_check needs a Hugoniot curve")
    if not 0.0 <= s <= curve.span:
        raise ValueError(f"s={s} outside the traced span [0, {curve.span:.6g}]")
    u = curve.base_state
    state = curve.state_at(s)
    sigma = curve.speed_at(s)

    lhs = relative_entropy_flux(model, state, v) - sigma * relative_entropy(model, state, v)

    def integrand(t: float) -> float:
        return curve.speed_derivative_at(t) * relative_entropy(model, u, curve.state_at(t))

    rhs = (relative_entropy_flux(model, u, v) - sigma * relative_entropy(model, u, v)
           + _integrate(integrand, 0.0, s))
    return lhs, rhs


@dataclass
class EntropyLossProfile:
    """Sampled g(s) with the fitted bound constants.

    ``bound_quadratic`` and ``bound_linear`` are -k|dsigma|^2 and -k|dsigma|
    evaluated with the fitted k; the fit reports the largest k > 0 and the
    near-field half-width delta for which g <= bound holds on every sample
    (quadratic inside |s - s0| < delta, linear outside).
    """

    s: np.ndarray
    g: np.ndarray
    dsigma: np.ndarray
    bound_quadratic: np.ndarray
    bound_linear: np.ndarray
    k: float
    delta: float
    s0: float

    def table(self) -> list[tuple[float, float, float, float]]:
        return [(float(si), float(gi), float(bq), float(bl))
                for si, gi, bq, bl in zip(self.s, self.g, self.bound_quadratic,
                                          self.bound_linear)]


def delta_k_profile(model: SystemModel, curve: WaveCurve, s0: float) -> EntropyLossProfile:
    """Entropy-loss profile g(s) anchored at the interior parameter ``s0``.

    g(s) = q(S(s),S(s0)) - sigma(s) eta(S(s)|S(s0)) is evaluated through the
    quadrature form int_{s0}^{s} sigma'(t) (eta(u|S(t)) - eta(u|S(s0))) dt, then
    the largest constant k and split width delta with

        g(s) <= -k |sigma(s)-sigma(s0)|^2   for |s-s0| < delta,
        g(s) <= -k |sigma(s)-sigma(s0)|     for |s-s0| >= delta,

    are fitted over the curve samples.  k <= 0 means no such bound held.
    """
    if curve.kind != HUGONIOT:
        raise ValueError("delta_k_profile needs a Hugoniot curve")
    if not 0.0 < s0 < curve.span:
        raise ValueError("s0 must be interior to the traced span")
    u = curve.base_state
    ref = curve.state_at(s0)
    eta_ref = relative_entropy(model, u, ref)

    def integrand(t: float) -> float:
        return curve.speed_derivative_at(t) * (
            relative_entropy(model, u, curve.state_at(t)) - eta_ref)

    s_grid = curve.s
    g = np.empty_like(s_grid)
    # Cumulative segment integration outward from s0 in both directions.
    k0 = int(np.searchsorted(s_grid, s0))
    nodes = np.unique(np.concatenate([s_grid, [s0]]))
    j0 = int(np.searchsorted(nodes, s0))
    acc = {s0: 0.0}
    running = 0.0
    for j in range(j0, len(nodes) - 1):
        running += _integrate(integrand, nodes[j], nodes[j + 1])
        acc[nodes[j + 1]] = running
    running = 0.0
    for j in range(j0, 0, -1):
        running += _integrate(integrand, nodes[j], nodes[j - 1])
        acc[nodes[j - 1]] = running
    for idx, si in enumerate(s_grid):
        g[idx] = acc[si]

    sig0 = curve.speed_at(s0)
    dsig = np.abs(curve.speeds - sig0)

    interior = dsig > 1e-13 * (1.0 + abs(sig0))
    k_best, delta_best = 0.0, 0.0
    half_widths = np.unique(np.abs(s_grid - s0))
    for delta in half_widths[half_widths > 0.0]:
        near = interior & (np.abs(s_grid - s0) < delta)
        far = interior & (np.abs(s_grid - s0) >= delta)
        ks = []
        if near.any():
            ks.append(np.min(-g[near] / dsig[near] ** 2))
        if far.any():
            ks.append(np.min(-g[far] / dsig[far]))
        if not ks:
            continue
        k = float(min(ks))
        if k > k_best:
            k_best, delta_best = k, float(delta)
    return EntropyLossProfile(
        s=s_grid.copy(),
        g=g,
        dsigma=dsig,
        bound_quadratic=-k_best * dsig ** 2,
        bound_linear=-k_best * dsig,
        k=k_best,
        delta=delta_best,
        s0=float(s0),
    )
