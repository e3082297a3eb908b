"""Model-specific no-stability certificates.

MHD intermediate shocks (families 2 and 3) with monotone same-sign magnetic
field across the jump admit a crossing witness for every weight: the backward
fast-family curve from U_l pierces Sigma_a when a < 1 (the enclosed side is
bounded because the entropy grows superlinearly), and the forward fast-family
curve from U_r pierces it when a >= 1 (driven by the fast speed blowing up as
the specific volume collapses).  Euler 2-contacts admit witnesses exactly on
the two forbidden weight branches determined by the internal-energy ratio
e_r/e_l; the borderline weight a = e_r/e_l is expected stable and is only
searched, not certified.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import NotApplicableError, PreconditionError
from ..models import EulerModel, MhdModel
from .certificates import Certificate
from .checks import MODE_STRONG, check_h1, check_h2
from .surface import sample_sigma_surface
from .weighted import WeightedSetup
from .witnesses import (BACKWARD, FORWARD, f_function_profile,
                        intersection_witness_certificate, rarefaction_intersection)

BORDERLINE_TOL = 1e-9


def _mhd_field_signs_ok(setup: WeightedSetup) -> bool:
    model: MhdModel = setup.model
    b_l = model.magnetic_field(setup.u_l)
    b_r = model.magnetic_field(setup.u_r)
    if setup.family == 2:
        return (b_l > b_r > 0.0) or (b_l < b_r < 0.0)
    if setup.family == 3:
        return (b_r > b_l > 0.0) or (b_r < b_l < 0.0)
    return False


def _df1_table(setup: WeightedSetup, curve, n_rows: int = 40) -> list[dict]:
    """Derivative of the unweighted level gap eta(U|U_l) - eta(U|U_r) along
    the forward fast curve, per unit decrease of the specific volume (the
    curve parameter runs opposite to v).  Divergence to -inf as v collapses
    is what forces the curve through the level surface."""
    model = setup.model
    rows = []
    stride = max(1, len(curve.s) // n_rows)
    dgrad = model.entropy_gradient(setup.u_r) - model.entropy_gradient(setup.u_l)
    for k in range(0, len(curve.s), stride):
        u = curve.states[k]
        tangent = curve.branch_sign * model.eigenvector(u, curve.family)
        df1_ds = float(dgrad @ tangent)
        dv_ds = float(tangent[0])
        if abs(dv_ds) < 1e-14:
            continue
        rows.append({"v_plus": float(u[0]), "dF1_dv": df1_ds / abs(dv_ds)})
    return rows


def mhd_intersection_certificate(setup: WeightedSetup,
                                 max_span: float | None = None) -> Certificate:
    """Crossing witness for an intermediate MHD shock at the setup's weight.

    Preconditions: the model is planar isentropic MHD, the reference jump is a
    family-2 or family-3 shock, and the magnetic field is monotone with a
    single sign across it.  Chooses the backward family-1 curve from U_l for
    a < 1 and the forward family-4 curve from U_r for a >= 1, finds the
    Sigma_a crossing, and certifies D_sm > 0 there.  For the forward curve the
    certificate also tabulates dF_1/dv_+ and records that it is eventually
    negative as v_+ decreases, which is the mechanism forcing the crossing.
    """
    if not isinstance(setup.model, MhdModel):
        raise PreconditionError("setup model is not planar isentropic MHD")
    if setup.family not in (2, 3):
        raise PreconditionError(f"family {setup.family} is not an intermediate "
                                "MHD family (2 or 3)")
    if not _mhd_field_signs_ok(setup):
        raise PreconditionError("magnetic field must be monotone with one sign "
                                "across the jump (B_l > B_r > 0 style ordering)")

    if setup.a < 1.0:
        family, direction = 1, BACKWARD
    else:
        family, direction = 4, FORWARD
    hit = rarefaction_intersection(setup, family, direction, max_span=max_span)
    if not hit.found:
        raise NotApplicableError(
            f"no Sigma_a crossing within traced span {hit.span_traced:g}; "
            "increase max_span")
    profile = f_function_profile(setup, hit.curve, hit.sbar, ubar=hit.ubar)
    cert = intersection_witness_certificate(
        setup, family, direction, hit, profile,
        mechanism="intermediate MHD shock, genuinely nonlinear neighbor family")
    if direction == FORWARD:
        rows = _df1_table(setup, hit.curve)
        tail = [r["dF1_dv"] for r in rows[-5:]]
        cert.coverage["dF1_dv_table"] = rows
        cert.coverage["dF1_dv_eventually_negative"] = bool(tail and max(tail) < 0.0)
    return cert


@dataclass
class ContactRangeResult:
    regime: str
    violation: bool
    certificates: list[Certificate] = field(default_factory=list)


def euler_contact_forbidden_branch(e_l: float, e_r: float, a: float) -> str | None:
    """Which forbidden branch (if any) the weight falls in: 'low' is served by
    the backward family-1 curve, 'high' by the forward family-3 curve."""
    ratio = e_r / e_l
    if a < min(1.0, ratio):
        return "low"
    if a > max(1.0, ratio):
        return "high"
    return None


def euler_contact_range_certificate(setup: WeightedSetup,
                                    max_span: float | None = None,
                                    surface_samples: int = 64,
                                    seed: int = 0,
                                    h2_kwargs: dict | None = None) -> ContactRangeResult:
    """Weight-range verdict for a full-Euler 2-contact.

    Forbidden weights (a below min(1, e_r/e_l) or above max(1, e_r/e_l))
    produce a crossing witness with its F-function profile.  At the borderline
    weight a = e_r/e_l the surface and sweep checks are run and expected to
    find nothing (recorded as "no violation found", not a proof).  Weights in
    the remaining gap are outside the theorem; both checks run heuristically.
    """
    model = setup.model
    if not isinstance(model, EulerModel):
        raise PreconditionError("setup model is not the full Euler system")
    rho_l, v_l, e_l = model.primitive(setup.u_l)
    rho_r, v_r, e_r = model.primitive(setup.u_r)
    p_l = (model.gamma - 1.0) * rho_l * e_l
    p_r = (model.gamma - 1.0) * rho_r * e_r
    tol = 1e-8
    if abs(v_l - v_r) > tol * (1.0 + abs(v_l)) or abs(p_l - p_r) > tol * (1.0 + abs(p_l)):
        raise PreconditionError("pair is not a 2-contact: velocity and pressure "
                                "must match across the jump")

    ratio = e_r / e_l
    if abs(setup.a - ratio) <= BORDERLINE_TOL:
        regime = "borderline"
    else:
        branch = euler_contact_forbidden_branch(e_l, e_r, setup.a)
        regime = {"low": "forbidden-low", "high": "forbidden-high", None: "outside-theorem"}[branch]

    if regime.startswith("forbidden"):
        family, direction = (1, BACKWARD) if regime == "forbidden-low" else (3, FORWARD)
        hit = rarefaction_intersection(setup, family, direction, max_span=max_span)
        if not hit.found:
            raise NotApplicableError(
                f"no Sigma_a crossing within traced span {hit.span_traced:g}")
        profile = f_function_profile(setup, hit.curve, hit.sbar, ubar=hit.ubar)
        cert = intersection_witness_certificate(
            setup, family, direction, hit, profile,
            mechanism="Euler 2-contact, genuinely nonlinear neighbor family")
        cert.coverage["weight_regime"] = regime
        cert.coverage["energy_ratio"] = float(ratio)
        return ContactRangeResult(regime, cert.is_violation, [cert])

    surface = sample_sigma_surface(setup, n_samples=surface_samples, seed=seed)
    h1 = check_h1(setup, surface)
    h2 = check_h2(setup, surface, mode=MODE_STRONG, **(h2_kwargs or {}))
    for cert in (h1, h2):
        cert.coverage["weight_regime"] = regime
        cert.coverage["energy_ratio"] = float(ratio)
        if regime == "borderline":
            cert.coverage["note"] = ("borderline weight e_r/e_l: stability expected; "
                                     "verdict is search evidence only")
    return ContactRangeResult(regime, h1.is_violation or h2.is_violation, [h1, h2])
