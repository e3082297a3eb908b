"""The two stability checks: surface maximum of D_sm and sweep maximum of D_RH.

check_h1 maximizes D_sm over the sampled level surface, sharpening the best
samples by projected gradient ascent inside the surface (tangential step,
bisection re-projection along the level normal).  check_h2 sweeps candidate
left states through a tube around the surface plus the reference states
themselves, traces each family's admissible Hugoniot branch, and evaluates
D_RH on every entropic sub-discontinuity whose endpoints the surface
separates.  Pass verdicts are explicitly "no violation found within the
recorded coverage".
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..core import LINEARLY_DEGENERATE
from ..errors import ContinuationError, DomainError, ShockLabError
from ..waves import trace_hugoniot
from .certificates import (H1_PASS, H1_VIOLATION, H2_PASS, H2_VIOLATION, Certificate)
from .surface import PHI_TOL, SigmaSurface
from .weighted import (WeightedSetup, crosses_either_way, crosses_outward, d_rh_raw,
                       d_sm, d_sm_gradient)

MODE_PLAIN = "res"
MODE_STRONG = "sres"


def _lexicographic_argmax(values: np.ndarray, states: np.ndarray) -> int:
    """Index of the maximum; exact ties broken by lexicographic state order."""
    best = int(np.argmax(values))
    ties = np.flatnonzero(values == values[best])
    if len(ties) > 1:
        order = sorted(ties, key=lambda i: tuple(states[i]))
        best = order[0]
    return best


def _reproject(setup: WeightedSetup, u: np.ndarray, phi_tol: float,
               max_expand: int = 60) -> np.ndarray | None:
    """Return the nearby point of Sigma_a along the local level normal."""
    if not setup.model.evaluable(u):
        return None
    grad = setup.phi_gradient(u)
    nrm = np.linalg.norm(grad)
    if nrm < 1e-14:
        return None
    normal = grad / nrm
    val = setup.phi(u)
    if abs(val) <= phi_tol:
        return u
    # Bracket the zero along the normal: phi grows along +normal.
    step = abs(val) / nrm
    lo_t, hi_t = 0.0, -np.sign(val) * step
    u_hi = u + hi_t * normal
    k = 0
    while setup.model.in_domain(u_hi) and np.sign(setup.phi(u_hi)) == np.sign(val):
        hi_t *= 2.0
        u_hi = u + hi_t * normal
        k += 1
        if k > max_expand:
            return None
    if not setup.model.in_domain(u_hi):
        return None
    for _ in range(200):
        mid = 0.5 * (lo_t + hi_t)
        u_mid = u + mid * normal
        vm = setup.phi(u_mid)
        if abs(vm) <= phi_tol:
            return u_mid
        if np.sign(vm) == np.sign(val):
            lo_t = mid
        else:
            hi_t = mid
    return None


def _ascend(setup: WeightedSetup, u0: np.ndarray, budget: int,
            phi_tol: float) -> tuple[np.ndarray, float]:
    """Projected coordinate ascent of D_sm constrained to Sigma_a."""
    u = u0.copy()
    best = d_sm(setup, u)
    scale = 1.0 + float(np.linalg.norm(setup.u_r - setup.u_l))
    for _ in range(budget):
        grad = d_sm_gradient(setup, u)
        normal = setup.phi_gradient(u)
        nn = np.linalg.norm(normal)
        if nn < 1e-14:
            break
        normal = normal / nn
        tangential = grad - (grad @ normal) * normal
        gnorm = np.linalg.norm(tangential)
        if gnorm < 1e-13 * setup.functional_scale:
            break
        alpha = 0.1 * scale / (1.0 + gnorm)
        improved = False
        for _ in range(12):
            try:
                cand = _reproject(setup, u + alpha * tangential, phi_tol)
            except DomainError:
                cand = None
            if cand is not None and setup.model.in_domain(cand):
                val = d_sm(setup, cand)
                if val > best:
                    u, best = cand, val
                    improved = True
                    break
            alpha *= 0.5
        if not improved:
            break
    return u, best


def check_h1(setup: WeightedSetup, surface: SigmaSurface, refine_budget: int = 40,
             top_q: int = 5) -> Certificate:
    """Maximize D_sm over the sampled surface; certify the sign of the maximum."""
    if len(surface) == 0:
        raise ValueError("surface has no samples")
    phi_tol = PHI_TOL * setup.phi_scale
    values = np.array([d_sm(setup, u) for u in surface.samples])
    states = surface.samples.copy()

    refined_states = list(states)
    refined_values = list(values)
    if setup.model.n >= 2 and refine_budget > 0:
        order = np.argsort(values)[::-1][:top_q]
        for idx in order:
            u_ref, v_ref = _ascend(setup, states[idx], refine_budget, phi_tol)
            refined_states.append(u_ref)
            refined_values.append(v_ref)
    refined_states = np.asarray(refined_states)
    refined_values = np.asarray(refined_values)

    best = _lexicographic_argmax(refined_values, refined_states)
    max_val = float(refined_values[best])
    witness_state = refined_states[best]
    violated = max_val > setup.tol_violation
    cert = Certificate(
        kind=H1_VIOLATION if violated else H1_PASS,
        setup=setup.summary(),
        values={
            "functional": "d_sm",
            "value": max_val,
            "tol_violation": setup.tol_violation,
            "margin": max_val - setup.tol_violation,
            "phi_at_witness": float(setup.phi(witness_state)),
        },
        witness={"state": [float(x) for x in witness_state]},
        coverage={
            **surface.coverage(),
            "refine_budget": refine_budget,
            "top_q": top_q,
            "interpretation": ("D_sm positive at witness" if violated
                               else "no violation found on sampled surface"),
        },
    )
    return cert


@dataclass
class SweepRecord:
    u_minus: np.ndarray
    u_plus: np.ndarray
    sigma: float
    family: int
    s: float
    value: float


def _seed_states(setup: WeightedSetup, surface: SigmaSurface, tube_radius: float,
                 tube_offsets: int, max_seed_samples: int) -> list[np.ndarray]:
    seeds = [setup.u_l.copy(), setup.u_r.copy()]
    offsets = np.linspace(-tube_radius, tube_radius, max(tube_offsets, 1))
    stride = max(1, int(np.ceil(len(surface.samples) / max(max_seed_samples, 1))))
    for u in surface.samples[::stride]:
        grad = setup.phi_gradient(u)
        nrm = np.linalg.norm(grad)
        if nrm < 1e-14:
            continue
        normal = grad / nrm
        for off in offsets:
            cand = u + off * normal
            if setup.model.in_domain(cand):
                seeds.append(cand)
    # Deduplicate near-coincident seeds to keep the sweep size predictable.
    uniq: list[np.ndarray] = []
    for scand in seeds:
        if all(np.linalg.norm(scand - t) > 1e-9 for t in uniq):
            uniq.append(scand)
    return uniq


def check_h2(setup: WeightedSetup, surface: SigmaSurface,
             families: list[int] | None = None, curve_span: float | None = None,
             samples_per_curve: int = 40, tube_radius: float | None = None,
             tube_offsets: int = 3, mode: str = MODE_PLAIN,
             max_seed_samples: int = 24) -> Certificate:
    """Sweep entropic sub-discontinuities split by Sigma_a; certify max D_RH.

    ``mode`` selects the plain sign condition (u_- inside, u_+ outside) or the
    strong one (endpoints on opposite sides, either orientation).  The sweep
    is a heuristic search: its pass certificate records grids and spans and
    claims only that no violation was found there.
    """
    if mode not in (MODE_PLAIN, MODE_STRONG):
        raise ValueError("mode must be 'res' or 'sres'")
    model = setup.model
    if families is None:
        families = list(range(1, model.n + 1))
    jump = float(np.linalg.norm(setup.u_r - setup.u_l))
    if curve_span is None:
        curve_span = 2.0 * jump + 1.0
    if tube_radius is None:
        tube_radius = 0.25 * (jump + 1.0)

    condition = crosses_outward if mode == MODE_PLAIN else crosses_either_way
    seeds = _seed_states(setup, surface, tube_radius, tube_offsets, max_seed_samples)
    step = curve_span / samples_per_curve

    best: SweepRecord | None = None
    n_pairs = 0
    n_traces = 0
    n_failed = 0
    ent_tol = 1e-10 * setup.functional_scale
    for u_m in seeds:
        phi_m = setup.phi(u_m)
        for fam in families:
            degenerate = model.field_kind(fam) == LINEARLY_DEGENERATE
            directions = (1, -1) if degenerate else (None,)
            for direction in directions:
                n_traces += 1
                try:
                    kwargs = {"direction": direction} if degenerate else {"liu_sign": -1}
                    curve = trace_hugoniot(model, u_m, fam, span=curve_span,
                                           step=step, **kwargs)
                except ContinuationError as err:
                    curve = err.partial_curve
                    n_failed += 1
                    if curve is None or len(curve) < 2:
                        continue
                except (DomainError, ShockLabError):
                    n_failed += 1
                    continue
                for k in range(1, len(curve)):
                    u_p = curve.states[k]
                    sig = float(curve.speeds[k])
                    if not model.evaluable(u_p):
                        continue
                    # Contact pieces are reversible (entropy equality), so
                    # degenerate families contribute both orientations.
                    orientations = [(u_m, u_p, phi_m, None)]
                    if degenerate:
                        orientations.append((u_p, u_m, None, phi_m))
                    for o_minus, o_plus, cached_m, cached_p in orientations:
                        ent_gap = (model.entropy_flux(o_plus)
                                   - model.entropy_flux(o_minus)
                                   - sig * (model.entropy(o_plus)
                                            - model.entropy(o_minus)))
                        if ent_gap > ent_tol:
                            continue
                        pm = cached_m if cached_m is not None else setup.phi(o_minus)
                        pp = cached_p if cached_p is not None else setup.phi(o_plus)
                        if not condition(setup, pm, pp):
                            continue
                        n_pairs += 1
                        val = d_rh_raw(setup, o_minus, o_plus, sig)
                        rec = SweepRecord(o_minus, o_plus, sig, fam,
                                          float(curve.s[k]), val)
                        if best is None or val > best.value or (
                                val == best.value
                                and tuple(rec.u_minus) + tuple(rec.u_plus)
                                < tuple(best.u_minus) + tuple(best.u_plus)):
                            best = rec

    coverage = {
        **surface.coverage(),
        "mode": mode,
        "families": families,
        "curve_span": float(curve_span),
        "samples_per_curve": int(samples_per_curve),
        "tube_radius": float(tube_radius),
        "tube_offsets": int(tube_offsets),
        "max_seed_samples": int(max_seed_samples),
        "n_seeds": len(seeds),
        "n_traces": n_traces,
        "n_failed_traces": n_failed,
        "n_qualifying_pairs": n_pairs,
    }
    if best is None:
        coverage["interpretation"] = ("vacuous: no sub-discontinuity satisfied the "
                                      "sign condition; no violation found")
        return Certificate(kind=H2_PASS, setup=setup.summary(),
                           values={"functional": "d_rh", "value": None,
                                   "tol_violation": setup.tol_violation},
                           witness=None, coverage=coverage)

    violated = best.value > setup.tol_violation
    coverage["interpretation"] = ("D_RH positive at witness" if violated
                                  else "no violation found within swept coverage")
    return Certificate(
        kind=H2_VIOLATION if violated else H2_PASS,
        setup=setup.summary(),
        values={
            "functional": "d_rh",
            "value": float(best.value),
            "tol_violation": setup.tol_violation,
            "margin": float(best.value) - setup.tol_violation,
        },
        witness={
            "u_minus": [float(x) for x in best.u_minus],
            "u_plus": [float(x) for x in best.u_plus],
            "sigma": float(best.sigma),
            "family": int(best.family),
            "curve_parameter": float(best.s),
        },
        coverage=coverage,
    )
