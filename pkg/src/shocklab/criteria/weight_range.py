"""Empirical weight-range search by geometric bisection over a.

A weight passes when both the surface check and the strong sweep check find
no violation.  Searching below (side="below") localizes the largest passing
weight a_* between a passing low endpoint and a failing high endpoint;
side="above" mirrors this for the smallest passing weight.  When both bracket
endpoints fail, a log grid across the bracket is swept: all-fail yields an
empty-range certificate with the per-weight violation certificates attached,
anything else raises BracketError (as does a bracket that passes on both
ends, which localizes nothing).
"""

from __future__ import annotations

import numpy as np

from ..errors import BracketError, ShockLabError
from .certificates import WEIGHT_RANGE, Certificate
from .checks import MODE_STRONG, check_h1, check_h2
from .surface import sample_sigma_surface
from .weighted import WeightedSetup

RESOLUTION = 1e-3


def _verdict(setup: WeightedSetup, a: float, seed: int, surface_samples: int,
             h2_kwargs: dict) -> tuple[bool, dict, list[Certificate]]:
    trial = setup.with_weight(a)
    try:
        surface = sample_sigma_surface(trial, n_samples=surface_samples, seed=seed)
    except ShockLabError as err:
        return False, {"a": a, "error": str(err)}, []
    h1 = check_h1(trial, surface)
    h2 = check_h2(trial, surface, mode=MODE_STRONG, **h2_kwargs)
    ok = not (h1.is_violation or h2.is_violation)
    record = {
        "a": float(a),
        "passes": ok,
        "h1_kind": h1.kind,
        "h2_kind": h2.kind,
        "h1_max": h1.values.get("value"),
        "h2_max": h2.values.get("value"),
        "surface_diameter": surface.diameter,
    }
    return ok, record, [h1, h2]


def find_weight_range(setup: WeightedSetup, side: str, a_bracket: tuple[float, float],
                      budget: int = 40, seed: int = 0, surface_samples: int = 48,
                      grid_points: int = 13,
                      h2_kwargs: dict | None = None) -> Certificate:
    """Localize the empirical boundary of the passing-weight range.

    Returns a weight-range certificate carrying the per-weight records, the
    localized boundary at 1e-3 relative resolution, and the full certificates
    of the innermost passing and failing weights.  Raises BracketError when
    the bracket cannot localize a boundary.
    """
    if side not in ("below", "above"):
        raise ValueError("side must be 'below' or 'above'")
    lo, hi = float(a_bracket[0]), float(a_bracket[1])
    if not (0.0 < lo < hi):
        raise ValueError("bracket must satisfy 0 < lo < hi")
    h2_kwargs = h2_kwargs or {}

    records: list[dict] = []
    certs: list[Certificate] = []

    ok_lo, rec_lo, c_lo = _verdict(setup, lo, seed, surface_samples, h2_kwargs)
    ok_hi, rec_hi, c_hi = _verdict(setup, hi, seed, surface_samples, h2_kwargs)
    records += [rec_lo, rec_hi]

    pass_at_small = ok_lo if side == "below" else ok_hi
    fail_at_large = (not ok_hi) if side == "below" else (not ok_lo)

    if not (pass_at_small and fail_at_large):
        if not ok_lo and not ok_hi:
            grid = np.geomspace(lo, hi, grid_points)
            all_fail = True
            for a in grid:
                ok, rec, cs = _verdict(setup, float(a), seed, surface_samples, h2_kwargs)
                records.append(rec)
                certs += [c for c in cs if c.is_violation][:1]
                if ok:
                    all_fail = False
                    break
            if all_fail:
                return Certificate(
                    kind=WEIGHT_RANGE,
                    setup=setup.summary(),
                    values={"side": side, "empty": True, "a_star": None,
                            "sub_certificates": [c.to_dict() for c in certs]},
                    witness=None,
                    coverage={"bracket": [lo, hi], "grid_points": int(grid_points),
                              "records": records, "resolution": RESOLUTION,
                              "interpretation": "violation found at every trial "
                                                "weight on the log grid"},
                )
        raise BracketError(
            f"bracket endpoints do not straddle the boundary (lo passes={ok_lo}, "
            f"hi passes={ok_hi}, side={side})")

    # Geometric bisection: invariant keeps 'good' passing and 'bad' failing.
    good, bad = (lo, hi) if side == "below" else (hi, lo)
    good_certs = c_lo if side == "below" else c_hi
    bad_certs = c_hi if side == "below" else c_lo
    iters = 0
    while abs(bad - good) > RESOLUTION * max(good, bad) and iters < budget:
        mid = float(np.sqrt(good * bad))
        ok, rec, cs = _verdict(setup, mid, seed, surface_samples, h2_kwargs)
        records.append(rec)
        if ok:
            good, good_certs = mid, cs
        else:
            bad, bad_certs = mid, cs
        iters += 1

    a_star = good
    return Certificate(
        kind=WEIGHT_RANGE,
        setup=setup.summary(),
        values={
            "side": side,
            "empty": False,
            "a_star": float(a_star),
            "first_failing_a": float(bad),
            "sub_certificates": [c.to_dict() for c in (*good_certs, *bad_certs)],
        },
        witness=None,
        coverage={
            "bracket": [lo, hi],
            "bisection_iterations": iters,
            "resolution": RESOLUTION,
            "records": sorted(records, key=lambda r: r["a"]),
            "interpretation": (f"largest passing weight near {a_star:.6g}"
                               if side == "below" else
                               f"smallest passing weight near {a_star:.6g}"),
        },
    )
