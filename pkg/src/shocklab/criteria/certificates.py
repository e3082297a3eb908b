"""Machine-readable verdicts with deterministic JSON serialization.

Every violation certificate stores enough of its witness to be re-validated
offline: rebuilding the model from the recorded parameters and re-evaluating
the recorded functional at the witness must reproduce the stored value to
1e-10 (scaled) with the claimed sign.  Pass certificates are evidence of
absence over a recorded search coverage, never proofs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .. import __version__

H1_PASS = "H1-pass"
H1_VIOLATION = "H1-violation"
H2_PASS = "H2-pass"
H2_VIOLATION = "H2-violation"
NO_CONTRACTION = "no-contraction-witness"
WEIGHT_RANGE = "weight-range"

VIOLATION_KINDS = (H1_VIOLATION, H2_VIOLATION, NO_CONTRACTION)


@dataclass
class Certificate:
    kind: str
    setup: dict
    values: dict = field(default_factory=dict)
    witness: dict | None = None
    coverage: dict = field(default_factory=dict)
    tool_version: str = __version__

    @property
    def is_violation(self) -> bool:
        return self.kind in VIOLATION_KINDS

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "setup": self.setup,
            "values": self.values,
            "witness": self.witness,
            "coverage": self.coverage,
            "tool_version": self.tool_version,
        }

    def to_json(self, extra: dict | None = None) -> str:
        payload = self.to_dict()
        if extra:
            payload.update(extra)
        return json.dumps(_plainify(payload), sort_keys=True, indent=2) + "\n"

    @staticmethod
    def from_dict(payload: dict) -> "Certificate":
        return Certificate(
            kind=payload["kind"],
            setup=payload["setup"],
            values=payload.get("values", {}),
            witness=payload.get("witness"),
            coverage=payload.get("coverage", {}),
            tool_version=payload.get("tool_version", __version__),
        )


def _plainify(obj):
    """Recursively convert numpy scalars/arrays into JSON-stable built-ins."""
    if isinstance(obj, dict):
        return {str(k): _plainify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plainify(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_plainify(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    return obj


@dataclass
class RevalidationResult:
    ok: bool
    kind: str
    stored: float | None
    recomputed: float | None
    detail: str = ""


def revalidate(payload: dict) -> RevalidationResult:
    """Recompute a certificate's functional at its stored witness.

    Works on the parsed JSON dict so that a round trip through disk is part
    of what is being checked.
    """
    from ..models import make_model
    from .weighted import d_rh_raw, d_sm, setup_from_states

    cert = Certificate.from_dict(payload)
    kind = cert.kind
    if kind == WEIGHT_RANGE:
        results = [revalidate(sub) for sub in cert.values.get("sub_certificates", [])]
        ok = all(r.ok for r in results)
        return RevalidationResult(ok, kind, None, None,
                                  detail=f"{len(results)} nested certificates")

    stored_key = cert.values.get("functional")
    stored = cert.values.get("value")
    if cert.witness is None or stored is None or stored_key is None:
        # Pass certificates record a maximum but need no witness re-check.
        return RevalidationResult(True, kind, None, None, detail="no witness stored")

    info = cert.setup
    model = make_model(info["model"]["name"], **info["model"]["params"])
    setup = setup_from_states(model, np.array(info["u_l"]), np.array(info["u_r"]),
                              a=info["a"], sigma=info["sigma"], family=info.get("family"))
    if stored_key == "d_sm":
        recomputed = d_sm(setup, np.array(cert.witness["state"]))
    elif stored_key == "d_rh":
        recomputed = d_rh_raw(setup, np.array(cert.witness["u_minus"]),
                              np.array(cert.witness["u_plus"]),
                              float(cert.witness["sigma"]))
    else:
        return RevalidationResult(False, kind, stored, None,
                                  detail=f"unknown functional {stored_key!r}")
    tol = 1e-10 * setup.functional_scale
    ok = abs(recomputed - stored) <= tol
    if cert.is_violation:
        ok = ok and recomputed > 0.0
    return RevalidationResult(ok, kind, float(stored), float(recomputed))
