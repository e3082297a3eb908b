"""Wave curves: Hugoniot continuation, rarefaction integration, admissibility."""

from .admissibility import (AdmissibilityFlags, Discontinuity, classify_admissibility,
                            infer_family, solve_speed)
from .curves import (HUGONIOT, RAREFACTION_BACKWARD, RAREFACTION_FORWARD, WaveCurve,
                     curve_point, polish_discontinuity, rh_residual_vector,
                     trace_hugoniot, trace_rarefaction)
from .consistency import EntropyLossProfile, delta_k_profile, diperna_check

__all__ = [
    "AdmissibilityFlags",
    "Discontinuity",
    "classify_admissibility",
    "infer_family",
    "solve_speed",
    "WaveCurve",
    "trace_hugoniot",
    "trace_rarefaction",
    "curve_point",
    "polish_discontinuity",
    "rh_residual_vector",
    "diperna_check",
    "delta_k_profile",
    "EntropyLossProfile",
    "HUGONIOT",
    "RAREFACTION_FORWARD",
    "RAREFACTION_BACKWARD",
]
