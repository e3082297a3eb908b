"""Weighted stability criteria: level-surface geometry, functionals, certificates."""

from .applications import (ContactRangeResult, euler_contact_forbidden_branch,
                           euler_contact_range_certificate, mhd_intersection_certificate)
from .certificates import (H1_PASS, H1_VIOLATION, H2_PASS, H2_VIOLATION,
                           NO_CONTRACTION, WEIGHT_RANGE, Certificate,
                           RevalidationResult, revalidate)
from .checks import MODE_PLAIN, MODE_STRONG, check_h1, check_h2
from .surface import SigmaSurface, default_box, sample_sigma_surface
from .weight_range import find_weight_range
from .weighted import (WeightedSetup, d_rh, d_rh_raw, d_sm, d_sm_gradient,
                       setup_from_states)
from .witnesses import (FFunctionProfile, IntersectionResult, ProfileAssertionError,
                        degenerate_neighbor_check, f_function_profile,
                        rarefaction_intersection)

__all__ = [
    "WeightedSetup",
    "setup_from_states",
    "d_sm",
    "d_sm_gradient",
    "d_rh",
    "d_rh_raw",
    "SigmaSurface",
    "sample_sigma_surface",
    "default_box",
    "check_h1",
    "check_h2",
    "MODE_PLAIN",
    "MODE_STRONG",
    "rarefaction_intersection",
    "f_function_profile",
    "FFunctionProfile",
    "IntersectionResult",
    "ProfileAssertionError",
    "degenerate_neighbor_check",
    "mhd_intersection_certificate",
    "euler_contact_range_certificate",
    "euler_contact_forbidden_branch",
    "ContactRangeResult",
    "Certificate",
    "revalidate",
    "RevalidationResult",
    "find_weight_range",
    "H1_PASS",
    "H1_VIOLATION",
    "H2_PASS",
    "H2_VIOLATION",
    "NO_CONTRACTION",
    "WEIGHT_RANGE",
]
