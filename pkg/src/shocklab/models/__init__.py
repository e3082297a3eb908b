"""Concrete system models and a name-based factory."""

from __future__ import annotations

from .burgers import BurgersModel
from .euler import (EulerModel, euler_conservative_to_primitive,
                    euler_primitive_to_conservative, euler_sound_speed)
from .isentropic import IsentropicEulerModel
from .mhd import MhdModel, mhd_alpha, mhd_eigen, mhd_quasilinear_matrix

_FACTORIES = {
    "burgers": BurgersModel,
    "isentropic-euler": IsentropicEulerModel,
    "euler": EulerModel,
    "mhd": MhdModel,
}

MODEL_NAMES = tuple(sorted(_FACTORIES))


def make_model(name: str, **params):
    """Build a model by registry name, passing through keyword parameters."""
    try:
        factory = _FACTORIES[name]
    except KeyError:
        raise ValueError(f"unknown model {name!r}; available: {MODEL_NAMES}") from None
    return factory(**params)


__all__ = [
    "BurgersModel",
    "IsentropicEulerModel",
    "EulerModel",
    "MhdModel",
    "euler_primitive_to_conservative",
    "euler_conservative_to_primitive",
    "euler_sound_speed",
    "mhd_alpha",
    "mhd_eigen",
    "mhd_quasilinear_matrix",
    "make_model",
    "MODEL_NAMES",
]
