import numpy as np
import pytest

from shocklab.models import (BurgersModel, EulerModel, IsentropicEulerModel,
                             MhdModel, euler_primitive_to_conservative)
from shocklab.waves import curve_point, trace_hugoniot


def rel_close(lhs, rhs, tol):
    return abs(lhs - rhs) <= tol * (1.0 + abs(lhs) + abs(rhs))


@pytest.fixture(scope="session")
def burgers():
    return BurgersModel()


@pytest.fixture(scope="session")
def isentropic():
    return IsentropicEulerModel()


@pytest.fixture(scope="session")
def euler():
    return EulerModel()


@pytest.fixture(scope="session")
def mhd():
    return MhdModel()


@pytest.fixture(scope="session")
def all_models(burgers, isentropic, euler, mhd):
    return [burgers, isentropic, euler, mhd]


@pytest.fixture(scope="session")
def euler_left_state():
    return euler_primitive_to_conservative(1.0, 0.0, 2.5)


@pytest.fixture(scope="session")
def euler_one_shock(euler, euler_left_state):
    """Moderate 1-family shock: (u_l, u_r, sigma) with u_r on the traced locus."""
    curve = trace_hugoniot(euler, euler_left_state, 1, span=1.0, step=0.01)
    u_r, sigma = curve_point(curve, 0.6)
    return euler_left_state, u_r, sigma, curve


@pytest.fixture(scope="session")
def euler_contact_pair(euler):
    """2-contact with e_l = 2, e_r = 1 (equal velocity and pressure)."""
    u_l = euler_primitive_to_conservative(1.0, 0.0, 2.0)
    u_r = euler_primitive_to_conservative(2.0, 0.0, 1.0)
    return u_l, u_r


@pytest.fixture(scope="session")
def mhd_two_shock(mhd):
    """Family-2 shock from U_l = (1,1,0,0) with B_l > B_r > 0."""
    u_l = np.array([1.0, 1.0, 0.0, 0.0])
    curve = trace_hugoniot(mhd, u_l, 2, span=0.6, step=0.01)
    u_r, sigma = curve_point(curve, 0.4)
    return u_l, u_r, sigma, curve


@pytest.fixture(scope="session")
def mhd_three_shock(mhd):
    """Family-3 shock from U_l = (1,1,0,0) with B_r > B_l > 0."""
    u_l = np.array([1.0, 1.0, 0.0, 0.0])
    curve = trace_hugoniot(mhd, u_l, 3, span=0.6, step=0.01)
    u_r, sigma = curve_point(curve, 0.4)
    return u_l, u_r, sigma, curve
