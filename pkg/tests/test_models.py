"""Concrete model implementations: conversions, eigenstructure, field kinds."""

import numpy as np
import pytest

from shocklab.core import GENUINELY_NONLINEAR, LINEARLY_DEGENERATE, fd_step
from shocklab.errors import DegenerateError, DomainError
from shocklab.models import (euler_conservative_to_primitive,
                             euler_primitive_to_conservative, euler_sound_speed,
                             mhd_alpha, mhd_eigen, mhd_quasilinear_matrix)
from shocklab.waves import trace_hugoniot


class TestEulerConversions:
    def test_zero_velocity(self):
        u = euler_primitive_to_conservative(1.0, 0.0, 2.5, 1.4)
        assert np.allclose(u, [1.0, 0.0, 2.5], atol=0.0)

    def test_energy_assembly(self):
        u = euler_primitive_to_conservative(2.0, 1.0, 1.0, 1.4)
        assert np.allclose(u, [2.0, 2.0, 3.0], atol=0.0)  # E = rho(v^2/2 + e)

    def test_round_trip(self):
        rho, v, e = euler_conservative_to_primitive(np.array([1.0, 0.0, 2.5]), 1.4)
        assert (rho, v, e) == pytest.approx((1.0, 0.0, 2.5), abs=1e-14)

    def test_random_round_trips(self):
        rng = np.random.default_rng(5)
        for _ in range(100):
            rho = rng.uniform(0.1, 5.0)
            v = rng.uniform(-3.0, 3.0)
            e = rng.uniform(0.1, 5.0)
            back = euler_conservative_to_primitive(
                euler_primitive_to_conservative(rho, v, e), 1.4)
            assert back == pytest.approx((rho, v, e), rel=1e-14)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            euler_primitive_to_conservative(-1.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            euler_primitive_to_conservative(1.0, 0.0, 0.0)


class TestEulerSoundSpeed:
    def test_values(self):
        assert euler_sound_speed(1.0, 2.5, 1.4) == pytest.approx(np.sqrt(1.4), abs=1e-15)
        assert euler_sound_speed(1.0, 1.0, 2.0) == pytest.approx(np.sqrt(2.0), abs=1e-15)

    def test_degenerate_boundary_rejected(self):
        # c -> 0 as e -> 0, but e = 0 itself is outside the domain.
        with pytest.raises(DomainError):
            euler_sound_speed(1.0, 0.0, 1.4)
        assert euler_sound_speed(1.0, 1e-30, 1.4) == pytest.approx(0.0, abs=1e-14)


class TestMhdAlpha:
    def test_zero_field_collapse(self):
        # B = 0 collapses the discriminant: roots are {beta^2/v, c^2}.
        am, ap = mhd_alpha(1.0, 0.0, 1.0, 2.0)
        assert (am, ap) == pytest.approx((1.0, 2.0), abs=1e-14)

    def test_quadratic_formula_case(self):
        am, ap = mhd_alpha(1.0, 1.0, 1.0, 2.0)
        assert am == pytest.approx(2.0 - np.sqrt(2.0), abs=1e-14)
        assert ap == pytest.approx(2.0 + np.sqrt(2.0), abs=1e-14)

    def test_roots_satisfy_quartic(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            v = rng.uniform(0.2, 3.0)
            B = rng.uniform(-2.0, 2.0)
            beta = rng.uniform(0.2, 2.0)
            gamma = rng.uniform(1.1, 2.5)
            c2 = gamma * v ** (-gamma - 1.0)
            for lam2 in mhd_alpha(v, B, beta, gamma):
                res = lam2 ** 2 - ((B * B + beta * beta) / v + c2) * lam2 \
                    + beta * beta * c2 / v
                assert abs(res) <= 1e-10 * (1.0 + lam2 ** 2)

    def test_ordering_alpha_minus_c2_alpha_plus(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            v = rng.uniform(0.2, 3.0)
            B = rng.uniform(0.05, 2.0) * rng.choice([-1.0, 1.0])
            beta = rng.uniform(0.2, 2.0)
            gamma = rng.uniform(1.1, 2.5)
            c2 = gamma * v ** (-gamma - 1.0)
            am, ap = mhd_alpha(v, B, beta, gamma)
            assert 0.0 < am < c2 < ap


class TestMhdEigen:
    def test_opposite_speed_pairs(self):
        rng = np.random.default_rng(17)
        for _ in range(20):
            U = np.array([rng.uniform(0.3, 2.0), rng.uniform(0.2, 2.0),
                          rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)])
            lams, _ = mhd_eigen(U, 1.0, 5.0 / 3.0)
            assert lams[0] == pytest.approx(-lams[3], rel=1e-14)
            assert lams[1] == pytest.approx(-lams[2], rel=1e-14)

    def test_fast_speed_closed_form(self):
        lams, _ = mhd_eigen(np.array([1.0, 1.0, 0.0, 0.0]), 1.0, 2.0)
        assert lams[3] == pytest.approx(np.sqrt(2.0 + np.sqrt(2.0)), abs=1e-14)

    def test_eigen_residual_quasilinear_matrix(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            v = rng.uniform(0.3, 2.0)
            B = rng.uniform(0.1, 2.0) * rng.choice([-1.0, 1.0])
            U = np.array([v, v * B, rng.uniform(-1, 1), rng.uniform(-1, 1)])
            lams, vecs = mhd_eigen(U, 1.0, 5.0 / 3.0)
            A = mhd_quasilinear_matrix(v, B, 1.0, 5.0 / 3.0)
            for i in range(4):
                res = np.linalg.norm(A @ vecs[:, i] - lams[i] * vecs[:, i])
                assert res <= 1e-8 * (1.0 + abs(lams[i]))

    def test_below_field_floor_raises(self):
        with pytest.raises(DegenerateError):
            mhd_eigen(np.array([1.0, 1e-12, 0.0, 0.0]), 1.0, 5.0 / 3.0)


class TestFieldKinds:
    def test_euler_contact_field_degenerate(self, euler):
        rng = np.random.default_rng(29)
        for u in euler.sample_states(rng, 50):
            lams, vecs = euler.eigen(u)
            d2 = euler.lambda_directional_derivative(u, 2, vecs[:, 1])
            assert abs(d2) <= 1e-8
            for fam in (1, 3):
                d = euler.lambda_directional_derivative(u, fam, vecs[:, fam - 1])
                assert d > 0.0

    def test_mhd_all_fields_genuinely_nonlinear(self, mhd):
        rng = np.random.default_rng(31)
        count = 0
        while count < 1000:
            u = mhd.sample_states(rng, 1)[0]
            if abs(u[1] / u[0]) <= 0.1:
                continue
            count += 1
            lams, vecs = mhd.eigen(u)
            for fam in range(1, 5):
                d = mhd.lambda_directional_derivative(u, fam, vecs[:, fam - 1])
                assert d > 0.0

    def test_declared_kinds(self, all_models):
        for model in all_models:
            for fam in range(1, model.n + 1):
                assert model.field_kind(fam) in (GENUINELY_NONLINEAR,
                                                 LINEARLY_DEGENERATE)

    def test_eigenvalues_sorted_and_unit_vectors(self, all_models):
        rng = np.random.default_rng(37)
        for model in all_models:
            for u in model.sample_states(rng, 30):
                lams, vecs = model.eigen(u)
                assert np.all(np.diff(lams) >= -1e-14)
                assert np.allclose(np.linalg.norm(vecs, axis=0), 1.0, atol=1e-12)

    def test_flux_jacobian_eigen_residual(self, all_models):
        rng = np.random.default_rng(41)
        for model in all_models:
            for u in model.sample_states(rng, 30):
                lams, vecs = model.eigen(u)
                A = model.flux_jacobian(u)
                for i in range(model.n):
                    res = np.linalg.norm(A @ vecs[:, i] - lams[i] * vecs[:, i])
                    assert res <= 1e-8 * (1.0 + abs(lams[i])), model.name


class TestEulerContactRelation:
    def test_pressure_velocity_constant_on_contact_curve(self, euler):
        base = euler_primitive_to_conservative(1.3, 0.4, 1.7)
        curve = trace_hugoniot(euler, base, 2, span=1.0, step=0.02)
        rho0, v0, e0 = euler.primitive(base)
        p0 = (euler.gamma - 1.0) * rho0 * e0
        for state in curve.states:
            rho, v, e = euler.primitive(state)
            p = (euler.gamma - 1.0) * rho * e
            assert abs(v - v0) <= 1e-8 * (1.0 + abs(v0))
            assert abs(p - p0) <= 1e-8 * (1.0 + abs(p0))
