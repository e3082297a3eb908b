"""Relative-entropy algebra against symbolic and high-precision oracles."""

import mpmath
import numpy as np
import pytest

from shocklab.core import (pseudo_distance, relative_entropy, relative_entropy_flux,
                           relative_pair, triangle_identities)
from shocklab.diagnostics import identity_report, rel_gap
from shocklab.errors import DomainError, GridError
from shocklab.models import euler_primitive_to_conservative

from conftest import rel_close


def burgers_eta_rel(u, v):
    # eta = u^2/2 gives eta(u|v) = (u - v)^2 / 2
    return 0.5 * (u - v) ** 2


def burgers_q_rel(u, v):
    # q = u^3/3, f = u^2/2
    return u ** 3 / 3.0 - v ** 3 / 3.0 - v * (0.5 * u * u - 0.5 * v * v)


class TestRelativeEntropy:
    def test_coincident_states_vanish(self, burgers):
        assert relative_entropy(burgers, np.array([1.0]), np.array([1.0])) == 0.0

    def test_burgers_symbolic(self, burgers):
        val = relative_entropy(burgers, np.array([2.0]), np.array([1.0]))
        assert val == pytest.approx(burgers_eta_rel(2.0, 1.0), abs=1e-15)
        assert val == pytest.approx(0.5, abs=1e-15)

    def test_euler_high_precision_oracle(self, euler):
        # Independent arbitrary-precision evaluation of the same entropy formula.
        u = np.array([1.0, 0.0, 2.5])
        v = np.array([2.0, 0.0, 5.0])
        val = relative_entropy(euler, u, v)

        mpmath.mp.dps = 50
        g = mpmath.mpf(euler.gamma)

        def eta(rho, q, en):
            e = en / rho - q * q / (2 * rho * rho)
            return (g - 1) * rho * mpmath.log(rho) - rho * mpmath.log(e)

        def grad(rho, q, en):
            e = en / rho - q * q / (2 * rho * rho)
            vel = q / rho
            return (g * (mpmath.log(rho) + 1) - mpmath.log(rho * e)
                    - vel * vel / (2 * e), vel / e, -1 / e)

        gu = grad(*[mpmath.mpf(x) for x in v])
        expected = (eta(*[mpmath.mpf(x) for x in u]) - eta(*[mpmath.mpf(x) for x in v])
                    - sum(gi * (ui - vi) for gi, ui, vi in zip(gu, u, v)))
        assert val == pytest.approx(float(expected), rel=1e-13)

    def test_rejects_boundary_reference(self, euler):
        u = euler_primitive_to_conservative(1.0, 0.0, 1.0)
        with pytest.raises(DomainError):
            relative_entropy(euler, u, np.array([-1.0, 0.0, 1.0]))

    def test_nonnegative_on_random_pairs(self, all_models):
        for model in all_models:
            rng = np.random.default_rng(7)
            pairs = model.sample_states(rng, 2 * 10_000).reshape(10_000, 2, model.n)
            worst = min(relative_entropy(model, u, v) for u, v in pairs)
            assert worst >= -1e-14, model.name

    def test_quadratic_comparability_on_box(self, all_models):
        for model in all_models:
            rng = np.random.default_rng(11)
            pairs = model.sample_states(rng, 2 * 2000).reshape(2000, 2, model.n)
            ratios = [relative_entropy(model, u, v) / float((u - v) @ (u - v))
                      for u, v in pairs if float((u - v) @ (u - v)) > 1e-18]
            c1, c2 = min(ratios), max(ratios)
            assert 0.0 < c1 <= c2 < np.inf, model.name


class TestRelativeEntropyFlux:
    def test_coincident_states_vanish(self, all_models):
        rng = np.random.default_rng(3)
        for model in all_models:
            u = model.sample_states(rng, 1)[0]
            assert relative_entropy_flux(model, u, u) == pytest.approx(0.0, abs=1e-14)

    def test_burgers_zero_reference(self, burgers):
        val = relative_entropy_flux(burgers, np.array([0.5]), np.array([0.0]))
        assert val == pytest.approx(1.0 / 24.0, abs=1e-15)

    def test_burgers_symbolic(self, burgers):
        val = relative_entropy_flux(burgers, np.array([0.5]), np.array([1.0]))
        assert val == pytest.approx(burgers_q_rel(0.5, 1.0), abs=1e-15)
        assert val == pytest.approx(1.0 / 12.0, abs=1e-14)

    def test_relative_pair_bundles_both(self, burgers):
        pair = relative_pair(burgers, np.array([2.0]), np.array([1.0]))
        assert pair.value == pytest.approx(0.5)
        assert pair.flux_value == pytest.approx(burgers_q_rel(2.0, 1.0))


class TestTriangleIdentities:
    def test_all_zero_at_coincidence(self, burgers):
        one = np.array([1.0])
        t = triangle_identities(burgers, one, one, one, sigma=0.3)
        assert all(abs(x) < 1e-15 for x in t)

    def test_burgers_exact(self, burgers):
        t = triangle_identities(burgers, np.array([2.0]), np.array([1.0]),
                                np.array([0.5]), sigma=0.3)
        assert rel_close(t.lhs_eta, t.rhs_eta, 1e-12)
        assert rel_close(t.lhs_q, t.rhs_q, 1e-12)
        assert rel_close(t.lhs_metric, t.rhs_metric, 1e-12)

    def test_random_triples_all_models(self, all_models):
        for model in all_models:
            rng = np.random.default_rng(19)
            triples = model.sample_states(rng, 3 * 1000).reshape(1000, 3, model.n)
            sigmas = rng.uniform(-1.0, 1.0, size=1000)
            for (u, v, w), sigma in zip(triples, sigmas):
                t = triangle_identities(model, u, v, w, sigma=float(sigma))
                assert rel_close(t.lhs_eta, t.rhs_eta, 1e-10), model.name
                assert rel_close(t.lhs_q, t.rhs_q, 1e-10), model.name
                assert rel_close(t.lhs_metric, t.rhs_metric, 1e-10), model.name


class TestCompatibilityAndConvexity:
    def test_identity_report_all_models(self, all_models):
        for model in all_models:
            rep = identity_report(model, n_triples=50, n_compatibility=100,
                                  n_nonnegativity=200, seed=23)
            assert rep["max_rel_compatibility_defect"] <= 1e-6, model.name
            assert rep["min_hessian_eigenvalue"] > 0.0, model.name


class TestPseudoDistance:
    def setup_method(self):
        self.u_l = np.array([1.0])
        self.u_r = np.array([0.0])

    def test_reference_step_is_zero(self, burgers):
        def profile(x):
            return self.u_l if x < 0.0 else self.u_r
        grid = np.linspace(-5.0, 5.0, 101)
        val = pseudo_distance(burgers, 1.0, self.u_l, self.u_r, profile, 0.0, grid)
        assert val == 0.0

    def test_shifted_step_closed_form(self, burgers):
        # Step shifted right by 1: mismatch with u_r on (0, 1) only.
        def profile(x):
            return self.u_l if x < 1.0 else self.u_r
        grid = np.linspace(-5.0, 5.0, 101)  # includes the kink at x = 1
        val = pseudo_distance(burgers, 1.0, self.u_l, self.u_r, profile, 0.0, grid)
        assert val == pytest.approx(0.5, abs=1e-12)

    def test_matching_split_point_gives_zero(self, burgers):
        def profile(x):
            return self.u_l if x < 1.0 else self.u_r
        grid = np.linspace(-5.0, 5.0, 101)
        val = pseudo_distance(burgers, 1.0, self.u_l, self.u_r, profile, 1.0, grid)
        assert val == pytest.approx(0.0, abs=1e-15)

    def test_weight_scales_right_side(self, burgers):
        def profile(x):
            return self.u_l if x < 1.0 else self.u_r
        grid = np.linspace(-5.0, 5.0, 101)
        val = pseudo_distance(burgers, 2.5, self.u_l, self.u_r, profile, 0.0, grid)
        assert val == pytest.approx(2.5 * 0.5, abs=1e-12)

    def test_uncovered_support_raises(self, burgers):
        def profile(x):
            return np.array([2.0])  # never matches the references
        grid = np.linspace(-5.0, 5.0, 11)
        with pytest.raises(GridError):
            pseudo_distance(burgers, 1.0, self.u_l, self.u_r, profile, 0.0, grid)

    def test_split_outside_grid_raises(self, burgers):
        def profile(x):
            return self.u_l if x < 0.0 else self.u_r
        grid = np.linspace(-5.0, 5.0, 11)
        with pytest.raises(GridError):
            pseudo_distance(burgers, 1.0, self.u_l, self.u_r, profile, 7.0, grid)

    def test_smooth_profile_against_quadrature_oracle(self, burgers):
        # Compactly supported smooth bump; oracle = dense trapezoid refinement.
        def profile(x):
            bump = np.exp(-1.0 / (1.0 - x * x)) if abs(x) < 1.0 else 0.0
            return np.array([(1.0 if x < 0.0 else 0.0) + 0.5 * bump])
        grid = np.linspace(-3.0, 3.0, 241)
        val = pseudo_distance(burgers, 1.3, self.u_l, self.u_r, profile, 0.0, grid)

        xs = np.linspace(-3.0, 3.0, 120_001)
        ys = np.empty_like(xs)
        for i, x in enumerate(xs):
            u = profile(x)[0]
            ys[i] = (0.5 * (u - 1.0) ** 2 if x < 0.0 else 1.3 * 0.5 * u * u)
        oracle = np.trapezoid(ys, xs)
        assert val == pytest.approx(oracle, rel=1e-6)
