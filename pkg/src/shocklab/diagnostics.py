"""Randomized identity and invariant suites shared by tests and the service.

Everything here is sampled from the model's default box with a seeded
generator, so reports are deterministic for a given (model, seed, sizes).
"""

from __future__ import annotations

import numpy as np

from .core import SystemModel, fd_step, relative_entropy, triangle_identities


def rel_gap(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / (1.0 + abs(lhs) + abs(rhs))


def identity_report(model: SystemModel, n_triples: int = 1000,
                    n_compatibility: int = 100, n_nonnegativity: int = 10000,
                    seed: int = 0) -> dict:
    """Max relative defects of the splitting identities, the flux/entropy
    compatibility relation, entropy-Hessian definiteness, nonnegativity of the
    relative entropy, and its quadratic comparability on the sampling box."""
    rng = np.random.default_rng(seed)

    triples = model.sample_states(rng, 3 * n_triples).reshape(n_triples, 3, model.n)
    sigmas = rng.uniform(-1.0, 1.0, size=n_triples)
    max_eta = max_q = max_metric = 0.0
    for (u, v, w), sigma in zip(triples, sigmas):
        t = triangle_identities(model, u, v, w, sigma=float(sigma))
        max_eta = max(max_eta, rel_gap(t.lhs_eta, t.rhs_eta))
        max_q = max(max_q, rel_gap(t.lhs_q, t.rhs_q))
        max_metric = max(max_metric, rel_gap(t.lhs_metric, t.rhs_metric))

    max_compat = 0.0
    min_hess_eig = np.inf
    for u in model.sample_states(rng, n_compatibility):
        h = fd_step(u)
        grad_q = np.empty(model.n)
        for j in range(model.n):
            dp, dm = u.copy(), u.copy()
            dp[j] += h
            dm[j] -= h
            grad_q[j] = (model.entropy_flux(dp) - model.entropy_flux(dm)) / (2.0 * h)
        rhs = model.entropy_gradient(u) @ model.flux_jacobian(u)
        max_compat = max(max_compat, float(np.max(np.abs(grad_q - rhs))
                                           / (1.0 + np.max(np.abs(rhs)))))
        min_hess_eig = min(min_hess_eig,
                           float(np.linalg.eigvalsh(model.entropy_hessian(u))[0]))

    pairs = model.sample_states(rng, 2 * n_nonnegativity).reshape(n_nonnegativity, 2,
                                                                  model.n)
    min_value = np.inf
    c1, c2 = np.inf, 0.0
    for u, v in pairs:
        val = relative_entropy(model, u, v)
        min_value = min(min_value, val)
        d2 = float((u - v) @ (u - v))
        if d2 > 1e-20:
            ratio = val / d2
            c1 = min(c1, ratio)
            c2 = max(c2, ratio)

    return {
        "model": model.name,
        "n_triples": n_triples,
        "n_compatibility": n_compatibility,
        "n_nonnegativity": n_nonnegativity,
        "seed": seed,
        "max_rel_gap_eta_identity": float(max_eta),
        "max_rel_gap_q_identity": float(max_q),
        "max_rel_gap_metric_identity": float(max_metric),
        "max_rel_compatibility_defect": float(max_compat),
        "min_hessian_eigenvalue": float(min_hess_eig),
        "min_relative_entropy": float(min_value),
        "comparability_c1": float(c1),
        "comparability_c2": float(c2),
    }


def identity_report_passes(report: dict, identity_tol: float = 1e-10,
                           compatibility_tol: float = 1e-6) -> bool:
    return bool(report["max_rel_gap_eta_identity"] <= identity_tol
            and report["max_rel_gap_q_identity"] <= identity_tol
            and report["max_rel_gap_metric_identity"] <= identity_tol
            and report["max_rel_compatibility_defect"] <= compatibility_tol
            and report["min_hessian_eigenvalue"] > 0.0
            and report["min_relative_entropy"] >= -1e-14
            and report["comparability_c1"] > 0.0
            and bool(np.isfinite(report["comparability_c2"])))
