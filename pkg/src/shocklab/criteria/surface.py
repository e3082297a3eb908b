"""Sampling the weighted level surface Sigma_a by ray shooting.

Rays leave an interior seed of the enclosed side (u_l for a <= 1, u_r for
a > 1) along deterministic quasi-uniform directions; a sign change of the
level function phi brackets a crossing that bisection then refines to
|phi| <= 1e-10 * scale.  Rays that exit the search box or the state-space
domain without a sign change are counted as unbounded directions - for a >= 1
the enclosed-complement side may genuinely be unbounded, and at a = 1 the
surface is a hyperplane.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import SurfaceEmptyError
from .weighted import WeightedSetup

PHI_TOL = 1e-10
BISECTION_MAX = 200


@dataclass
class SigmaSurface:
    setup: WeightedSetup
    samples: np.ndarray          # (m, n) states with |phi| below tolerance
    phis: np.ndarray             # residual phi at each sample
    rays_total: int
    rays_unbounded: int
    box: tuple[np.ndarray, np.ndarray]
    seed: int

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def diameter(self) -> float:
        """Largest pairwise distance between surface samples."""
        if len(self.samples) < 2:
            return 0.0
        diff = self.samples[:, None, :] - self.samples[None, :, :]
        return float(np.max(np.linalg.norm(diff, axis=2)))

    def coverage(self) -> dict:
        return {
            "n_samples": int(len(self.samples)),
            "rays_total": int(self.rays_total),
            "rays_unbounded": int(self.rays_unbounded),
            "box_lo": [float(x) for x in self.box[0]],
            "box_hi": [float(x) for x in self.box[1]],
            "seed": int(self.seed),
            "diameter": self.diameter,
        }


def default_box(setup: WeightedSetup, margin: float = 3.0) -> tuple[np.ndarray, np.ndarray]:
    """Search box around the discontinuity, inflated by ``margin`` jump widths."""
    lo = np.minimum(setup.u_l, setup.u_r)
    hi = np.maximum(setup.u_l, setup.u_r)
    pad = margin * (np.linalg.norm(setup.u_r - setup.u_l) + 1.0)
    return lo - pad, hi + pad


def ray_directions(n: int, count: int, seed: int) -> np.ndarray:
    """Deterministic quasi-uniform unit directions: coordinate axes first,
    then seeded Gaussian directions."""
    dirs = []
    for j in range(n):
        e = np.zeros(n)
        e[j] = 1.0
        dirs.append(e.copy())
        dirs.append(-e)
    rng = np.random.default_rng(seed)
    while len(dirs) < count:
        g = rng.standard_normal(n)
        nrm = np.linalg.norm(g)
        if nrm > 1e-12:
            dirs.append(g / nrm)
    return np.asarray(dirs[:count])


def _march_and_bisect(setup: WeightedSetup, seed_state: np.ndarray, direction: np.ndarray,
                      box: tuple[np.ndarray, np.ndarray], phi_tol: float):
    """Walk outward until phi changes sign, then bisect; None if the ray leaves."""
    model = setup.model
    lo, hi = box
    base_sign = np.sign(setup.phi(seed_state))
    if base_sign == 0.0:
        base_sign = -1.0 if setup.a <= 1.0 else 1.0

    def inside(u):
        return bool(np.all(u >= lo) and np.all(u <= hi) and model.evaluable(u))

    scale = float(np.max(hi - lo))
    t_prev, t = 0.0, 1e-4 * scale
    while True:
        u = seed_state + t * direction
        if not inside(u):
            return None
        if np.sign(setup.phi(u)) not in (base_sign, 0.0):
            break
        t_prev, t = t, t * 1.3 + 1e-4 * scale
    # Bisection on [t_prev, t], then Newton polish along the ray.
    a_t, b_t = t_prev, t
    m_t = 0.5 * (a_t + b_t)
    for _ in range(BISECTION_MAX):
        m_t = 0.5 * (a_t + b_t)
        u = seed_state + m_t * direction
        val = setup.phi(u)
        if abs(val) <= phi_tol:
            break
        if np.sign(val) == base_sign:
            a_t = m_t
        else:
            b_t = m_t
    for _ in range(4):
        u = seed_state + m_t * direction
        val = setup.phi(u)
        slope = setup.phi_gradient(u) @ direction
        if abs(slope) < 1e-300 or abs(val) <= 1e-4 * phi_tol:
            break
        m_t -= val / slope
    u = seed_state + m_t * direction
    return u if abs(setup.phi(u)) <= phi_tol else None


def sample_sigma_surface(setup: WeightedSetup, n_samples: int = 64,
                         box: tuple[np.ndarray, np.ndarray] | None = None,
                         seed: int = 0) -> SigmaSurface:
    """Sample Sigma_a with ``n_samples`` rays from the enclosed-side seed.

    Raises SurfaceEmptyError when no ray crosses inside the box.
    """
    if box is None:
        box = default_box(setup)
    seed_state = setup.interior_seed()
    phi_tol = PHI_TOL * setup.phi_scale
    dirs = ray_directions(setup.model.n, max(n_samples, 2), seed)
    samples, phis = [], []
    unbounded = 0
    scale = 1.0 + float(np.linalg.norm(setup.u_r - setup.u_l))
    for d in dirs:
        hit = _march_and_bisect(setup, seed_state, d, box, phi_tol)
        if hit is None:
            unbounded += 1
        elif all(np.linalg.norm(hit - prev) > 1e-12 * scale for prev in samples):
            samples.append(hit)
            phis.append(setup.phi(hit))
    if not samples:
        raise SurfaceEmptyError(
            f"no sign change of phi along any of {len(dirs)} rays inside the box")
    return SigmaSurface(
        setup=setup,
        samples=np.asarray(samples),
        phis=np.asarray(phis),
        rays_total=len(dirs),
        rays_unbounded=unbounded,
        box=box,
        seed=seed,
    )
