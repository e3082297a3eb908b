"""Abstract system interface and the relative-entropy algebra built on it.

A system is the quadruple (flux f, entropy eta, entropy flux q, eigenstructure)
on an open convex state space, with the compatibility relation
grad q = grad eta * grad f.  Everything downstream (wave curves, stability
functionals, simulations) talks to systems only through :class:`SystemModel`.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, GridError

GENUINELY_NONLINEAR = "genuinely-nonlinear"
LINEARLY_DEGENERATE = "linearly-degenerate"


def fd_step(u: np.ndarray) -> float:
    """Central-difference step scaled to the state magnitude."""
    return 1e-6 * (1.0 + float(np.linalg.norm(u)))


class SystemModel(ABC):
    """One concrete 1-D system of conservation laws with a strictly convex entropy.

    Instances are immutable after construction and safe to share between
    threads; every method is a pure function of its arguments.

    Subclasses must set ``name``, ``n``, ``component_names`` and
    ``field_kinds`` and implement the abstract methods.  Derivatives they do
    not supply analytically fall back to central finite differences with step
    ``1e-6 * (1 + |u|)``.

    Eigenvalues are returned sorted ascending.  Eigenvectors are unit length
    with a deterministic sign: genuinely nonlinear fields are oriented so that
    ``grad(lambda_i) . r_i > 0``; linearly degenerate fields keep the
    model-documented component positive (first component unless stated
    otherwise).  This keeps the tangent fields continuous for curve tracing.
    """

    name: str = "abstract"
    n: int = 0
    component_names: tuple[str, ...] = ()
    field_kinds: tuple[str, ...] = ()

    # -- required surface -------------------------------------------------

    @abstractmethod
    def flux(self, u: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def entropy(self, u: np.ndarray) -> float:
        ...

    @abstractmethod
    def entropy_flux(self, u: np.ndarray) -> float:
        ...

    @abstractmethod
    def entropy_gradient(self, u: np.ndarray) -> np.ndarray:
        ...

    @abstractmethod
    def eigen(self, u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Return (eigenvalues ascending, eigenvector matrix with columns r_i)."""

    @abstractmethod
    def in_domain(self, u: np.ndarray) -> bool:
        """Membership in the strict interior of the state space (above floors)."""

    @abstractmethod
    def evaluable(self, u: np.ndarray) -> bool:
        """Membership in the extended domain on which eta, f, q stay finite."""

    @abstractmethod
    def domain_margin(self, u: np.ndarray) -> float:
        """Signed distance-like margin to the strict domain boundary (>0 inside)."""

    @abstractmethod
    def default_box(self) -> tuple[np.ndarray, np.ndarray]:
        """A compact in-domain box used for sampling when the caller gives none."""

    # -- derived quantities with finite-difference fallbacks ---------------

    def flux_jacobian(self, u: np.ndarray) -> np.ndarray:
        h = fd_step(u)
        jac = np.empty((self.n, self.n))
        for j in range(self.n):
            dp = u.copy()
            dm = u.copy()
            dp[j] += h
            dm[j] -= h
            jac[:, j] = (self.flux(dp) - self.flux(dm)) / (2.0 * h)
        return jac

    def entropy_hessian(self, u: np.ndarray) -> np.ndarray:
        h = fd_step(u)
        hess = np.empty((self.n, self.n))
        for j in range(self.n):
            dp = u.copy()
            dm = u.copy()
            dp[j] += h
            dm[j] -= h
            hess[:, j] = (self.entropy_gradient(dp) - self.entropy_gradient(dm)) / (2.0 * h)
        return 0.5 * (hess + hess.T)

    # -- helpers -----------------------------------------------------------

    def field_kind(self, family: int) -> str:
        """Kind of the 1-based characteristic family."""
        return self.field_kinds[family - 1]

    def eigenvalue(self, u: np.ndarray, family: int) -> float:
        return float(self.eigen(u)[0][family - 1])

    def eigenvector(self, u: np.ndarray, family: int) -> np.ndarray:
        return self.eigen(u)[1][:, family - 1]

    def max_wave_speed(self, u: np.ndarray) -> float:
        lams = self.eigen(u)[0]
        return float(np.max(np.abs(lams)))

    def lambda_directional_derivative(self, u: np.ndarray, family: int,
                                      direction: np.ndarray) -> float:
        """grad(lambda_family) . direction by central differences."""
        h = fd_step(u)
        lp = self.eigenvalue(u + h * direction, family)
        lm = self.eigenvalue(u - h * direction, family)
        return (lp - lm) / (2.0 * h)

    def require_strict(self, u: np.ndarray) -> None:
        if not self.in_domain(u):
            raise DomainError(f"state {u!r} is not strictly inside the {self.name} domain")

    def require_evaluable(self, u: np.ndarray) -> None:
        if not self.evaluable(u):
            raise DomainError(f"state {u!r} is outside the extended {self.name} domain")

    def sample_states(self, rng: np.random.Generator, size: int,
                      box: tuple[np.ndarray, np.ndarray] | None = None) -> np.ndarray:
        """Uniform in-domain samples from ``box`` (default: the model box)."""
        lo, hi = box if box is not None else self.default_box()
        out = np.empty((size, self.n))
        k = 0
        while k < size:
            u = lo + (hi - lo) * rng.random(self.n)
            if self.in_domain(u):
                out[k] = u
                k += 1
        return out


# -- relative-entropy algebra ----------------------------------------------


def relative_entropy(model: SystemModel, u: np.ndarray, v: np.ndarray) -> float:
    """eta(u|v) = eta(u) - eta(v) - grad eta(v) . (u - v).

    ``v`` must be strictly in-domain; ``u`` may sit in the extended domain.
    Nonnegative, zero exactly at u = v.
    """
    model.require_strict(v)
    model.require_evaluable(u)
    return float(model.entropy(u) - model.entropy(v)
                 - model.entropy_gradient(v) @ (u - v))


def relative_entropy_flux(model: SystemModel, u: np.ndarray, v: np.ndarray) -> float:
    """q(u,v) = q(u) - q(v) - grad eta(v) . (f(u) - f(v))."""
    model.require_strict(v)
    model.require_evaluable(u)
    return float(model.entropy_flux(u) - model.entropy_flux(v)
                 - model.entropy_gradient(v) @ (model.flux(u) - model.flux(v)))


@dataclass(frozen=True)
class RelativePair:
    """eta(u|v) together with its companion flux q(u,v)."""

    value: float
    flux_value: float


def relative_pair(model: SystemModel, u: np.ndarray, v: np.ndarray) -> RelativePair:
    return RelativePair(relative_entropy(model, u, v), relative_entropy_flux(model, u, v))


class TriangleIdentities(NamedTuple):
    lhs_eta: float
    rhs_eta: float
    lhs_q: float
    rhs_q: float
    lhs_metric: float
    rhs_metric: float


def triangle_identities(model: SystemModel, u: np.ndarray, v: np.ndarray,
                        w: np.ndarray, sigma: float = 0.0) -> TriangleIdentities:
    """Both sides of the three splitting identities through a waypoint ``w``.

    Each side is evaluated independently so that agreement is a genuine check
    rather than an algebraic tautology:

    * eta(u|w) + eta(w|v)  vs  eta(u|v) + (grad eta(w) - grad eta(v)).(w - u)
    * q(u,w) + q(w,v)      vs  q(u,v) + (grad eta(w) - grad eta(v)).(f(w) - f(u))
    * q(u,v) - sigma eta(u|v)  vs  the same split through w with the
      Rankine-Hugoniot defect correction term.
    """
    model.require_strict(v)
    model.require_strict(w)
    model.require_evaluable(u)
    dgrad = model.entropy_gradient(w) - model.entropy_gradient(v)

    lhs_eta = relative_entropy(model, u, w) + relative_entropy(model, w, v)
    rhs_eta = relative_entropy(model, u, v) + float(dgrad @ (w - u))

    lhs_q = relative_entropy_flux(model, u, w) + relative_entropy_flux(model, w, v)
    rhs_q = relative_entropy_flux(model, u, v) + float(dgrad @ (model.flux(w) - model.flux(u)))

    lhs_metric = relative_entropy_flux(model, u, v) - sigma * relative_entropy(model, u, v)
    rhs_metric = (relative_entropy_flux(model, u, w) - sigma * relative_entropy(model, u, w)
                  + relative_entropy_flux(model, w, v) - sigma * relative_entropy(model, w, v)
                  - float(dgrad @ (model.flux(w) - model.flux(u) - sigma * (w - u))))
    return TriangleIdentities(lhs_eta, rhs_eta, lhs_q, rhs_q, lhs_metric, rhs_metric)


def pseudo_distance(model: SystemModel, a: float, u_l: np.ndarray, u_r: np.ndarray,
                    profile: Callable[[float], np.ndarray], h: float,
                    grid: np.ndarray) -> float:
    """Weighted relative-entropy distance of ``profile`` to the step (u_l, u_r).

    Integrates eta(profile(x)|u_l) over (-inf, h] and a * eta(profile(x)|u_r)
    over [h, inf) by composite Simpson quadrature on ``grid``, splitting the
    cell that contains ``h`` exactly at ``h``.  The profile must agree with
    the step references at the grid ends (the perturbation is compact); the
    grid should resolve any kink of the profile with a node.
    """
    if a <= 0.0:
        raise ValueError("weight a must be positive")
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 1 or grid.size < 2 or np.any(np.diff(grid) <= 0.0):
        raise GridError("quadrature grid must be strictly increasing with >= 2 nodes")
    if not (grid[0] <= h <= grid[-1]):
        raise GridError(f"split point h={h} lies outside the grid [{grid[0]}, {grid[-1]}]")

    cover_tol = 1e-8 * (1.0 + abs(model.entropy(u_l)) + abs(model.entropy(u_r)))
    if abs(relative_entropy(model, profile(grid[0]), u_l)) > cover_tol:
        raise GridError("grid does not cover the perturbation support on the left")
    if abs(relative_entropy(model, profile(grid[-1]), u_r)) > cover_tol:
        raise GridError("grid does not cover the perturbation support on the right")

    def eta_left(x: float) -> float:
        return relative_entropy(model, profile(x), u_l)

    def eta_right(x: float) -> float:
        return relative_entropy(model, profile(x), u_r)

    def simpson(fun: Callable[[float], float], x0: float, x1: float) -> float:
        if x1 <= x0:
            return 0.0
        # One-sided nudge at the split point keeps step profiles exact.
        eps = 1e-12 * (x1 - x0)
        return (x1 - x0) / 6.0 * (fun(x0 + eps) + 4.0 * fun(0.5 * (x0 + x1)) + fun(x1 - eps))

    total = 0.0
    for x0, x1 in zip(grid[:-1], grid[1:]):
        if x1 <= h:
            total += simpson(eta_left, x0, x1)
        elif x0 >= h:
            total += a * simpson(eta_right, x0, x1)
        else:
            total += simpson(eta_left, x0, h)
            total += a * simpson(eta_right, h, x1)
    return total
