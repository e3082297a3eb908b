"""Uniform 1-D finite-volume grid of cell-averaged states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class Grid1D:
    x_min: float
    x_max: float
    n_cells: int
    states: np.ndarray  # (n_cells, n)

    def __post_init__(self):
        if self.n_cells < 2:
            raise ValueError("need at least two cells")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        if self.states.shape[0] != self.n_cells:
            raise ValueError("states row count must equal n_cells")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.n_cells

    @property
    def edges(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_cells + 1)

    @property
    def centers(self) -> np.ndarray:
        return self.x_min + (np.arange(self.n_cells) + 0.5) * self.dx

    def totals(self) -> np.ndarray:
        """Cell-sum of each conserved component times dx."""
        return self.states.sum(axis=0) * self.dx

    @staticmethod
    def from_profile(x_min: float, x_max: float, n_cells: int, profile) -> "Grid1D":
        dx = (x_max - x_min) / n_cells
        centers = x_min + (np.arange(n_cells) + 0.5) * dx
        states = np.array([np.asarray(profile(x), dtype=float) for x in centers])
        return Grid1D(x_min, x_max, n_cells, states)
