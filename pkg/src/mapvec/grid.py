"""Metric BEV grid: the coordinate frame shared by masks, features, and maps.

Convention: grid rows (axis 0, H_bev) span the longitudinal x range and
columns (axis 1, W_bev) span the lateral y range, matching the [C, H, W]
layout used by every BEV-frame array in the package.  Cells are square.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError


@dataclass(frozen=True)
class BEVGrid:
    range: tuple[float, float, float, float]  # (x_min, x_max, y_min, y_max) meters
    size: tuple[int, int]  # (H_bev, W_bev) cells

    def __post_init__(self):
        x_min, x_max, y_min, y_max = self.range
        h, w = self.size
        if not (x_min < x_max and y_min < y_max):
            raise ConfigError("BEV range must satisfy x_min < x_max and y_min < y_max")
        if h <= 0 or w <= 0:
            raise ConfigError("BEV grid size must be positive")
        if abs((x_max - x_min) / h - (y_max - y_min) / w) > 1e-9:
            raise ConfigError("BEV grid cells must be square")

    @property
    def cell_size(self) -> float:
        x_min, x_max, _, _ = self.range
        return (x_max - x_min) / self.size[0]

    def cell_centers(self) -> np.ndarray:
        """World (x, y) of every cell center, shape [H_bev, W_bev, 2]."""
        x_min, _, y_min, _ = self.range
        h, w = self.size
        cs = self.cell_size
        xs = x_min + (np.arange(h, dtype=np.float64) + 0.5) * cs
        ys = y_min + (np.arange(w, dtype=np.float64) + 0.5) * cs
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        return np.stack([gx, gy], axis=-1)

    def contains(self, points: np.ndarray) -> np.ndarray:
        x_min, x_max, y_min, y_max = self.range
        p = np.asarray(points, dtype=np.float64)
        return (
            (p[..., 0] >= x_min)
            & (p[..., 0] <= x_max)
            & (p[..., 1] >= y_min)
            & (p[..., 1] <= y_max)
        )


def grid_from_config(scene_cfg) -> BEVGrid:
    return BEVGrid(range=tuple(scene_cfg.bev_range), size=tuple(scene_cfg.grid_size))
