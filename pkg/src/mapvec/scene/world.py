"""Map element types and the parametric synthetic road world."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError, GeometryError, OutOfRangeError

CLASSES = ("ped_crossing", "divider", "boundary")
CLASS_INDEX = {name: i for i, name in enumerate(CLASSES)}
N_CLASSES = len(CLASSES)

_EDGE_MARGIN = 0.3  # keep element points at least this far inside the BEV range


@dataclass
class MapElement:
    cls: str
    points: np.ndarray  # [n, 2] BEV meters
    closed: bool = False

    def __post_init__(self):
        if self.cls not in CLASSES:
            raise ConfigError(f"unknown element class {self.cls!r}")
        self.points = np.asarray(self.points, dtype=np.float64)
        if self.points.ndim != 2 or self.points.shape[1] != 2 or len(self.points) < 2:
            raise GeometryError("element needs >= 2 (x, y) points")
        if self.closed != (self.cls == "ped_crossing"):
            raise GeometryError("ped_crossing elements are closed polygons; divider/boundary are open polylines")

    @property
    def class_index(self) -> int:
        return CLASS_INDEX[self.cls]

    def mirrored(self) -> "MapElement":
        """The element reflected across the x axis (y -> -y)."""
        pts = self.points.copy()
        pts[:, 1] = -pts[:, 1]
        return MapElement(cls=self.cls, points=pts, closed=self.closed)


def check_in_range(elements: list[MapElement], bev_range) -> None:
    x_min, x_max, y_min, y_max = bev_range
    for i, el in enumerate(elements):
        p = el.points
        if (
            p[:, 0].min() < x_min
            or p[:, 0].max() > x_max
            or p[:, 1].min() < y_min
            or p[:, 1].max() > y_max
        ):
            raise OutOfRangeError(f"element {i} ({el.cls}) has points outside the BEV range")


def _lane_offset_curve(xs: np.ndarray, amp: float, wavelength: float, phase: float, offset: float) -> np.ndarray:
    ys = amp * np.sin(2.0 * np.pi * xs / wavelength + phase) + offset
    return np.stack([xs, ys], axis=1)


def generate_elements(rng: np.random.Generator, scene_cfg) -> list[MapElement]:
    """One road scene: curved boundaries, lane dividers, striped crossings.

    All randomness comes from `rng`; the draw order is fixed so a given
    generator state always produces the same world.
    """
    x_min, x_max, y_min, y_max = scene_cfg.bev_range
    n_div = int(rng.integers(scene_cfg.n_dividers[0], scene_cfg.n_dividers[1] + 1))
    n_cross = int(rng.integers(scene_cfg.n_crossings[0], scene_cfg.n_crossings[1] + 1))
    n_bound = int(rng.integers(scene_cfg.n_boundaries[0], scene_cfg.n_boundaries[1] + 1))

    amp = float(rng.uniform(0.0, 1.2))
    wavelength = float(rng.uniform(35.0, 90.0))
    phase = float(rng.uniform(0.0, 2.0 * np.pi))

    # Extra boundary rings beyond the first pair sit 0.8 m further out.
    n_extra_rings = max(0, (n_bound - 1) // 2)
    half_span = (y_max - y_min) / 2.0
    road_cap = half_span - _EDGE_MARGIN - amp - 0.8 * n_extra_rings
    road_cap = max(road_cap, 1.5)
    half_road = float(rng.uniform(min(4.5, road_cap - 0.1), road_cap))

    xs = np.linspace(x_min + _EDGE_MARGIN, x_max - _EDGE_MARGIN, 24)
    elements: list[MapElement] = []

    offsets = []
    for i in range(n_bound):
        ring = (i // 2) * 0.8
        sign = 1.0 if i % 2 == 0 else -1.0
        offsets.append(sign * (half_road + ring))
    for off in offsets:
        elements.append(MapElement("boundary", _lane_offset_curve(xs, amp, wavelength, phase, off)))

    if n_div > 0:
        lane_w = 2.0 * half_road / (n_div + 1)
        for k in range(1, n_div + 1):
            off = -half_road + k * lane_w
            elements.append(MapElement("divider", _lane_offset_curve(xs, amp, wavelength, phase, off)))

    span = x_max - x_min - 2.0 * _EDGE_MARGIN - 4.0
    for k in range(n_cross):
        # Stratified x positions keep crossings from overlapping.
        lo = x_min + _EDGE_MARGIN + 2.0 + span * k / max(n_cross, 1)
        hi = x_min + _EDGE_MARGIN + 2.0 + span * (k + 1) / max(n_cross, 1) - 2.0
        xc = float(rng.uniform(lo, max(lo + 1e-6, hi)))
        w = float(rng.uniform(2.0, 3.5))
        yc = amp * np.sin(2.0 * np.pi * xc / wavelength + phase)
        y_lo, y_hi = yc - (half_road - 0.4), yc + (half_road - 0.4)
        quad = np.array(
            [
                [xc - w / 2.0, y_lo],
                [xc + w / 2.0, y_lo],
                [xc + w / 2.0, y_hi],
                [xc - w / 2.0, y_hi],
            ]
        )
        quad[:, 0] = np.clip(quad[:, 0], x_min + _EDGE_MARGIN, x_max - _EDGE_MARGIN)
        elements.append(MapElement("ped_crossing", quad, closed=True))

    check_in_range(elements, scene_cfg.bev_range)
    return elements
