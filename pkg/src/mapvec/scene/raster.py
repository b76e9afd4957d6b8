"""Rasterization: binary BEV ground truth, ground paint, camera renders.

Foreground convention: a point is foreground when it lies within the
configured half-width of any open polyline, or inside any closed polygon.
The same test produces the BEV mask (on cell centers) and the per-camera UV
masks (on each pixel's ground intersection), so the two stay geometrically
consistent by construction.
"""

from __future__ import annotations

import numpy as np

from ..errors import ConfigError
from ..geometry import grid_near_polyline, points_in_polygon, points_to_polyline_distance
from .camera import Camera, CameraRig
from .world import MapElement, check_in_range

SKY_COLOR = np.array([0.55, 0.66, 0.82])
OFFRANGE_COLOR = np.array([0.42, 0.42, 0.44])
BOUNDARY_COLOR = np.array([0.82, 0.45, 0.25])
DIVIDER_COLOR = np.array([0.95, 0.92, 0.70])
STRIPE_COLOR = np.array([0.92, 0.92, 0.95])
BOUNDARY_PAINT_HALFWIDTH = 0.30
DIVIDER_PAINT_HALFWIDTH = 0.15
STRIPE_PERIOD = 1.0  # meters along x
STRIPE_DUTY = 0.5


def foreground_mask(points: np.ndarray, elements: list[MapElement], half_width: float) -> np.ndarray:
    """Boolean foreground test for query points [m, 2]."""
    pts = np.asarray(points, dtype=np.float64)
    mask = np.zeros(len(pts), dtype=bool)
    for el in elements:
        if el.closed:
            mask |= points_in_polygon(pts, el.points)
        else:
            mask |= points_to_polyline_distance(pts, el.points) <= half_width
    return mask


def rasterize_bev(elements: list[MapElement], bev_range, grid_size, half_width: float) -> np.ndarray:
    """Binary [H_bev, W_bev] mask of the elements on the BEV grid."""
    h, w = int(grid_size[0]), int(grid_size[1])
    if h <= 0 or w <= 0:
        raise ConfigError("grid size must be positive")
    check_in_range(elements, bev_range)
    x_min, x_max, y_min, y_max = bev_range
    xs = x_min + (np.arange(h) + 0.5) * (x_max - x_min) / h
    ys = y_min + (np.arange(w) + 0.5) * (y_max - y_min) / w
    mask = np.zeros((h, w), dtype=bool)
    for el in elements:
        if el.closed:
            gx, gy = np.meshgrid(xs, ys, indexing="ij")
            pts = np.stack([gx.ravel(), gy.ravel()], axis=-1)
            mask |= points_in_polygon(pts, el.points).reshape(h, w)
        else:
            mask |= grid_near_polyline(xs, ys, el.points, half_width)
    return mask.astype(np.uint8)


def _value_noise(rng: np.random.Generator, shape: tuple[int, int], coarse: int = 12) -> np.ndarray:
    """Smooth value noise in [0, 1]: a coarse random lattice, bilinearly upsampled."""
    h, w = shape
    lattice = rng.uniform(0.0, 1.0, size=(coarse + 1, coarse + 1))
    yi = np.linspace(0.0, coarse, h)
    xi = np.linspace(0.0, coarse, w)
    y0 = np.clip(yi.astype(int), 0, coarse - 1)
    x0 = np.clip(xi.astype(int), 0, coarse - 1)
    fy = (yi - y0)[:, None]
    fx = (xi - x0)[None, :]
    a = lattice[y0][:, x0]
    b = lattice[y0][:, x0 + 1]
    c = lattice[y0 + 1][:, x0]
    d = lattice[y0 + 1][:, x0 + 1]
    return (1 - fy) * ((1 - fx) * a + fx * b) + fy * ((1 - fx) * c + fx * d)


def paint_ground_texture(elements: list[MapElement], bev_range, texture_mpp: float, rng: np.random.Generator) -> np.ndarray:
    """Color paint of the world on the ground plane, [3, Ht, Wt] float in [0, 1].

    Rows span x, columns span y, like the BEV grid but at texture resolution.
    """
    x_min, x_max, y_min, y_max = bev_range
    ht = max(2, int(round((x_max - x_min) / texture_mpp)))
    wt = max(2, int(round((y_max - y_min) / texture_mpp)))
    xs = x_min + (np.arange(ht) + 0.5) * (x_max - x_min) / ht
    ys = y_min + (np.arange(wt) + 0.5) * (y_max - y_min) / wt

    base = 0.30 + 0.25 * _value_noise(rng, (ht, wt))
    grain = rng.uniform(-0.02, 0.02, size=(ht, wt))
    tex = np.repeat((base + grain)[None, :, :], 3, axis=0)
    tex[2] += 0.02  # cold asphalt tint

    for el in elements:
        if not el.closed:
            continue
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        pts = np.stack([gx.ravel(), gy.ravel()], axis=-1)
        inside = points_in_polygon(pts, el.points).reshape(ht, wt)
        stripe = np.mod(gx, STRIPE_PERIOD) < STRIPE_PERIOD * STRIPE_DUTY
        paint = inside & stripe
        tex[:, paint] = STRIPE_COLOR[:, None]
    for el in elements:
        if el.closed:
            continue
        width = BOUNDARY_PAINT_HALFWIDTH if el.cls == "boundary" else DIVIDER_PAINT_HALFWIDTH
        color = BOUNDARY_COLOR if el.cls == "boundary" else DIVIDER_COLOR
        near = grid_near_polyline(xs, ys, el.points, width)
        tex[:, near] = color[:, None]

    return np.clip(tex, 0.0, 1.0)


def _ground_intersections(camera: Camera, depth_eps: float):
    """Per-pixel ground-plane hit points.

    Returns (points [H*W, 2], hit [H*W] bool): for each pixel center, the
    world (x, y) where its viewing ray meets z=0, when it does so in front of
    the camera.
    """
    h, w = camera.image_size
    k = camera.intrinsics
    us, vs = np.meshgrid(np.arange(w, dtype=np.float64), np.arange(h, dtype=np.float64))
    dirs_cam = np.stack(
        [(us - k[0, 2]) / k[0, 0], (vs - k[1, 2]) / k[1, 1], np.ones_like(us)], axis=-1
    ).reshape(-1, 3)
    dirs_world = dirs_cam @ camera.rotation  # R^T applied to each row
    center = camera.center
    dz = dirs_world[:, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        s = -center[2] / dz
    # Camera-frame depth of the hit equals s (the cam-frame ray has z == 1).
    hit = (dz < -1e-9) & (s > depth_eps)
    pts = center[None, :2] + s[:, None] * dirs_world[:, :2]
    pts[~hit] = 0.0
    return pts, hit


def _sample_texture(tex: np.ndarray, pts: np.ndarray, bev_range) -> tuple[np.ndarray, np.ndarray]:
    """Bilinear sample of the paint texture at world points; returns (colors, in_range)."""
    x_min, x_max, y_min, y_max = bev_range
    _, ht, wt = tex.shape
    in_range = (
        (pts[:, 0] >= x_min) & (pts[:, 0] <= x_max) & (pts[:, 1] >= y_min) & (pts[:, 1] <= y_max)
    )
    fi = (pts[:, 0] - x_min) / (x_max - x_min) * ht - 0.5
    fj = (pts[:, 1] - y_min) / (y_max - y_min) * wt - 0.5
    fi = np.clip(fi, 0.0, ht - 1.0)
    fj = np.clip(fj, 0.0, wt - 1.0)
    i0 = np.clip(fi.astype(int), 0, ht - 2)
    j0 = np.clip(fj.astype(int), 0, wt - 2)
    di = fi - i0
    dj = fj - j0
    c00 = tex[:, i0, j0]
    c01 = tex[:, i0, j0 + 1]
    c10 = tex[:, i0 + 1, j0]
    c11 = tex[:, i0 + 1, j0 + 1]
    colors = (
        c00 * (1 - di) * (1 - dj) + c01 * (1 - di) * dj + c10 * di * (1 - dj) + c11 * di * dj
    )
    return colors.T, in_range


def render_views(
    elements: list[MapElement],
    rig: CameraRig,
    bev_range,
    half_width: float,
    texture: np.ndarray,
    depth_eps: float,
) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Flat-shaded surround views plus their binary UV masks.

    Returns (images, uv_masks): images are [3, H, W] uint8, masks [H, W] uint8.
    """
    images, uv_masks = [], []
    for cam in rig:
        h, w = cam.image_size
        pts, hit = _ground_intersections(cam, depth_eps)
        colors = np.tile(SKY_COLOR[None, :], (h * w, 1))
        # Sky fades toward the horizon line.
        vs = np.repeat(np.arange(h, dtype=np.float64), w) / max(h - 1, 1)
        colors *= (0.85 + 0.3 * vs)[:, None]
        tex_colors, in_range = _sample_texture(texture, pts, bev_range)
        ground = hit & in_range
        colors[ground] = tex_colors[ground]
        far = hit & ~in_range
        colors[far] = OFFRANGE_COLOR[None, :]
        img = np.clip(colors, 0.0, 1.0).reshape(h, w, 3)
        images.append(np.round(img * 255.0).astype(np.uint8).transpose(2, 0, 1))

        fg = np.zeros(h * w, dtype=bool)
        if hit.any() and elements:
            fg[hit] = foreground_mask(pts[hit], elements, half_width)
        uv_masks.append(fg.reshape(h, w).astype(np.uint8))
    return images, uv_masks
