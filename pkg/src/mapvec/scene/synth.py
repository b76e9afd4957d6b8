"""Scene assembly: one seed + one config -> one fully labeled surround frame."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from .camera import CameraRig, make_rig
from .raster import paint_ground_texture, rasterize_bev, render_views
from .world import MapElement, generate_elements


@dataclass
class SurroundFrame:
    images: list[np.ndarray]  # per camera, [3, H, W] float32 in [0, 1]
    uv_masks: list[np.ndarray]  # per camera, [H, W] uint8 in {0, 1}
    bev_mask: np.ndarray  # [H_bev, W_bev] uint8 in {0, 1}
    elements: list[MapElement]
    rig: CameraRig
    bev_range: tuple[float, float, float, float]
    seed: int

    def __post_init__(self):
        if len(self.images) != len(self.rig) or len(self.uv_masks) != len(self.rig):
            raise ConfigError("images/uv_masks must have one entry per rig camera")
        for img, mask in zip(self.images, self.uv_masks):
            if img.shape[1:] != mask.shape:
                raise ConfigError("uv mask spatial size must match its image")


def frame_seed(base_seed: int, frame_index: int) -> int:
    """Deterministic per-frame seed derived only from (base_seed, frame_index)."""
    ss = np.random.SeedSequence(entropy=int(base_seed) & ((1 << 63) - 1), spawn_key=(int(frame_index),))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def generate_scene(seed: int, scene_cfg, rig: CameraRig | None = None) -> SurroundFrame:
    """Render one synthetic surround frame; bit-deterministic in (seed, config)."""
    h_bev, w_bev = scene_cfg.grid_size
    if h_bev <= 0 or w_bev <= 0:
        raise ConfigError("scene.grid_size must be positive")
    if scene_cfg.n_cameras < 1:
        raise ConfigError("scene.n_cameras must be >= 1")
    rng = np.random.default_rng(np.random.SeedSequence(int(seed) & ((1 << 63) - 1)))
    if rig is None:
        rig = make_rig(scene_cfg)
    elements = generate_elements(rng, scene_cfg)
    bev_mask = rasterize_bev(elements, scene_cfg.bev_range, scene_cfg.grid_size, scene_cfg.half_width)
    texture = paint_ground_texture(elements, scene_cfg.bev_range, scene_cfg.texture_mpp, rng)
    images_u8, uv_masks = render_views(
        elements, rig, scene_cfg.bev_range, scene_cfg.half_width, texture, scene_cfg.depth_eps
    )
    images = [(img.astype(np.float32) / 255.0) for img in images_u8]
    return SurroundFrame(
        images=images,
        uv_masks=uv_masks,
        bev_mask=bev_mask,
        elements=elements,
        rig=rig,
        bev_range=tuple(scene_cfg.bev_range),
        seed=int(seed),
    )


def generate_dataset(scene_cfg) -> list[SurroundFrame]:
    """n_frames independent scenes; frame i depends only on (scene.seed, i)."""
    rig = make_rig(scene_cfg)
    return [
        generate_scene(frame_seed(scene_cfg.seed, i), scene_cfg, rig=rig)
        for i in range(scene_cfg.n_frames)
    ]


def frames_equal(a: SurroundFrame, b: SurroundFrame) -> bool:
    if len(a.images) != len(b.images) or len(a.elements) != len(b.elements):
        return False
    for x, y in zip(a.images, b.images):
        if x.shape != y.shape or x.dtype != y.dtype or not np.array_equal(x, y):
            return False
    for x, y in zip(a.uv_masks, b.uv_masks):
        if not np.array_equal(x, y):
            return False
    if not np.array_equal(a.bev_mask, b.bev_mask):
        return False
    for ea, eb in zip(a.elements, b.elements):
        if ea.cls != eb.cls or ea.closed != eb.closed or not np.array_equal(ea.points, eb.points):
            return False
    if a.bev_range != b.bev_range or a.seed != b.seed:
        return False
    for ca, cb in zip(a.rig, b.rig):
        if not np.array_equal(ca.intrinsics, cb.intrinsics):
            return False
        if not np.array_equal(ca.extrinsics, cb.extrinsics):
            return False
        if ca.image_size != cb.image_size:
            return False
    return True
