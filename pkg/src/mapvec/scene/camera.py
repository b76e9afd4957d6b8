"""Pinhole cameras, the surround rig, and world-to-image projection."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError

# Camera frame convention: x right, y down, z forward (optical axis).
# Extrinsics map world -> camera: X_cam = R @ X_world + t.

DEPTH_EPS_DEFAULT = 0.1


@dataclass
class Camera:
    intrinsics: np.ndarray  # 3x3, pixels
    extrinsics: np.ndarray  # 4x4 rigid transform camera<-world
    image_size: tuple[int, int]  # (H_img, W_img)

    def __post_init__(self):
        self.intrinsics = np.asarray(self.intrinsics, dtype=np.float64)
        self.extrinsics = np.asarray(self.extrinsics, dtype=np.float64)
        if self.intrinsics.shape != (3, 3) or self.extrinsics.shape != (4, 4):
            raise ConfigError("camera needs 3x3 intrinsics and 4x4 extrinsics")
        fx, fy = self.intrinsics[0, 0], self.intrinsics[1, 1]
        cx, cy = self.intrinsics[0, 2], self.intrinsics[1, 2]
        h, w = self.image_size
        if fx <= 0 or fy <= 0:
            raise ConfigError("focal lengths must be positive")
        if not (0 <= cx < w and 0 <= cy < h):
            raise ConfigError("principal point must lie inside the image")
        rot = self.extrinsics[:3, :3]
        if np.abs(rot.T @ rot - np.eye(3)).max() > 1e-6:
            raise ConfigError("extrinsics rotation block is not orthonormal")

    @property
    def rotation(self) -> np.ndarray:
        return self.extrinsics[:3, :3]

    @property
    def translation(self) -> np.ndarray:
        return self.extrinsics[:3, 3]

    @property
    def center(self) -> np.ndarray:
        """Camera center in world coordinates."""
        return -self.rotation.T @ self.translation


@dataclass
class CameraRig:
    cameras: list[Camera] = field(default_factory=list)

    def __post_init__(self):
        if len(self.cameras) == 0:
            raise ConfigError("rig needs at least one camera")

    def __len__(self) -> int:
        return len(self.cameras)

    def __iter__(self):
        return iter(self.cameras)


def project_to_uv(points_world: np.ndarray, camera: Camera, depth_eps: float = DEPTH_EPS_DEFAULT):
    """Pinhole projection of world points [n, 3] into image pixels.

    Returns (uv [n, 2], valid [n]); points with camera-frame depth <= depth_eps
    are invalid and their uv entries are NaN.
    """
    pts = np.asarray(points_world, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.shape[-1] == 2:
        pts = np.concatenate([pts, np.zeros((len(pts), 1))], axis=1)
    cam_pts = pts @ camera.rotation.T + camera.translation
    depth = cam_pts[:, 2]
    valid = depth > depth_eps
    uv = np.full((len(pts), 2), np.nan)
    if valid.any():
        k = camera.intrinsics
        z = depth[valid]
        uv[valid, 0] = k[0, 0] * cam_pts[valid, 0] / z + k[0, 2]
        uv[valid, 1] = k[1, 1] * cam_pts[valid, 1] / z + k[1, 2]
    return uv, valid


def _camera_axes(yaw: float, pitch_down: float) -> np.ndarray:
    """World->camera rotation for a camera with heading yaw, pitched down."""
    cy, sy = np.cos(yaw), np.sin(yaw)
    ct, st = np.cos(pitch_down), np.sin(pitch_down)
    forward = np.array([ct * cy, ct * sy, -st])
    right = np.array([sy, -cy, 0.0])
    down = np.cross(forward, right)
    return np.stack([right, down, forward], axis=0)


# Headings for the first eight rig slots: front, rear, left, right, then diagonals.
_RIG_YAWS_DEG = [0.0, 180.0, 90.0, -90.0, 45.0, -45.0, 135.0, -135.0]


def make_rig(scene_cfg) -> CameraRig:
    """Deterministic surround rig: cameras on a ring, pitched at the ground."""
    h_img, w_img = scene_cfg.image_size
    n = scene_cfg.n_cameras
    hfov = np.deg2rad(scene_cfg.hfov_deg)
    fx = (w_img / 2.0) / np.tan(hfov / 2.0)
    intrinsics = np.array(
        [[fx, 0.0, w_img / 2.0 - 0.5], [0.0, fx, h_img / 2.0 - 0.5], [0.0, 0.0, 1.0]]
    )
    pitch = np.deg2rad(scene_cfg.cam_pitch_deg)
    radius = 1.2
    cameras = []
    for i in range(n):
        yaw_deg = _RIG_YAWS_DEG[i % len(_RIG_YAWS_DEG)]
        yaw = np.deg2rad(yaw_deg)
        rot = _camera_axes(yaw, pitch)
        center = np.array([radius * np.cos(yaw), radius * np.sin(yaw), scene_cfg.cam_height])
        ext = np.eye(4)
        ext[:3, :3] = rot
        ext[:3, 3] = -rot @ center
        cameras.append(Camera(intrinsics=intrinsics.copy(), extrinsics=ext, image_size=(h_img, w_img)))
    return CameraRig(cameras=cameras)


def mirror_partners(rig: CameraRig, tol: float = 1e-6) -> list[int]:
    """For each camera, the index of its mirror twin under y -> -y.

    Camera j is the twin of camera i when j's pose equals i's pose reflected
    across the xz-plane.  Raises ConfigError when the rig has no such
    symmetry (needed only for horizontal-flip augmentation).
    """
    mirror = np.diag([1.0, -1.0, 1.0])
    partners = []
    for i, cam in enumerate(rig):
        want_center = mirror @ cam.center
        # Reflected camera: world axes mirrored, then the image u axis flipped
        # to restore a right-handed camera frame.
        want_rot = np.diag([-1.0, 1.0, 1.0]) @ cam.rotation @ mirror
        found = -1
        for j, other in enumerate(rig):
            if (
                np.abs(other.center - want_center).max() < tol
                and np.abs(other.rotation - want_rot).max() < tol
            ):
                found = j
                break
        if found < 0:
            raise ConfigError(
                f"camera {i} has no mirror twin; horizontal flip needs a y-symmetric rig"
            )
        partners.append(found)
    return partners
