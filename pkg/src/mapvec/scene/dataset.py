"""Dataset serialization: JSON manifest + lossless PNG rasters per frame.

Layout:
    <dir>/manifest.json
    <dir>/frame_00000/cam_0.png        RGB, uint8
    <dir>/frame_00000/uv_mask_0.png    grayscale, {0, 255}
    <dir>/frame_00000/bev_mask.png     grayscale, {0, 255}

The manifest records the scene config, the camera rig, per-frame seeds,
vector ground truth as decimal text, and a sha256 checksum of every raster's
decoded pixel array.  load(save(frames)) reproduces the frames bit-exactly.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np
from PIL import Image

from ..errors import FormatError
from .camera import Camera, CameraRig
from .synth import SurroundFrame
from .world import MapElement

MANIFEST_NAME = "manifest.json"
FORMAT_VERSION = 1


def _array_sha256(arr: np.ndarray) -> str:
    return hashlib.sha256(np.ascontiguousarray(arr).tobytes()).hexdigest()


def _write_png(path: Path, arr: np.ndarray) -> str:
    """Write a [3,H,W] image or [H,W] mask as PNG; returns the pixel checksum."""
    if arr.ndim == 3:
        data = arr.transpose(1, 2, 0)
        Image.fromarray(data, mode="RGB").save(path)
    else:
        Image.fromarray(arr, mode="L").save(path)
    return _array_sha256(arr)


def _read_png(path: Path, expect_rgb: bool) -> np.ndarray:
    if not path.exists():
        raise FormatError(f"missing raster file: {path}")
    with Image.open(path) as im:
        data = np.asarray(im)
    if expect_rgb:
        if data.ndim != 3 or data.shape[2] != 3:
            raise FormatError(f"raster file {path} is not an RGB image")
        return data.transpose(2, 0, 1)
    if data.ndim != 2:
        raise FormatError(f"raster file {path} is not a grayscale mask")
    return data


def _rig_to_json(rig: CameraRig) -> list[dict]:
    return [
        {
            "intrinsics": cam.intrinsics.tolist(),
            "extrinsics": cam.extrinsics.tolist(),
            "image_size": list(cam.image_size),
        }
        for cam in rig
    ]


def _rig_from_json(data: list[dict]) -> CameraRig:
    return CameraRig(
        cameras=[
            Camera(
                intrinsics=np.array(c["intrinsics"], dtype=np.float64),
                extrinsics=np.array(c["extrinsics"], dtype=np.float64),
                image_size=tuple(c["image_size"]),
            )
            for c in data
        ]
    )


def save_dataset(frames: list[SurroundFrame], directory: str | Path, config: dict | None = None) -> Path:
    """Serialize frames to a directory; returns the manifest path."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    manifest: dict = {
        "format_version": FORMAT_VERSION,
        "config": config,
        "n_frames": len(frames),
        "rig": _rig_to_json(frames[0].rig) if frames else [],
        "frames": [],
    }
    for i, frame in enumerate(frames):
        frame_dir = directory / f"frame_{i:05d}"
        frame_dir.mkdir(exist_ok=True)
        files: dict[str, str] = {}
        for k, (img, mask) in enumerate(zip(frame.images, frame.uv_masks)):
            img_u8 = np.round(img * 255.0).astype(np.uint8)
            files[f"cam_{k}.png"] = _write_png(frame_dir / f"cam_{k}.png", img_u8)
            files[f"uv_mask_{k}.png"] = _write_png(frame_dir / f"uv_mask_{k}.png", mask * 255)
        files["bev_mask.png"] = _write_png(frame_dir / "bev_mask.png", frame.bev_mask * 255)
        manifest["frames"].append(
            {
                "seed": frame.seed,
                "bev_range": list(frame.bev_range),
                "elements": [
                    {"cls": el.cls, "closed": el.closed, "points": el.points.tolist()}
                    for el in frame.elements
                ],
                "files": files,
            }
        )
    path = directory / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=1))
    return path


def load_dataset(directory: str | Path) -> list[SurroundFrame]:
    """Load a dataset directory; verifies every raster checksum."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    if not manifest_path.exists():
        raise FormatError(f"missing manifest: {manifest_path}")
    try:
        manifest = json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupt manifest {manifest_path}: {exc}") from exc
    for key in ("format_version", "n_frames", "rig", "frames"):
        if key not in manifest:
            raise FormatError(f"corrupt manifest {manifest_path}: missing key {key!r}")
    if manifest["format_version"] != FORMAT_VERSION:
        raise FormatError(
            f"manifest {manifest_path} has unsupported format_version {manifest['format_version']}"
        )
    if len(manifest["frames"]) != manifest["n_frames"]:
        raise FormatError(f"corrupt manifest {manifest_path}: frame count mismatch")
    rig = _rig_from_json(manifest["rig"])
    frames = []
    for i, rec in enumerate(manifest["frames"]):
        frame_dir = directory / f"frame_{i:05d}"
        files = rec["files"]

        def load_checked(name: str, expect_rgb: bool) -> np.ndarray:
            arr = _read_png(frame_dir / name, expect_rgb)
            if _array_sha256(arr) != files[name]:
                raise FormatError(f"checksum mismatch in {frame_dir / name}")
            return arr

        images, uv_masks = [], []
        for k in range(len(rig)):
            img_u8 = load_checked(f"cam_{k}.png", expect_rgb=True)
            images.append(img_u8.astype(np.float32) / 255.0)
            uv_masks.append((load_checked(f"uv_mask_{k}.png", expect_rgb=False) > 0).astype(np.uint8))
        bev_mask = (load_checked("bev_mask.png", expect_rgb=False) > 0).astype(np.uint8)
        elements = [
            MapElement(
                cls=e["cls"],
                points=np.array(e["points"], dtype=np.float64),
                closed=bool(e["closed"]),
            )
            for e in rec["elements"]
        ]
        frames.append(
            SurroundFrame(
                images=images,
                uv_masks=uv_masks,
                bev_mask=bev_mask,
                elements=elements,
                rig=rig,
                bev_range=tuple(rec["bev_range"]),
                seed=int(rec["seed"]),
            )
        )
    return frames


def load_manifest(directory: str | Path) -> dict:
    manifest_path = Path(directory) / MANIFEST_NAME
    if not manifest_path.exists():
        raise FormatError(f"missing manifest: {manifest_path}")
    try:
        return json.loads(manifest_path.read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(f"corrupt manifest {manifest_path}: {exc}") from exc
