"""Synthetic surround-view world: cameras, elements, rasters, dataset IO."""

from .camera import Camera, CameraRig, make_rig, mirror_partners, project_to_uv
from .dataset import load_dataset, load_manifest, save_dataset
from .raster import foreground_mask, rasterize_bev
from .synth import SurroundFrame, frame_seed, frames_equal, generate_dataset, generate_scene
from .world import CLASSES, CLASS_INDEX, N_CLASSES, MapElement

__all__ = [
    "Camera",
    "CameraRig",
    "make_rig",
    "mirror_partners",
    "project_to_uv",
    "load_dataset",
    "load_manifest",
    "save_dataset",
    "foreground_mask",
    "rasterize_bev",
    "SurroundFrame",
    "frame_seed",
    "frames_equal",
    "generate_dataset",
    "generate_scene",
    "CLASSES",
    "CLASS_INDEX",
    "N_CLASSES",
    "MapElement",
]
