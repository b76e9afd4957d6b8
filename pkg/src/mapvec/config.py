"""Configuration tree: every tunable constant in the package lives here.

The tree is a set of nested dataclasses with defaults.  Configs round-trip
through plain dicts (and YAML files), reject unknown keys, and support
dotted-path overrides (``train.lr0=1e-3``) so every constant is reachable
from the command line.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from .errors import ConfigError


@dataclass
class SceneConfig:
    """Synthetic world, camera rig, and BEV grid geometry."""

    seed: int = 0
    n_frames: int = 64
    image_size: tuple[int, int] = (64, 96)  # (H, W) pixels per camera
    n_cameras: int = 4
    bev_range: tuple[float, float, float, float] = (-15.0, 15.0, -7.5, 7.5)
    grid_size: tuple[int, int] = (100, 50)  # (H_bev, W_bev); rows span x, cols span y
    half_width: float = 0.5  # polyline foreground half-width, meters
    n_dividers: tuple[int, int] = (1, 3)
    n_crossings: tuple[int, int] = (0, 2)
    n_boundaries: tuple[int, int] = (2, 2)
    depth_eps: float = 0.1  # camera-frame depth below which projection is invalid
    cam_height: float = 1.6
    cam_pitch_deg: float = 12.0
    hfov_deg: float = 100.0
    texture_mpp: float = 0.1  # ground paint texture resolution, meters per texel


@dataclass
class UsmConfig:
    enabled: bool = True


@dataclass
class BsmConfig:
    enabled: bool = True


@dataclass
class SgmConfig:
    enabled: bool = True
    query_source: str = "features"  # "features" (penultimate) or "logits"
    d_k: int = 64


@dataclass
class DecoderConfig:
    n_instances: int = 25
    n_points: int = 10
    n_layers: int = 6
    n_heads: int = 4


@dataclass
class ModelConfig:
    d_model: int = 64
    backbone_widths: tuple[int, int, int] = (32, 48, 64)
    norm_groups: int = 8
    aspp_rates: tuple[int, int, int] = (1, 2, 4)
    encoder_heads: int = 4
    ffn_dim: int = 128
    pe_temperature: float = 10000.0
    usm: UsmConfig = field(default_factory=UsmConfig)
    bsm: BsmConfig = field(default_factory=BsmConfig)
    sgm: SgmConfig = field(default_factory=SgmConfig)
    decoder: DecoderConfig = field(default_factory=DecoderConfig)


@dataclass
class LossConfig:
    lambda1: float = 15.0  # Dice term weight
    lambda2: float = 0.5  # cross-entropy term weight
    dice_eps: float = 1.0
    dice_mode: str = "dice"  # "dice" | "literal_union"
    w_cls: float = 2.0
    w_pts: float = 5.0
    cls_loss: str = "ce"  # "ce" | "focal"
    focal_alpha: float = 0.25
    focal_gamma: float = 2.0


@dataclass
class TrainConfig:
    seed: int = 0
    lr0: float = 3.0e-4
    lr_min_ratio: float = 0.01  # lr_min = lr0 * lr_min_ratio
    beta1: float = 0.9
    beta2: float = 0.999
    weight_decay: float = 0.01
    batch_size: int = 2
    epochs: int = 300
    hflip_prob: float = 0.0
    threads: int = 1  # torch intra-op threads; 1 keeps runs bit-deterministic
    checkpoint_every: int = 0  # steps between periodic checkpoints; 0 = final only
    log_every: int = 1


@dataclass
class EvalConfig:
    thresholds: tuple[float, ...] = (0.5, 1.0, 1.5)
    score_min: float = 0.05
    n_sample_points: int = 100
    interpolation: str = "all_point"  # "all_point" | "eleven_point"


@dataclass
class Config:
    scene: SceneConfig = field(default_factory=SceneConfig)
    model: ModelConfig = field(default_factory=ModelConfig)
    loss: LossConfig = field(default_factory=LossConfig)
    train: TrainConfig = field(default_factory=TrainConfig)
    eval: EvalConfig = field(default_factory=EvalConfig)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def validate(self) -> "Config":
        validate_config(self)
        return self

    def copy(self) -> "Config":
        return from_dict(self.to_dict())


def _coerce(value: Any, default: Any, path: str) -> Any:
    """Coerce a raw (YAML-parsed) value to the type of the default field."""
    if dataclasses.is_dataclass(default):
        raise ConfigError(f"{path}: expected a mapping, got {value!r}")
    if isinstance(default, bool):
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "false", "1", "0"):
            return value.lower() in ("true", "1")
        raise ConfigError(f"{path}: expected a boolean, got {value!r}")
    if isinstance(default, int) and not isinstance(default, bool):
        if isinstance(value, int) and not isinstance(value, bool):
            return value
        if isinstance(value, float) and value.is_integer():
            return int(value)
        raise ConfigError(f"{path}: expected an integer, got {value!r}")
    if isinstance(default, float):
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return float(value)
        raise ConfigError(f"{path}: expected a number, got {value!r}")
    if isinstance(default, str):
        if isinstance(value, str):
            return value
        raise ConfigError(f"{path}: expected a string, got {value!r}")
    if isinstance(default, tuple):
        if not isinstance(value, (list, tuple)):
            raise ConfigError(f"{path}: expected a sequence, got {value!r}")
        if len(default) > 0 and len(value) != len(default) and path != "eval.thresholds":
            raise ConfigError(
                f"{path}: expected {len(default)} entries, got {len(value)}"
            )
        elem = default[0] if default else 0.0
        return tuple(_coerce(v, elem, f"{path}[{i}]") for i, v in enumerate(value))
    raise ConfigError(f"{path}: unsupported config field type {type(default)!r}")


def _fill_dataclass(cls: type, data: dict, path: str) -> Any:
    if not isinstance(data, dict):
        raise ConfigError(f"{path or 'config'}: expected a mapping, got {data!r}")
    known = {f.name: f for f in fields(cls)}
    for key in data:
        if key not in known:
            where = f"{path}.{key}" if path else key
            raise ConfigError(f"unknown config key: {where}")
    kwargs = {}
    for name, f in known.items():
        sub_path = f"{path}.{name}" if path else name
        if name not in data:
            continue
        default = _default_of(f)
        if dataclasses.is_dataclass(default):
            kwargs[name] = _fill_dataclass(type(default), data[name], sub_path)
        else:
            kwargs[name] = _coerce(data[name], default, sub_path)
    obj = cls(**kwargs)
    return obj


def _default_of(f: dataclasses.Field) -> Any:
    if f.default is not dataclasses.MISSING:
        return f.default
    return f.default_factory()  # type: ignore[misc]


def from_dict(data: dict) -> Config:
    """Build a Config from a (possibly partial) plain dict; unknown keys raise."""
    return _fill_dataclass(Config, data or {}, "")


def load_config(path: str | Path) -> Config:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    try:
        data = yaml.safe_load(path.read_text())
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    cfg = from_dict(data or {})
    cfg.validate()
    return cfg


def save_config(cfg: Config, path: str | Path) -> None:
    Path(path).write_text(yaml.safe_dump(cfg.to_dict(), sort_keys=False))


def apply_overrides(cfg: Config, overrides: list[str]) -> Config:
    """Apply ``section.key=value`` strings on top of a config; returns a new Config."""
    data = cfg.to_dict()
    for item in overrides:
        if "=" not in item:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        dotted, raw = item.split("=", 1)
        keys = dotted.strip().split(".")
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError:
            value = raw
        node = data
        for k in keys[:-1]:
            if not isinstance(node, dict) or k not in node:
                raise ConfigError(f"unknown config key: {dotted}")
            node = node[k]
        if not isinstance(node, dict) or keys[-1] not in node:
            raise ConfigError(f"unknown config key: {dotted}")
        node[keys[-1]] = value
    out = from_dict(data)
    return out


def validate_config(cfg: Config) -> None:
    s, m, lo, t, e = cfg.scene, cfg.model, cfg.loss, cfg.train, cfg.eval
    if s.n_cameras < 1:
        raise ConfigError("scene.n_cameras must be >= 1")
    if s.n_frames < 1:
        raise ConfigError("scene.n_frames must be >= 1")
    h_img, w_img = s.image_size
    if h_img <= 0 or w_img <= 0:
        raise ConfigError("scene.image_size entries must be positive")
    h_bev, w_bev = s.grid_size
    if h_bev <= 0 or w_bev <= 0:
        raise ConfigError("scene.grid_size entries must be positive")
    x_min, x_max, y_min, y_max = s.bev_range
    if not (x_min < x_max and y_min < y_max):
        raise ConfigError("scene.bev_range must satisfy x_min < x_max and y_min < y_max")
    cell_x = (x_max - x_min) / h_bev
    cell_y = (y_max - y_min) / w_bev
    if abs(cell_x - cell_y) > 1e-9:
        raise ConfigError(
            f"scene.grid_size must give square cells: x pitch {cell_x:.6g} m"
            f" vs y pitch {cell_y:.6g} m"
        )
    if s.half_width <= 0:
        raise ConfigError("scene.half_width must be positive")
    for name in ("n_dividers", "n_crossings", "n_boundaries"):
        lo_n, hi_n = getattr(s, name)
        if lo_n < 0 or hi_n < lo_n:
            raise ConfigError(f"scene.{name} must be 0 <= min <= max")
    if m.d_model % m.encoder_heads != 0:
        raise ConfigError("model.d_model must be divisible by model.encoder_heads")
    if m.d_model % m.decoder.n_heads != 0:
        raise ConfigError("model.d_model must be divisible by model.decoder.n_heads")
    if m.sgm.enabled and not m.bsm.enabled:
        raise ConfigError("model.sgm.enabled requires model.bsm.enabled (queries come from the BEV segmentation head)")
    if m.sgm.query_source not in ("features", "logits"):
        raise ConfigError("model.sgm.query_source must be 'features' or 'logits'")
    if m.decoder.n_instances <= 0 or m.decoder.n_points <= 0:
        raise ConfigError("model.decoder.n_instances and n_points must be positive")
    if lo.dice_mode not in ("dice", "literal_union"):
        raise ConfigError("loss.dice_mode must be 'dice' or 'literal_union'")
    if lo.cls_loss not in ("ce", "focal"):
        raise ConfigError("loss.cls_loss must be 'ce' or 'focal'")
    if lo.lambda1 < 0 or lo.lambda2 < 0:
        raise ConfigError("loss.lambda1 and loss.lambda2 must be >= 0")
    if t.lr0 <= 0:
        raise ConfigError("train.lr0 must be positive")
    if t.epochs < 1:
        raise ConfigError("train.epochs must be >= 1")
    if t.batch_size < 1:
        raise ConfigError("train.batch_size must be >= 1")
    if not 0.0 <= t.hflip_prob <= 1.0:
        raise ConfigError("train.hflip_prob must be in [0, 1]")
    if len(e.thresholds) == 0:
        raise ConfigError("eval.thresholds must be nonempty")
    prev = 0.0
    for thr in e.thresholds:
        if thr <= prev:
            raise ConfigError("eval.thresholds must be strictly increasing and positive")
        prev = thr
    if e.interpolation not in ("all_point", "eleven_point"):
        raise ConfigError("eval.interpolation must be 'all_point' or 'eleven_point'")
    if e.n_sample_points < 2:
        raise ConfigError("eval.n_sample_points must be >= 2")


def schema_lines(cls: type = Config, prefix: str = "") -> list[tuple[str, str, str]]:
    """Flatten the config tree to (dotted key, type name, default) rows."""
    rows: list[tuple[str, str, str]] = []
    for f in fields(cls):
        default = _default_of(f)
        path = f"{prefix}.{f.name}" if prefix else f.name
        if dataclasses.is_dataclass(default):
            rows.extend(schema_lines(type(default), path))
        else:
            rows.append((path, type(default).__name__, repr(default)))
    return rows


def render_schema_markdown() -> str:
    lines = ["# Configuration schema", "", "| key | type | default |", "| --- | --- | --- |"]
    for key, tname, default in schema_lines():
        lines.append(f"| `{key}` | {tname} | `{default}` |")
    lines.append("")
    return "\n".join(lines)
