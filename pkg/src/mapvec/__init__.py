"""mapvec: segmentation-guided vectorized map construction from surround cameras."""

__version__ = "0.1.0"

from .config import Config, from_dict, load_config, save_config

__all__ = ["Config", "from_dict", "load_config", "save_config", "__version__"]
