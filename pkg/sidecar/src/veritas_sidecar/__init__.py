"""HTTP inference sidecar for the headline-verification engine."""

from .app import create_app
from .config import SidecarConfig

__version__ = "0.1.0"

__all__ = ["SidecarConfig", "create_app", "__version__"]
