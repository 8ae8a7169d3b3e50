"""torfan: exact and numeric workbench for toric quantum algebra."""

__version__ = "0.1.0"

from .exact_algebra import KERNEL

__all__ = ["KERNEL", "__version__"]
