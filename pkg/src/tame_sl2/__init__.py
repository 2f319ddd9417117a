"""Top-level package for exact computations in the tame group of the quadric SL2."""

__all__ = ["__version__"]
__version__ = "0.1.0"
