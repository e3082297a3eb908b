"""Numerical laboratory for weighted relative-entropy stability of 1-D discontinuities."""

__version__ = "0.1.0"
