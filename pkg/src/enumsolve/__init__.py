"""Exact solving and certification of zero-dimensional polynomial systems."""

__version__ = "0.1.0"
