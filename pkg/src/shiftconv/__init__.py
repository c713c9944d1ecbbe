"""Numerical laboratory for shifted convolution sums of GL(3) x GL(2) type."""

__version__ = "0.1.0"
