"""Exact computation of periodic points of z^2 + c over Q and quadratic fields."""

__version__ = "0.1.0"
