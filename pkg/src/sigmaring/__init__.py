"""Exact verification toolkit for the genus-3 degenerate sigma ring."""

__version__ = "0.1.0"
