"""Exact and constructive tools for factor and cycle-tiling problems in digraphs."""

__version__ = "0.1.0"
