"""Finite strict 2-categories, lax 2-functors and their homotopy certificates."""

__version__ = "0.1.0"
