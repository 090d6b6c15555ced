"""Exact enumeration of combinatorial types of hyperplane slices of the cube."""

__version__ = "0.1.0"
