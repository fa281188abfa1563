"""Upward planar orders on directed acyclic multigraphs."""

__version__ = "0.1.0"
