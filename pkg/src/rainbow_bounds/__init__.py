"""Bounds and certificates for rainbow triangles in edge-colored graphs."""

__version__ = "0.1.0"
