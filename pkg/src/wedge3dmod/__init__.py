"""Exact computations for GL6-equivariant D-modules on wedge^3 C^6."""

__version__ = "0.1.0"
