"""Quantum invariants of 3-manifolds from spherical fusion category data."""

__version__ = "0.1.0"
