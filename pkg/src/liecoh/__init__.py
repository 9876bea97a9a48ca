"""Torus-invariant monomial bases, root systems, and unipotent matrix checks."""

__version__ = "0.1.0"
