"""Combinatorial unoriented link Floer calculator on torus diagrams."""

__version__ = "0.1.0"
