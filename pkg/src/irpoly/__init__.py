"""Ideal right-angled hyperbolic polyhedra: enumeration, volumes and census analysis."""

__version__ = "0.1.0"
