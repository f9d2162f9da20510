"""Decorated graph complexes: exact cohomology and representation data."""

__version__ = "0.1.0"
