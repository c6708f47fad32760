"""Braid invariants from Desargues flips on projective line arrangements."""

__version__ = "0.1.0"
