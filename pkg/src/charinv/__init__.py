"""Exact character-table invariants of the reciprocal conjugation character."""

__version__ = "0.1.0"
