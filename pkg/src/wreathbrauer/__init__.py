"""Exact computations with wreathed 2-groups, their fusion systems and Scott modules over GF(2)."""

__version__ = "0.1.0"
