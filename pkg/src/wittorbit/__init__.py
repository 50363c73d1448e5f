"""Exact computations with Witt and Virasoro algebras."""

__version__ = "0.1.0"
