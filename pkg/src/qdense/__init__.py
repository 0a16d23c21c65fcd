"""Exact counting, bounds and brute-force censuses for common complements
of subspace families over finite fields and for rank-metric code densities."""

__version__ = "0.1.0"
