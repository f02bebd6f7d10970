"""Exact finite-scale computations for generalized Turán problems."""

__version__ = "0.1.0"
