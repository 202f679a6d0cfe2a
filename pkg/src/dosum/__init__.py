"""Exact exponential sums, cyclic codes and sequence correlations over F_{p^n}."""

__version__ = "0.1.0"
