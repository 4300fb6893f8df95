"""Exact analysis of lexsegment monomial ideals."""

__version__ = "0.1.0"
