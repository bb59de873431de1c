"""Exact verification of the cubic system Z1^3 + Z2^3 + 9 Z3^3 = 0, w Z1 + 3^b Z2 + Z3 = 0."""

__version__ = "0.1.0"
