"""Exact phase-space engine for imaginary Liouville quantum mechanics on S^1 x Z/2."""

__version__ = "0.1.0"
