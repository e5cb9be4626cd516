"""Exact symmetric functions, Macdonald operators and colored Hopf link invariants."""

__version__ = "0.1.0"
