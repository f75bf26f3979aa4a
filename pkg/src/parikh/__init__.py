"""Parikh automata on finite and infinite words."""

__version__ = "0.1.0"
