"""Exact principal partition sequences, {s,t}-separating variants and their uses."""

__version__ = "0.1.0"
