"""Compact extended formulations solved and certified in exact arithmetic."""

__version__ = "0.1.0"
