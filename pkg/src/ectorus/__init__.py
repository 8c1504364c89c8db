"""Exact and numeric tools linking elliptic curves and noncommutative tori."""

__version__ = "0.1.0"
