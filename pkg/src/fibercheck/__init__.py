"""Fiber-surface detection for alternating and almost alternating links."""

__version__ = "0.1.0"
