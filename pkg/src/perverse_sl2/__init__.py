"""Exact reconstruction of the tilting string for SL(2,q) blocks."""
__version__ = "0.1.0"
