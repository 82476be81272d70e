"""Exact fractional-ideal arithmetic and classification of v-type properties."""

__version__ = "0.1.0"
