"""Exact KLRW characters and Gelfand-Tsetlin multiplicity tables."""
__version__ = "0.1.0"
