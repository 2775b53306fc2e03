"""Barbero-Immirzi connections from spin(n,1) reductive splittings."""

__version__ = "0.1.0"
