"""Heralded linear-optical generation of dual-rail two-qubit states."""

__version__ = "0.1.0"
