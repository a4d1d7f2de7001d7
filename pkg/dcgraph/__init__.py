"""Distinction-colored complete graphs: validation, amalgamation, realization and generic stages."""

__version__ = "0.1.0"
