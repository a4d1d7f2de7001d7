"""Unit tests for dcgraph."""
