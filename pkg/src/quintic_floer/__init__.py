"""Exact computation of Floer cohomology data for the real quintic family."""

__version__ = "0.1.0"
