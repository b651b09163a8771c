"""Numerical toolkit for isothermic surfaces with planar curvature lines."""

__version__ = "0.1.0"
