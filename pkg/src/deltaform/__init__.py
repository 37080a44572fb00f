"""Exact solver for integer programs with bounded subdeterminants."""

__version__ = "0.1.0"
