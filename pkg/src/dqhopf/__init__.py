"""Exact verification toolkit for finite-dimensional dual quasi-Hopf algebras."""

__version__ = "0.1.0"
