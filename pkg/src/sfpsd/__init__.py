"""sfpsd - positive semidefinite matrices built from special functions."""

__version__ = "1.0.0"
