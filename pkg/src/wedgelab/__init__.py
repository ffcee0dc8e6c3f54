"""Euler elements, wedge geometry, standard subspaces and modular covariance certificates."""

__version__ = "0.1.0"
