"""Exact lattice computations for numerical Fano and Mukai polarizations on
Enriques surfaces."""

__version__ = "0.1.0"
