"""Computational engine for the dihedral gravity cooperad and Brown's moduli spaces."""

__version__ = "0.1.0"
