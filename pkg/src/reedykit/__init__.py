"""Finite Reedy categories, Reedy diagrams of chain complexes over F_p, and
decision procedures for left/right fibrations of Reedy categories."""

__version__ = "0.1.0"
