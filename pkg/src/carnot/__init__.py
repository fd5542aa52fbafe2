"""Exact decision procedures for gradings on finite-dimensional algebras
over Q, cohopfian classification of nilpotent groups, and systolic-growth
experiments."""

__version__ = "0.1.0"
