"""Rational tangles and hard unknot diagrams, built on exact continued fractions."""

__version__ = "0.1.0"
