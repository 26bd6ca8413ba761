"""Equitable colourings of sparse graphs by class-digraph accessibility moves."""

__version__ = "0.1.0"
