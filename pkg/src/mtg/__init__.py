"""Multithreshold representations of graphs: exact constructions, a parity
verifier, closed-form threshold numbers and an exact search oracle."""

__version__ = "0.1.0"
