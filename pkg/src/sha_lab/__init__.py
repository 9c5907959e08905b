"""Sha Lab - machine-learning toolkit for predicting |Sha(E/Q)| from BSD invariants."""

__version__ = "1.0.0"
