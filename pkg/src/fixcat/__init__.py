"""Fixpoint operators in finite categorical models, with machine-checked laws."""

__version__ = "0.1.0"
