"""Exact tools for constrained matroid basis counts, log-concavity and spanning-tree constructions."""

__version__ = "0.1.0"
