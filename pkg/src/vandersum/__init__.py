"""Exact evaluation and verification of a determinantal geometric-series identity."""
