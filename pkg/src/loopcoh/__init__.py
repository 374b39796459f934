"""Exact cohomology computations for free loop spaces of truncated
projective spaces and their circle Borel constructions mod p."""

__version__ = "0.1.0"
