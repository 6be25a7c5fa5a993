"""Exact symbolic-numeric engine for KZ-type connections, Coulomb twists,
logarithmic forms, filtered complexes, and hypergeometric integral solutions
at desk scale."""

__version__ = "0.1.0"

from .scalars import ExactMatrix, KappaScalar, KS, SeededSampler

__all__ = ["ExactMatrix", "KappaScalar", "KS", "SeededSampler", "__version__"]
