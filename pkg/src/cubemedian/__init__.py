"""Finite certified windows of cube complexes and median-algebra diagnostics."""

__version__ = "0.1.0"

from .errors import Inconclusive, InputError, ResourceError, StructuralError  # noqa: E402
from .median_core import (CubeBall, certify, classify_subset, dimension,  # noqa: E402
                          generate_subalgebra, hull, interval, median)

__all__ = [
    "__version__", "CubeBall", "certify", "classify_subset", "dimension",
    "generate_subalgebra", "hull", "interval", "median",
    "InputError", "ResourceError", "StructuralError", "Inconclusive",
]
