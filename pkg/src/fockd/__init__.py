"""Type-D Coxeter groups, deformed Fock spaces and their Wick combinatorics."""

from ._backend import backend, set_backend, use_backend
from .numerics import IntPolynomial, qnumber

__version__ = "0.1.0"

__all__ = ["IntPolynomial", "backend", "qnumber", "set_backend", "use_backend", "__version__"]
