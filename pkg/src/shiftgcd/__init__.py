"""Exact experiments on gcds of additively shifted integer vectors."""

from .errors import DomainError, InvariantError, NumericError, ResourceLimitError, ShiftGcdError
from .numbercore import gcd_vec, height, height_star, jacobsthal, mobius, omega, primes_above

__version__ = "0.1.0"

__all__ = [
    "DomainError", "InvariantError", "NumericError", "ResourceLimitError", "ShiftGcdError",
    "gcd_vec", "height", "height_star", "jacobsthal", "mobius", "omega", "primes_above",
]
