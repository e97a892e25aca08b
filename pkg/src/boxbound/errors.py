"""Exception types raised across the package."""

import numpy as np


class DomainError(ValueError):
    """A point lies outside the box [-1, 1]^n where it is required to lie inside."""


class PreconditionError(ValueError):
    """An operation was called outside the range its contract covers."""


class DegenerateInputError(ValueError):
    """The input polynomial is too trivial for the requested quantity (e.g. constant)."""


class UnknownFunctionError(KeyError):
    """Lookup of a benchmark function that is not in the catalog."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


class DefinitenessError(np.linalg.LinAlgError):
    """The right-hand matrix of a pencil is not (numerically) positive definite.

    Attributes
    ----------
    pivot : int
        Zero-based index of the first failing Cholesky pivot.
    subset : int or None
        Bitmask of the subset I whose pencil failed, when known.
    """

    def __init__(self, message: str, pivot: int, subset: int | None = None):
        super().__init__(message)
        self.pivot = pivot
        self.subset = subset
