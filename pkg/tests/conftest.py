import numpy as np
import pytest

from boxbound import ChebPoly


def random_cheb(rng: np.random.Generator, n: int, degree: int, terms: int = 6) -> ChebPoly:
    """Sparse random polynomial with total degree <= ``degree``."""
    coeffs = {}
    for _ in range(terms):
        alpha = [0] * n
        for _ in range(rng.integers(0, degree + 1)):
            alpha[rng.integers(0, n)] += 1
        coeffs[tuple(alpha)] = coeffs.get(tuple(alpha), 0.0) + rng.normal()
    return ChebPoly(n, coeffs)


def cheb_by_cos(k: int, x):
    """Trigonometric definition T_k(x) = cos(k arccos x)."""
    return np.cos(k * np.arccos(x))


@pytest.fixture
def rng():
    return np.random.default_rng(20161018)
