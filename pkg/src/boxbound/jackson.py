"""Jackson kernel coefficients, delta-approximant densities and error constants.

The univariate density ``h_r(x) = 1 + 2 sum_k g_k^r T_k(x) T_k(x*)`` is a
nonnegative probability density for ``dmu`` concentrated around ``x*``.
Tensor products of these give feasible densities for the box hierarchy and
hence closed-form upper bounds on the minimum of a polynomial.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import ChebPoly, cheb_eval_1d, chebu_eval_1d, poly_eval
from .errors import DegenerateInputError, DomainError, PreconditionError


@dataclass(frozen=True)
class JacksonCoefficients:
    r: int
    g: np.ndarray
    theta_r: float


@dataclass(frozen=True)
class DeltaDensity:
    center: tuple[float, ...]
    degrees: tuple[int, ...]
    poly: ChebPoly


@dataclass(frozen=True)
class ErrorConstants:
    """Constants bounding ``|1 - g_k^r|`` and the Jackson-bound error.

    ``d`` is the largest per-coordinate degree of ``f``; only coefficients
    ``g_k`` with ``k <= d`` enter the bound, so this ``d`` is the one fed to
    ``c_d`` and ``C_d``. ``total_degree`` feeds the convergence-rate envelope.
    """

    d: int
    total_degree: int
    psi_d: int
    c_d: float
    C_d: float
    C_f: float


@lru_cache(maxsize=256)
def _jackson_g(r: int) -> tuple[float, ...]:
    theta = math.pi / (r + 2)
    c = math.cos(theta)
    return tuple(
        ((r + 2 - k) * cheb_eval_1d(k, c) + chebu_eval_1d(k - 1, c) * c) / (r + 2)
        for k in range(r + 1)
    )


def jackson_coefficients(r: int) -> JacksonCoefficients:
    """Jackson damping factors ``g_0^r .. g_r^r`` with ``theta_r = pi / (r + 2)``.

    Uses the polynomial form ``(r+2-k) T_k(cos t) + U_{k-1}(cos t) cos t``,
    which has no ``sin`` in the denominator.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    g = np.array(_jackson_g(r))
    g[0] = 1.0
    g.setflags(write=False)
    return JacksonCoefficients(r=r, g=g, theta_r=math.pi / (r + 2))


def _check_center(x: float) -> float:
    x = float(x)
    if abs(x) > 1.0:
        raise DomainError(f"center {x} lies outside [-1, 1]")
    return x


def _h_coeffs(x_star: float, r: int) -> list[float]:
    g = jackson_coefficients(r).g
    return [1.0] + [2.0 * g[k] * cheb_eval_1d(k, x_star) for k in range(1, r + 1)]


def delta_density_1d(x_star: float, r: int) -> DeltaDensity:
    x_star = _check_center(x_star)
    coeffs = _h_coeffs(x_star, r)
    poly = ChebPoly(1, {(k,): c for k, c in enumerate(coeffs)})
    return DeltaDensity(center=(x_star,), degrees=(r,), poly=poly)


def delta_density_nd(x_star, degrees) -> DeltaDensity:
    """Product density ``H(x) = prod_i h_{r_i}(x_i)`` centred at ``x_star``."""
    x_star = tuple(_check_center(v) for v in x_star)
    degrees = tuple(int(r) for r in degrees)
    if len(x_star) != len(degrees):
        raise ValueError("x_star and degrees must have the same length")
    if any(r < 0 for r in degrees):
        raise ValueError("degrees must be >= 0")
    factors = [_h_coeffs(x, r) for x, r in zip(x_star, degrees)]
    terms = {}
    for alpha in np.ndindex(*(len(fc) for fc in factors)):
        c = 1.0
        for i, a in enumerate(alpha):
            c *= factors[i][a]
        terms[tuple(int(a) for a in alpha)] = c
    return DeltaDensity(center=x_star, degrees=degrees, poly=ChebPoly(len(degrees), terms))


def degree_split(r: int, n: int) -> tuple[int, ...]:
    """Split ``r - n = s n + n0`` into ``n0`` parts of ``s + 1`` and the rest ``s``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if r < n:
        raise ValueError(f"r={r} must be at least n={n}")
    s, n0 = divmod(r - n, n)
    return tuple(s + 1 if i < n0 else s for i in range(n))


def jackson_bound(f: ChebPoly, x_star, degrees) -> float:
    """Exact value of ``int f H dmu`` for the product Jackson density ``H``.

    Equals ``sum_alpha f_alpha T_alpha(x*) prod_i g_{alpha_i}^{r_i}``.
    Every ``r_i`` must be at least the total degree of ``f``.
    """
    x_star = tuple(_check_center(v) for v in x_star)
    degrees = tuple(int(r) for r in degrees)
    if len(x_star) != f.n or len(degrees) != f.n:
        raise ValueError("x_star and degrees must match the dimension of f")
    d = max(f.degree, 0)
    if any(r < d for r in degrees):
        raise PreconditionError(f"each degree must be >= deg f = {d}, got {degrees}")
    gs = [jackson_coefficients(r).g for r in degrees]
    total = 0.0
    for alpha, c in f.terms.items():
        term = c
        for i, a in enumerate(alpha):
            term *= gs[i][a] * cheb_eval_1d(a, x_star[i])
        total += term
    return total


def psi(k: int) -> int:
    """Index of the largest monomial coefficient of ``T_k`` (0 for ``k <= 4``)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    if k <= 4:
        return 0
    disc = 8 * k * k - 7
    root = math.isqrt(disc)
    if root * root == disc:
        num = 4 * k - 5 - root
        return -((-num) // 8)
    return math.ceil((4 * k - 5 - math.sqrt(disc)) / 8)


def max_cheb_coeff(k: int) -> float:
    """``max_i |t_i^(k)|``, the largest absolute monomial coefficient of ``T_k``."""
    if k < 2:
        raise ValueError("k must be >= 2")
    m = psi(k)
    if k <= 20:
        val = 2 ** (k - 1 - 2 * m) * k * math.factorial(k - m - 1)
        return float(val // (math.factorial(m) * math.factorial(k - 2 * m)))
    log_val = (
        (k - 1 - 2 * m) * math.log(2)
        + math.log(k)
        + math.lgamma(k - m)
        - math.lgamma(m + 1)
        - math.lgamma(k - 2 * m + 1)
    )
    return math.exp(log_val)


def error_constants(f: ChebPoly, *, include_constant: bool = True) -> ErrorConstants:
    """``C_d = d^2 (1 + 2 c_d)`` and ``C_f = (sum |f_alpha|) C_d pi^2 / 2``.

    ``include_constant=False`` drops the ``T_0`` coefficient from the sum, as
    in the univariate estimate.
    """
    if f.is_constant():
        raise DegenerateInputError("error constants are undefined for a constant polynomial")
    d = max(f.max_degrees())
    p = psi(d)
    c_d = 1.0 if d == 1 else max_cheb_coeff(d)
    C_d = d * d * (1 + 2 * c_d)
    weight = sum(
        abs(c) for alpha, c in f.terms.items() if include_constant or any(alpha)
    )
    return ErrorConstants(
        d=d,
        total_degree=f.degree,
        psi_d=p,
        c_d=c_d,
        C_d=C_d,
        C_f=weight * C_d * math.pi**2 / 2,
    )


def gaussian_variance(x_star: float, r: int) -> float:
    return (math.pi / (r + 1)) ** 2 * (1 - x_star**2 + (3 * x_star**2 - 2) / (r + 1))


def gaussian_overlay(x_star: float, r: int, grid) -> np.ndarray:
    """Tabulate ``delta_KPM(x - x*) = h_r(x) / (pi sqrt(1 - x^2))`` against its Gaussian fit.

    Returns an ``(m, 3)`` array with columns ``x``, ``delta_KPM``, ``gaussian``.
    Grid points at (or beyond) ``+-1`` are dropped with a warning.
    """
    x_star = _check_center(x_star)
    grid = np.asarray(grid, dtype=float).ravel()
    inside = np.abs(grid) < 1.0
    if not inside.all():
        warnings.warn(
            f"dropping {int((~inside).sum())} grid point(s) at |x| >= 1 "
            "where the Chebyshev weight is singular",
            stacklevel=2,
        )
    x = grid[inside]
    h = delta_density_1d(x_star, r).poly
    delta = poly_eval(h, x[:, None]) / (np.pi * np.sqrt(1 - x**2))
    var = gaussian_variance(x_star, r)
    gauss = np.exp(-((x - x_star) ** 2) / (2 * var)) / math.sqrt(2 * math.pi * var)
    return np.column_stack([x, delta, gauss])
