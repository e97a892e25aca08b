"""Sparse multivariate polynomials in the tensor Chebyshev basis.

A polynomial is stored as a map from multi-indices ``alpha`` (tuples of
nonnegative ints) to coefficients of ``T_alpha(x) = prod_i T_{alpha_i}(x_i)``.
Inner products are taken with respect to the product Chebyshev probability
measure ``dmu = prod_i dx_i / (pi sqrt(1 - x_i^2))`` on ``[-1, 1]^n``.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Mapping
from types import MappingProxyType
from typing import Union

import numpy as np

MultiIndex = tuple[int, ...]

#: Coefficients smaller than this in absolute value are dropped.
ZERO_TOL = 1e-14


def total_degree(alpha: MultiIndex) -> int:
    return sum(alpha)


def support(alpha: MultiIndex) -> frozenset[int]:
    """Coordinates where ``alpha`` is nonzero."""
    return frozenset(i for i, a in enumerate(alpha) if a != 0)


def graded_lex_key(alpha: MultiIndex) -> tuple:
    """Sort key: total degree first, then lexicographic."""
    return (sum(alpha), alpha)


def _check_index(alpha: Iterable[int], n: int) -> MultiIndex:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != n:
        raise ValueError(f"multi-index {alpha} has length {len(alpha)}, expected {n}")
    if any(a < 0 for a in alpha):
        raise ValueError(f"multi-index {alpha} has a negative entry")
    return alpha


class _SparsePoly:
    """Immutable canonical sparse map MultiIndex -> float."""

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Mapping[Iterable[int], float] | None = None):
        if n < 1:
            raise ValueError("dimension must be >= 1")
        acc: dict[MultiIndex, float] = {}
        for alpha, c in (terms or {}).items():
            alpha = _check_index(alpha, n)
            acc[alpha] = acc.get(alpha, 0.0) + float(c)
        canon = {a: acc[a] for a in sorted(acc, key=graded_lex_key) if abs(acc[a]) >= ZERO_TOL}
        self._n = n
        self._terms = MappingProxyType(canon)

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[MultiIndex, float]:
        return self._terms

    @property
    def degree(self) -> int:
        """Maximum total degree; -1 for the zero polynomial."""
        return max((sum(a) for a in self._terms), default=-1)

    def max_degrees(self) -> MultiIndex:
        """Per-coordinate maximum degree."""
        if not self._terms:
            return (0,) * self._n
        return tuple(int(v) for v in np.max(np.array(list(self._terms)), axis=0))

    def coeff(self, alpha: Iterable[int]) -> float:
        return self._terms.get(tuple(alpha), 0.0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(a) == 0 for a in self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self._n == other._n and dict(self._terms) == dict(other._terms)

    def __hash__(self):
        return hash((type(self).__name__, self._n, tuple(self._terms.items())))

    def __repr__(self) -> str:
        body = ", ".join(f"{a}: {c:.17g}" for a, c in self._terms.items())
        return f"{type(self).__name__}(n={self._n}, {{{body}}})"

    def _same_dim(self, other: _SparsePoly) -> None:
        if other.n != self._n:
            raise ValueError(f"dimension mismatch: {self._n} vs {other.n}")

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = type(self).constant(self._n, other)
        if type(other) is not type(self):
            return NotImplemented
        self._same_dim(other)
        acc = dict(self._terms)
        for a, c in other._terms.items():
            acc[a] = acc.get(a, 0.0) + c
        return type(self)(self._n, acc)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self._n, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s: float):
        return type(self)(self._n, {a: s * c for a, c in self._terms.items()})

    @classmethod
    def constant(cls, n: int, c: float = 1.0):
        return cls(n, {(0,) * n: c})

    @classmethod
    def basis(cls, alpha: Iterable[int], c: float = 1.0):
        alpha = tuple(alpha)
        return cls(len(alpha), {alpha: c})


class MonomialPoly(_SparsePoly):
    """Polynomial in the standard monomial basis ``x^alpha``."""

    __slots__ = ()

    def __call__(self, x) -> float | np.ndarray:
        return monomial_eval(self, x)


class ChebPoly(_SparsePoly):
    """Polynomial in the tensor Chebyshev basis ``T_alpha``."""

    __slots__ = ()

    def __call__(self, x) -> float | np.ndarray:
        return poly_eval(self, x)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return self.scale(float(other))
        if not isinstance(other, ChebPoly):
            return NotImplemented
        self._same_dim(other)
        acc: dict[MultiIndex, float] = {}
        n = self._n
        for a, ca in self._terms.items():
            for b, cb in other._terms.items():
                # T_a T_b = (T_{a+b} + T_{|a-b|}) / 2 per coordinate
                choices = [
                    (ai + bi,) if ai == 0 or bi == 0 else (ai + bi, abs(ai - bi))
                    for ai, bi in zip(a, b)
                ]
                w = ca * cb * 0.5 ** sum(1 for ch in choices if len(ch) == 2)
                for key in itertools.product(*choices):
                    acc[key] = acc.get(key, 0.0) + w
        return ChebPoly(n, acc)

    __rmul__ = __mul__


def cheb_eval_1d(k: int, x):
    """``T_k(x)`` by the three-term recurrence. Works elementwise on arrays."""
    if k < 0:
        raise ValueError("k must be >= 0")
    x = np.asarray(x, dtype=float) if not isinstance(x, (int, float)) else float(x)
    t_prev, t = 1.0 + 0 * x, x
    if k == 0:
        return t_prev
    for _ in range(k - 1):
        t_prev, t = t, 2 * x * t - t_prev
    return t


def chebu_eval_1d(k: int, x):
    """``U_k(x)`` by the three-term recurrence, with ``U_{-1} = 0``."""
    if k < -1:
        raise ValueError("k must be >= -1")
    x = np.asarray(x, dtype=float) if not isinstance(x, (int, float)) else float(x)
    u_prev, u = 0.0 * x, 1.0 + 0 * x
    if k == -1:
        return u_prev
    for _ in range(k):
        u_prev, u = u, 2 * x * u - u_prev
    return u


def cheb_table(kmax: int, x: np.ndarray) -> np.ndarray:
    """Rows ``T_0(x) .. T_kmax(x)``; shape ``(kmax + 1,) + x.shape``."""
    x = np.asarray(x, dtype=float)
    out = np.empty((kmax + 1,) + x.shape)
    out[0] = 1.0
    if kmax >= 1:
        out[1] = x
    for k in range(2, kmax + 1):
        out[k] = 2 * x * out[k - 1] - out[k - 2]
    return out


def _as_points(x, n: int) -> tuple[np.ndarray, bool]:
    pts = np.asarray(x, dtype=float)
    single = pts.ndim <= 1
    pts = np.atleast_2d(pts) if pts.ndim else pts.reshape(1, 1)
    if pts.shape[-1] != n:
        raise ValueError(f"point dimension {pts.shape[-1]} does not match polynomial dimension {n}")
    return pts, single


def poly_eval(f: ChebPoly, x):
    """Evaluate ``f`` at one point (shape ``(n,)``) or many (shape ``(m, n)``)."""
    pts, single = _as_points(x, f.n)
    out = np.zeros(pts.shape[0])
    if f.terms:
        maxdeg = f.max_degrees()
        tabs = [cheb_table(maxdeg[i], pts[:, i]) for i in range(f.n)]
        for alpha, c in f.terms.items():
            term = np.full(pts.shape[0], c)
            for i, a in enumerate(alpha):
                if a:
                    term = term * tabs[i][a]
            out += term
    return float(out[0]) if single else out


def monomial_eval(p: MonomialPoly, x):
    pts, single = _as_points(x, p.n)
    out = np.zeros(pts.shape[0])
    for alpha, c in p.terms.items():
        out += c * np.prod(pts ** np.array(alpha), axis=1)
    return float(out[0]) if single else out


def _power_in_cheb(j: int) -> dict[int, float]:
    """Chebyshev coefficients of ``x^j``, using ``x T_k = (T_{k+1} + T_{|k-1|}) / 2``."""
    coeffs = {0: 1.0}
    for _ in range(j):
        nxt: dict[int, float] = {}
        for k, c in coeffs.items():
            nxt[k + 1] = nxt.get(k + 1, 0.0) + 0.5 * c
            nxt[abs(k - 1)] = nxt.get(abs(k - 1), 0.0) + 0.5 * c
        coeffs = nxt
    return coeffs


def monomial_to_cheb(p: MonomialPoly) -> ChebPoly:
    """Exact change of basis from monomials to tensor Chebyshev polynomials."""
    acc: dict[MultiIndex, float] = {}
    for alpha, c in p.terms.items():
        factors = [list(_power_in_cheb(a).items()) for a in alpha]
        for combo in itertools.product(*factors):
            key = tuple(k for k, _ in combo)
            w = c
            for _, cw in combo:
                w *= cw
            acc[key] = acc.get(key, 0.0) + w
    return ChebPoly(p.n, acc)


def inner_product_mu(f: ChebPoly, g: ChebPoly) -> float:
    """``<f, g>`` under ``dmu`` via orthogonality: ``<T_a, T_b> = 2^-|supp a| delta_ab``."""
    if f.n != g.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {g.n}")
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    total = 0.0
    for alpha, c in small.terms.items():
        other = big.terms.get(alpha)
        if other is not None:
            total += c * other * 0.5 ** len(support(alpha))
    return total


def chebyshev_nodes(N: int) -> np.ndarray:
    """Gauss-Chebyshev nodes ``cos((2j - 1) pi / (2N))``, ``j = 1..N``."""
    j = np.arange(1, N + 1)
    return np.cos((2 * j - 1) * np.pi / (2 * N))


Integrand = Union[ChebPoly, Callable[[np.ndarray], np.ndarray]]


def quadrature_mu(f: Integrand, n: int, nodes_per_dim: int | None = None) -> float:
    """Tensor Gauss-Chebyshev rule for ``int f dmu`` over ``[-1, 1]^n``.

    Exact when every per-coordinate degree of ``f`` is below ``2 * nodes_per_dim``.
    ``f`` is a :class:`ChebPoly` or a vectorised callable mapping an ``(m, n)``
    array of points to ``m`` values. The node count defaults to the maximum
    per-coordinate degree plus one and is required for plain callables.
    """
    if nodes_per_dim is None:
        if not isinstance(f, ChebPoly):
            raise ValueError("nodes_per_dim is required for callable integrands")
        nodes_per_dim = max(f.max_degrees()) + 1
    if nodes_per_dim < 1:
        raise ValueError("nodes_per_dim must be >= 1")
    nodes = chebyshev_nodes(nodes_per_dim)
    grid = np.stack(np.meshgrid(*([nodes] * n), indexing="ij"), axis=-1).reshape(-1, n)
    vals = poly_eval(f, grid) if isinstance(f, ChebPoly) else np.asarray(f(grid), dtype=float)
    return float(np.mean(vals))
