"""Benchmark polynomials on [-1, 1]^n, each in Chebyshev and monomial form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .chebyshev import ChebPoly, MonomialPoly
from .errors import UnknownFunctionError


@dataclass(frozen=True)
class TestFunction:
    __test__ = False  # keep pytest from collecting this as a test class

    name: str
    n: int
    cheb: ChebPoly
    monomial: MonomialPoly
    f_min: float
    minimizers: tuple[tuple[float, ...], ...]
    range_hint: tuple[float, float]

    @property
    def key(self) -> tuple[str, int]:
        return (self.name, self.n)


def _e(n: int, **powers: int) -> tuple[int, ...]:
    """Multi-index from keyword exponents ``x1=.., x2=..`` (1-based)."""
    alpha = [0] * n
    for k, v in powers.items():
        alpha[int(k[1:]) - 1] = v
    return tuple(alpha)


def _booth() -> TestFunction:
    cheb = ChebPoly(2, {
        (2, 0): 250, (0, 2): 250, (1, 1): 800, (1, 0): -340, (0, 1): -380, (0, 0): 574,
    })
    mono = MonomialPoly(2, {
        (2, 0): 500, (0, 2): 500, (1, 1): 800, (1, 0): -340, (0, 1): -380, (0, 0): 74,
    })
    return TestFunction("booth", 2, cheb, mono, 0.0, ((0.1, 0.3),), (0.0, 2500.0))


def _matyas() -> TestFunction:
    cheb = ChebPoly(2, {(2, 0): 13, (0, 2): 13, (1, 1): -48, (0, 0): 26})
    mono = MonomialPoly(2, {(2, 0): 26, (0, 2): 26, (1, 1): -48})
    return TestFunction("matyas", 2, cheb, mono, 0.0, ((0.0, 0.0),), (0.0, 100.0))


def _motzkin() -> TestFunction:
    cheb = ChebPoly(2, {
        (4, 0): 4, (4, 2): 4, (2, 4): 4, (0, 4): 4,
        (2, 2): 20, (2, 0): 16, (0, 2): 16, (0, 0): 13,
    })
    mono = MonomialPoly(2, {(4, 2): 64, (2, 4): 64, (2, 2): -48, (0, 0): 1})
    mins = tuple((sx * 0.5, sy * 0.5) for sx in (1, -1) for sy in (1, -1))
    return TestFunction("motzkin", 2, cheb, mono, 0.0, mins, (0.0, 80.0))


def _three_hump() -> TestFunction:
    cheb = ChebPoly(2, {
        (6, 0): 5**6 / 192, (4, 0): 1625 / 4, (2, 0): 58725 / 64,
        (1, 1): 25, (0, 2): 12.5, (0, 0): 14525 / 24,
    })
    mono = MonomialPoly(2, {
        (6, 0): 5**6 / 6, (4, 0): -(5**4) * 1.05, (2, 0): 50, (1, 1): 25, (0, 2): 25,
    })
    return TestFunction("three-hump", 2, cheb, mono, 0.0, ((0.0, 0.0),), (0.0, 2000.0))


@lru_cache(maxsize=None)
def styblinski_tang_argmin() -> float:
    """Minimiser of ``312.5 y^4 - 200 y^2 + 12.5 y`` on [-1, 1] by Newton's method."""
    y = -0.58
    for _ in range(50):
        step = (1250 * y**3 - 400 * y + 12.5) / (3750 * y**2 - 400)
        y -= step
        if abs(step) < 1e-16:
            break
    return y


def _styblinski_tang(n: int) -> TestFunction:
    cheb_terms: dict[tuple[int, ...], float] = {(0,) * n: 275 / 16 * n}
    mono_terms: dict[tuple[int, ...], float] = {}
    for j in range(1, n + 1):
        cheb_terms[_e(n, **{f"x{j}": 4})] = 625 / 16
        cheb_terms[_e(n, **{f"x{j}": 2})] = 225 / 4
        cheb_terms[_e(n, **{f"x{j}": 1})] = 25 / 2
        mono_terms[_e(n, **{f"x{j}": 4})] = 312.5
        mono_terms[_e(n, **{f"x{j}": 2})] = -200
        mono_terms[_e(n, **{f"x{j}": 1})] = 12.5
    y = styblinski_tang_argmin()
    f1 = 312.5 * y**4 - 200 * y**2 + 12.5 * y
    return TestFunction(
        "styblinski-tang", n, ChebPoly(n, cheb_terms), MonomialPoly(n, mono_terms),
        n * f1, ((y,) * n,), (-35.0 * n, 100.0 * n),
    )


def _rosenbrock(n: int) -> TestFunction:
    a = 2.048
    cheb_terms: dict[tuple[int, ...], float] = {}
    mono_terms: dict[tuple[int, ...], float] = {}

    def add(terms, alpha, c):
        terms[alpha] = terms.get(alpha, 0.0) + c

    for j in range(1, n):
        xj, xk = f"x{j}", f"x{j + 1}"
        add(cheb_terms, _e(n, **{xj: 4}), 12.5 * a**4)
        add(cheb_terms, _e(n, **{xj: 2, xk: 1}), -100 * a**3)
        add(cheb_terms, _e(n, **{xj: 2}), (0.5 + 50 * a**2) * a**2)
        add(cheb_terms, _e(n, **{xk: 2}), 50 * a**2)
        add(cheb_terms, _e(n, **{xj: 1}), -4.096)
        add(cheb_terms, _e(n, **{xk: 1}), -100 * a**3)
        add(cheb_terms, (0,) * n, 1 + a**2 * (37.5 * a**2 + 50.5))
        # 100 (a x_k - a^2 x_j^2)^2 + (a x_j - 1)^2
        add(mono_terms, _e(n, **{xk: 2}), 100 * a**2)
        add(mono_terms, _e(n, **{xj: 2, xk: 1}), -200 * a**3)
        add(mono_terms, _e(n, **{xj: 4}), 100 * a**4)
        add(mono_terms, _e(n, **{xj: 2}), a**2)
        add(mono_terms, _e(n, **{xj: 1}), -2 * a)
        add(mono_terms, (0,) * n, 1.0)
    return TestFunction(
        "rosenbrock", n, ChebPoly(n, cheb_terms), MonomialPoly(n, mono_terms),
        0.0, ((1 / a,) * n,), (0.0, 4000.0 * (n - 1)),
    )


@lru_cache(maxsize=None)
def catalog() -> tuple[TestFunction, ...]:
    return (
        _booth(),
        _matyas(),
        _motzkin(),
        _three_hump(),
        _styblinski_tang(2),
        _styblinski_tang(3),
        _rosenbrock(2),
        _rosenbrock(3),
    )


_ALIASES = {
    "three-hump-camel": "three-hump",
    "threehump": "three-hump",
    "camel": "three-hump",
    "styblinski": "styblinski-tang",
    "styblinskitang": "styblinski-tang",
}


def normalize_name(name: str) -> str:
    key = name.strip().lower().replace("_", "-").replace(" ", "-")
    return _ALIASES.get(key, key)


def lookup(name: str, n: int) -> TestFunction:
    key = (normalize_name(name), int(n))
    for tf in catalog():
        if tf.key == key:
            return tf
    valid = ", ".join(f"{nm} (n={dim})" for nm, dim in (tf.key for tf in catalog()))
    raise UnknownFunctionError(f"no test function {name!r} with n={n}; valid: {valid}")
