"""Index sets and moment-matrix pencils for the box hierarchy.

For a subset ``I`` of the coordinates and a degree ``r`` the pencil is

    A[b, c] = <f,   T_b T_c prod_{i in I} (1 - x_i^2)>
    B[b, c] = <T_0, T_b T_c prod_{i in I} (1 - x_i^2)>

indexed by multi-indices ``|b| <= (r - 2|I|) // 2``. Every entry factorises
over coordinates into univariate triple-product integrals, which have closed
forms; assembly is a table lookup followed by a product over coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .chebyshev import ChebPoly, MultiIndex, graded_lex_key


def subset_members(mask: int, n: int) -> tuple[int, ...]:
    return tuple(i for i in range(n) if mask >> i & 1)


def subset_label(mask: int, n: int) -> str:
    """1-based coordinate list, e.g. ``"{1,3}"``; ``"{}"`` for the empty set."""
    return "{" + ",".join(str(i + 1) for i in subset_members(mask, n)) + "}"


@dataclass(frozen=True)
class IndexSet:
    n: int
    subset: int
    r: int
    members: tuple[MultiIndex, ...]

    @property
    def half_degree(self) -> int:
        return (self.r - 2 * bin(self.subset).count("1")) // 2

    def __len__(self) -> int:
        return len(self.members)

    def as_array(self) -> np.ndarray:
        return np.array(self.members, dtype=int).reshape(len(self.members), self.n)


@dataclass(frozen=True)
class MomentPencil:
    subset: int
    indices: IndexSet
    A: np.ndarray
    B: np.ndarray


def index_set(n: int, subset: int, r: int) -> IndexSet:
    """Multi-indices ``beta`` with ``|beta| <= (r - 2|I|) // 2``, graded-lex ordered."""
    size = bin(subset).count("1")
    if r < 2 * size:
        return IndexSet(n, subset, r, ())
    k = (r - 2 * size) // 2
    members = sorted(
        (b for b in itertools.product(range(k + 1), repeat=n) if sum(b) <= k),
        key=graded_lex_key,
    )
    return IndexSet(n, subset, r, tuple(members))


def triple_product_mu(a: int, b: int, c: int) -> float:
    """``int T_a T_b T_c dmu`` on ``[-1, 1]``."""
    d = abs(a - b)
    return 0.25 * ((a + b + c == 0) + (a + b - c == 0) + (d + c == 0) + (d - c == 0))


def triple_product_mu_weighted(a: int, b: int, c: int) -> float:
    """``int T_a T_b T_c (1 - x^2) dmu`` on ``[-1, 1]``, via ``1 - x^2 = (T_0 - T_2) / 2``."""
    d = abs(a - b)
    s = abs(a + b - c)
    t = abs(d - c)
    plain = (a + b + c == 0) + (s == 0) + (d + c == 0) + (t == 0)
    shifted = (a + b + c - 2 == 0) + (s - 2 == 0) + (d + c - 2 == 0) + (t - 2 == 0)
    return plain / 8 - shifted / 16


def lebesgue_moment(a: int) -> float:
    """``int_{-1}^{1} T_a(x) dx``."""
    if a % 2:
        return 0.0
    return 2.0 / (1 - a * a)


def lebesgue_triple(a: int, b: int, c: int) -> float:
    """``int_{-1}^{1} T_a T_b T_c dx`` by linearising the product."""
    d = abs(a - b)
    return 0.25 * (
        lebesgue_moment(a + b + c)
        + lebesgue_moment(abs(a + b - c))
        + lebesgue_moment(d + c)
        + lebesgue_moment(abs(d - c))
    )


_KERNELS = {
    "mu": triple_product_mu,
    "mu_weighted": triple_product_mu_weighted,
    "lebesgue": lebesgue_triple,
}


@lru_cache(maxsize=64)
def _table(kind: str, amax: int, kmax: int) -> np.ndarray:
    fn = _KERNELS[kind]
    tab = np.empty((amax + 1, kmax + 1, kmax + 1))
    for a in range(amax + 1):
        for b in range(kmax + 1):
            for c in range(b, kmax + 1):
                tab[a, b, c] = tab[a, c, b] = fn(a, b, c)
    tab.setflags(write=False)
    return tab


def _gram(f: ChebPoly, idx: IndexSet, kinds: list[str]) -> np.ndarray:
    """``sum_alpha f_alpha prod_i K_i(alpha_i, beta_i, gamma_i)`` over the index set."""
    beta = idx.as_array()
    m = len(idx)
    amax = max(f.max_degrees()) if f.terms else 0
    kmax = int(beta.max()) if m else 0
    tabs = {kind: _table(kind, amax, kmax) for kind in set(kinds)}
    out = np.zeros((m, m))
    for alpha, coef in f.terms.items():
        block = np.full((m, m), coef)
        for i, a in enumerate(alpha):
            col = beta[:, i]
            block *= tabs[kinds[i]][a][col[:, None], col[None, :]]
        out += block
    return out


def assemble_pencil(f: ChebPoly, subset: int, r: int) -> MomentPencil | None:
    """Pencil ``(A^I, B^I)`` under ``dmu``; ``None`` when ``r < 2|I|``."""
    idx = index_set(f.n, subset, r)
    if not idx.members:
        return None
    kinds = ["mu_weighted" if subset >> i & 1 else "mu" for i in range(f.n)]
    A = _gram(f, idx, kinds)
    B = _gram(ChebPoly.constant(f.n), idx, kinds)
    return MomentPencil(subset=subset, indices=idx, A=A, B=B)


def assemble_pencil_lebesgue(f: ChebPoly, r: int) -> MomentPencil:
    """Single pencil for SOS densities under the Lebesgue measure on the box."""
    if r < 0:
        raise ValueError("r must be >= 0")
    idx = index_set(f.n, 0, r)
    kinds = ["lebesgue"] * f.n
    A = _gram(f, idx, kinds)
    B = _gram(ChebPoly.constant(f.n), idx, kinds)
    return MomentPencil(subset=0, indices=idx, A=A, B=B)
