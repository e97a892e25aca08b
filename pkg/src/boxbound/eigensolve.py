"""Upper bounds on ``min f`` over the box from generalized eigenvalue problems.

The degree-``r`` bound is the smallest generalized eigenvalue of ``(A^I, B^I)``
minimised over all coordinate subsets ``I``; the minimising eigenvector gives
an optimal density ``(sum_b x_b T_b)^2 prod_{i in I} (1 - x_i^2)``.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh, solve_triangular
from scipy.linalg.lapack import dpotrf

from .chebyshev import ChebPoly, poly_eval
from .errors import DefinitenessError, PreconditionError
from .moments import (
    IndexSet,
    MomentPencil,
    assemble_pencil,
    assemble_pencil_lebesgue,
    subset_members,
)

#: Cholesky pivots ``L_jj^2`` below this fraction of ``max diag(B)`` are rejected.
PIVOT_RTOL = 1e-12
#: Subset eigenvalues this close are treated as tied.
TIE_TOL = 1e-12


@dataclass(frozen=True)
class BoundResult:
    """Outcome of one bound computation.

    ``per_subset`` maps subset bitmasks to their smallest eigenvalue. The
    ``density`` is normalised to unit mass under the bound's reference
    measure (``dmu`` for the Schmudgen bound, ``dx`` for the Lebesgue one).
    """

    r: int
    f_r: float
    winner: int
    per_subset: dict[int, float]
    eigvec: np.ndarray
    indices: IndexSet
    density: ChebPoly | None = field(default=None, compare=False)
    measure: str = "mu"


def worker_count() -> int:
    env = os.environ.get("BOXBOUND_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def min_generalized_eigenvalue(A: np.ndarray, B: np.ndarray) -> tuple[float, np.ndarray]:
    """Smallest ``lam`` with ``A x = lam B x``; ``x`` is returned with ``x^T B x = 1``.

    ``B = L L^T`` is factored and the symmetric problem for ``L^-1 A L^-T`` is
    solved. Raises :class:`DefinitenessError` if ``B`` is not positive definite
    or a pivot is negligibly small.
    """
    A = np.asarray(A, dtype=float)
    B = np.asarray(B, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape != B.shape or A.shape[0] == 0:
        raise ValueError(f"need square matrices of equal order >= 1, got {A.shape} and {B.shape}")
    L, info = dpotrf(B, lower=1, clean=1)
    if info > 0:
        raise DefinitenessError(f"B is not positive definite (pivot {info - 1})", pivot=info - 1)
    if info < 0:
        raise ValueError(f"dpotrf rejected argument {-info}")
    pivots = np.diag(L) ** 2
    floor = PIVOT_RTOL * np.max(np.diag(B))
    if pivots.min() < floor:
        j = int(np.argmin(pivots))
        raise DefinitenessError(f"B is ill-conditioned (pivot {j} = {pivots[j]:.3e})", pivot=j)
    C = solve_triangular(L, A, lower=True)
    C = solve_triangular(L, C.T, lower=True)
    C = (C + C.T) / 2
    w, v = eigh(C, subset_by_index=[0, 0])
    x = solve_triangular(L, v[:, 0], lower=True, trans="T")
    return float(w[0]), x


def _check_inputs(f: ChebPoly, r: int) -> None:
    if r < 2:
        raise PreconditionError(f"r must be >= 2, got {r}")
    if f.is_constant():
        raise PreconditionError("f must be nonconstant")


def _solve(pencil: MomentPencil) -> tuple[float, np.ndarray]:
    try:
        return min_generalized_eigenvalue(pencil.A, pencil.B)
    except DefinitenessError as err:
        raise DefinitenessError(
            f"subset {pencil.subset:#b}: {err}", pivot=err.pivot, subset=pencil.subset
        ) from err


def density_from_eigvec(x: np.ndarray, indices: IndexSet, subset: int) -> ChebPoly:
    """``(sum_b x_b T_b)^2 prod_{i in I} (1 - x_i^2)`` as a Chebyshev polynomial."""
    n = indices.n
    root = ChebPoly(n, dict(zip(indices.members, x)))
    h = root * root
    for i in subset_members(subset, n):
        e2 = [0] * n
        e2[i] = 2
        # 1 - x_i^2 = (T_0 - T_2(x_i)) / 2
        h = h * ChebPoly(n, {(0,) * n: 0.5, tuple(e2): -0.5})
    return h


def schmudgen_bound(
    f: ChebPoly, r: int, *, workers: int | None = None, with_density: bool = True
) -> BoundResult:
    """Degree-``r`` bound over Schmudgen-type densities with respect to ``dmu``."""
    _check_inputs(f, r)
    pencils = [
        p for p in (assemble_pencil(f, mask, r) for mask in range(2**f.n)) if p is not None
    ]
    workers = workers or worker_count()
    if workers > 1 and len(pencils) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            solved = list(pool.map(_solve, pencils))
    else:
        solved = [_solve(p) for p in pencils]

    per_subset = {p.subset: lam for p, (lam, _) in zip(pencils, solved)}
    best = min(lam for lam, _ in solved)
    # pencils are in ascending bitmask order, so the first near-tie wins
    k = next(i for i, (lam, _) in enumerate(solved) if lam <= best + TIE_TOL)
    winner = pencils[k]
    x = solved[k][1]
    density = density_from_eigvec(x, winner.indices, winner.subset) if with_density else None
    return BoundResult(
        r=r,
        f_r=solved[k][0],
        winner=winner.subset,
        per_subset=per_subset,
        eigvec=x,
        indices=winner.indices,
        density=density,
    )


def sos_lebesgue_bound(f: ChebPoly, r: int, *, with_density: bool = True) -> BoundResult:
    """Degree-``r`` bound over sum-of-squares densities with respect to ``dx``."""
    _check_inputs(f, r)
    pencil = assemble_pencil_lebesgue(f, r)
    lam, x = _solve(pencil)
    density = density_from_eigvec(x, pencil.indices, 0) if with_density else None
    return BoundResult(
        r=r,
        f_r=lam,
        winner=0,
        per_subset={0: lam},
        eigvec=x,
        indices=pencil.indices,
        density=density,
        measure="lebesgue",
    )


def density_eval_grid(result: BoundResult, grid) -> np.ndarray:
    """Evaluate the optimal density on a lattice.

    ``grid`` is either a point count ``N`` (giving ``N`` equispaced values per
    coordinate on ``[-1, 1]``) or an explicit ``(m, n)`` array of points.
    Returns ``(m, n + 1)`` rows ``(point, h*(point))``.
    """
    if result.density is None:
        raise ValueError("result carries no density; recompute with with_density=True")
    n = result.density.n
    if np.isscalar(grid):
        axis = np.linspace(-1.0, 1.0, int(grid))
        pts = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    else:
        pts = np.asarray(grid, dtype=float).reshape(-1, n)
    vals = poly_eval(result.density, pts)
    return np.column_stack([pts, vals])
