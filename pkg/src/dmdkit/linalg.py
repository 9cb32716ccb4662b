"""Dense linear-algebra kernels with explicit rank and residual policies.

Everything downstream funnels through these four entry points, so the
rank threshold and the eigenpair residual contract are enforced once,
here. Arrays are carried as complex128 throughout; real input is cast on
the way in.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionError, EigensolverError, RankZeroError

__all__ = [
    "ReducedSvd",
    "EigenPairs",
    "reduced_svd",
    "orthonormal_basis",
    "eig_dense",
    "pseudoinverse_apply",
]

_EPS = float(np.finfo(np.float64).eps)


def _as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return ``a`` as a finite 2-D complex128 array."""
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size and not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite entries")
    return np.ascontiguousarray(arr, dtype=np.complex128)


@dataclass(frozen=True)
class ReducedSvd:
    """Rank-truncated SVD ``x ~= u @ diag(sigma) @ v.conj().T``.

    Attributes:
        u: (n, r) orthonormal columns.
        sigma: (r,) positive singular values, descending.
        v: (m, r) orthonormal columns.
        rank: numerical rank r (== len(sigma)).
        truncation_tol: absolute threshold the singular values were cut at.
    """

    u: np.ndarray
    sigma: np.ndarray
    v: np.ndarray
    rank: int
    truncation_tol: float


@dataclass(frozen=True)
class EigenPairs:
    """Eigenvalues with unit-norm right (and optionally left) eigenvectors.

    Right vectors satisfy ``m @ vectors[:, j] == values[j] * vectors[:, j]``;
    left vectors satisfy ``left_vectors[:, j].conj().T @ m ==
    values[j] * left_vectors[:, j].conj().T``, index-paired with the right
    ones. No ordering is imposed here; callers sort as they see fit.
    """

    values: np.ndarray
    vectors: np.ndarray
    left_vectors: np.ndarray | None = None


def _svd_threshold(shape, sigma, rtol, atol) -> float:
    """Absolute cutoff for singular values.

    Default is max(n, m) * eps * sigma_1. A user rtol/atol replaces the
    default; when both are given the looser (larger) cutoff wins.
    """
    top = float(sigma[0]) if len(sigma) else 0.0
    if rtol is None and atol is None:
        return max(shape) * _EPS * top
    cut = 0.0
    if rtol is not None:
        if rtol < 0:
            raise ValueError("rtol must be nonnegative")
        cut = max(cut, float(rtol) * top)
    if atol is not None:
        if atol < 0:
            raise ValueError("atol must be nonnegative")
        cut = max(cut, float(atol))
    return cut


def reduced_svd(
    x,
    *,
    rtol: float | None = None,
    atol: float | None = None,
    method: str = "direct",
    gram_tol: float | None = None,
) -> ReducedSvd:
    """Compact SVD truncated at the numerical rank.

    Args:
        x: (n, m) matrix, real or complex.
        rtol: relative cutoff (times sigma_1) replacing the default
            max(n, m) * eps * sigma_1.
        atol: absolute cutoff; with rtol, the larger of the two applies.
        method: "direct" (LAPACK on x) or "gram" (method of snapshots:
            eigendecompose x* x, useful when n >> m). The gram path
            squares the conditioning, so small singular values are less
            trustworthy; its cutoff ``gram_tol`` acts on the Gram
            eigenvalue scale (sigma^2).
        gram_tol: relative cutoff for the gram path, default
            max(n, m) * eps.

    Raises:
        RankZeroError: every singular value fell below the cutoff.
    """
    xm = _as_matrix(x, "x")
    n, m = xm.shape
    if n == 0 or m == 0:
        raise DimensionError("x must have at least one row and one column")

    if method == "direct":
        u, s, vh = np.linalg.svd(xm, full_matrices=False)
        cut = _svd_threshold((n, m), s, rtol, atol)
        r = int(np.sum(s > cut))
        if r == 0:
            raise RankZeroError(
                "matrix has numerical rank zero at threshold {:.3e}".format(cut)
            )
        return ReducedSvd(
            u=u[:, :r],
            sigma=s[:r].astype(np.float64),
            v=vh[:r, :].conj().T,
            rank=r,
            truncation_tol=cut,
        )

    if method == "gram":
        if rtol is not None or atol is not None:
            raise ValueError("gram method uses gram_tol, not rtol/atol")
        gram = xm.conj().T @ xm
        evals, evecs = np.linalg.eigh(gram)
        evals = evals[::-1]
        evecs = evecs[:, ::-1]
        rel = max(n, m) * _EPS if gram_tol is None else float(gram_tol)
        top = float(evals[0]) if len(evals) else 0.0
        cut_sq = rel * top
        r = int(np.sum(evals > max(cut_sq, 0.0)))
        if r == 0 or top <= 0.0:
            raise RankZeroError(
                "matrix has numerical rank zero on the Gram scale"
            )
        sigma = np.sqrt(evals[:r])
        v = evecs[:, :r]
        u = (xm @ v) / sigma
        return ReducedSvd(
            u=u,
            sigma=sigma.astype(np.float64),
            v=v,
            rank=r,
            truncation_tol=float(np.sqrt(cut_sq)) if cut_sq > 0 else 0.0,
        )

    raise ValueError(f"unknown svd method {method!r}")


def orthonormal_basis(cols, *, rtol: float | None = None, atol: float | None = None) -> np.ndarray:
    """Orthonormal basis for the column space of ``cols``.

    Returned matrix has one column per numerical-rank dimension, using
    the same cutoff policy as :func:`reduced_svd`.
    """
    return reduced_svd(cols, rtol=rtol, atol=atol).u


def eig_dense(m, *, want_left: bool = False, eig_tol: float = 1e-9) -> EigenPairs:
    """Dense eigendecomposition with a verified residual bound.

    Every returned right pair satisfies
    ``norm(m @ w - lam * w) <= eig_tol * norm(m, 'fro')`` for unit w,
    and left pairs the transposed analogue; violation raises
    :class:`EigensolverError` rather than returning silently bad vectors.
    """
    mm = _as_matrix(m, "m")
    if mm.shape[0] != mm.shape[1]:
        raise DimensionError(f"eig_dense needs a square matrix, got {mm.shape}")
    if mm.shape[0] == 0:
        raise DimensionError("eig_dense needs a nonempty matrix")

    if want_left:
        values, vl, vr = scipy.linalg.eig(mm, left=True, right=True)
    else:
        values, vr = scipy.linalg.eig(mm)
        vl = None

    vr = vr / np.linalg.norm(vr, axis=0, keepdims=True)
    scale = float(np.linalg.norm(mm))
    resid = np.linalg.norm(mm @ vr - vr * values[None, :], axis=0)
    if np.any(resid > eig_tol * max(scale, _EPS)):
        raise EigensolverError(
            "right eigenpair residual {:.3e} exceeds {:.3e}".format(
                float(resid.max()), eig_tol * scale
            )
        )
    if vl is not None:
        vl = vl / np.linalg.norm(vl, axis=0, keepdims=True)
        lres = np.linalg.norm(vl.conj().T @ mm - values[:, None] * vl.conj().T, axis=1)
        if np.any(lres > eig_tol * max(scale, _EPS)):
            raise EigensolverError(
                "left eigenpair residual {:.3e} exceeds {:.3e}".format(
                    float(lres.max()), eig_tol * scale
                )
            )
    return EigenPairs(values=values, vectors=vr, left_vectors=vl)


def pseudoinverse_apply(svd: ReducedSvd, rhs) -> np.ndarray:
    """Apply the pseudoinverse encoded by ``svd`` to ``rhs``.

    Computes ``v @ diag(1/sigma) @ u* @ rhs`` factor by factor; the
    full pseudoinverse matrix is never formed.
    """
    b = np.asarray(rhs, dtype=np.complex128)
    squeeze = b.ndim == 1
    if squeeze:
        b = b[:, None]
    if b.ndim != 2 or b.shape[0] != svd.u.shape[0]:
        raise DimensionError(
            f"rhs has {b.shape[0] if b.ndim >= 1 else '?'} rows, expected {svd.u.shape[0]}"
        )
    out = svd.v @ ((svd.u.conj().T @ b) / svd.sigma[:, None])
    return out[:, 0] if squeeze else out
