"""Mode normalizations.

Modes are defined up to a complex factor per column; these helpers fix
that factor in one of three useful ways. Eigenvalues are never touched.

* :func:`scale_unit_norm` - unit rank-space vectors, so projected modes
  have norm one.
* :func:`scale_biorthogonal` - adjoint modes rescaled against the
  modes, so the cross Gram matrix becomes the identity.
* :func:`scale_amplitudes` - least-squares coefficients expanding a
  reference snapshot in the modes, stored alongside the decomposition.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from .dmd import DmdDecomposition
from .errors import DimensionError
from .pairs import SnapshotPairs

__all__ = ["scale_unit_norm", "scale_biorthogonal", "scale_amplitudes"]

_EPS = float(np.finfo(np.float64).eps)


def _rescale(dec: DmdDecomposition, factors: np.ndarray, tag: str) -> DmdDecomposition:
    """Multiply each mode column (all families, not adjoints) by a factor."""
    f = factors[None, :]
    return replace(
        dec,
        exact_modes=dec.exact_modes * f,
        projected_modes=dec.projected_modes * f,
        reduced_vectors=dec.reduced_vectors * f,
        amplitudes=dec.amplitudes / factors if dec.amplitudes is not None else None,
        scaling=tag,
    )


def scale_unit_norm(dec: DmdDecomposition) -> DmdDecomposition:
    """Normalize every rank-space eigenvector w to unit 2-norm.

    Projected modes u w then have unit norm as well; exact modes pick
    up whatever norm the lift through y gives them. Stored amplitudes
    are adjusted so any reconstruction they encode is unchanged.
    Already-normalized decompositions pass through with only the tag
    refreshed.
    """
    norms = np.linalg.norm(dec.reduced_vectors, axis=0)
    factors = np.where(norms > 1e3 * _EPS, 1.0 / np.maximum(norms, _EPS), 1.0)
    return _rescale(dec, factors.astype(np.complex128), "unit-norm")


def scale_biorthogonal(dec: DmdDecomposition, *, gap_tol: float = 1e-9) -> DmdDecomposition:
    """Rescale adjoint modes so psi_k* phi_k = 1 for every mode k.

    Modes keep unit rank-space vectors; only the adjoint family is
    rescaled, which is enough because adjoints and modes of distinct
    eigenvalues are automatically orthogonal. Refuses eigenvalue
    clusters tighter than ``gap_tol`` times the largest magnitude,
    where the pairing is not well defined.
    """
    if dec.adjoint_modes is None:
        raise ValueError("decomposition carries no adjoint modes")
    dec = scale_unit_norm(dec)
    lam = dec.eigenvalues
    k = len(lam)
    if k == 0:
        return replace(dec, scaling="biorthogonal")
    scale = max(float(np.max(np.abs(lam))), _EPS)
    for i in range(k):
        for j in range(i + 1, k):
            if abs(lam[i] - lam[j]) <= gap_tol * scale:
                raise ValueError(
                    "eigenvalues {} and {} coincide within gap_tol={:g}; "
                    "biorthogonal pairing is ill-defined".format(lam[i], lam[j], gap_tol)
                )
    phi = dec.modes
    gram_diag = np.einsum("ij,ij->j", dec.adjoint_modes.conj(), phi)
    floor = 1e-10 * np.linalg.norm(phi, axis=0)
    bad = np.abs(gram_diag) <= floor
    if np.any(bad):
        raise ValueError(
            "mode {} is numerically orthogonal to its adjoint; the pair "
            "cannot be normalized".format(int(np.argmax(bad)))
        )
    adjoint = dec.adjoint_modes / gram_diag.conj()[None, :]
    return replace(dec, adjoint_modes=adjoint, scaling="biorthogonal")


def scale_amplitudes(
    dec: DmdDecomposition,
    pairs: SnapshotPairs,
    *,
    method: str = "qr",
    convention: str = "y0",
    vector=None,
) -> DmdDecomposition:
    """Fit per-mode amplitudes to a reference snapshot.

    Convention "y0" solves phi_j lambda_j d_j summed = y_0 (the first
    image snapshot), so that propagating d from step 0 lands on the
    observed step 1; convention "x0" expands the first pre-image
    instead. ``vector`` overrides the reference snapshot.

    Method "qr" solves the least-squares problem through an orthogonal
    factorization of the mode matrix. Method "gram" uses the normal
    equations built from y* y in the pair space, never forming the
    state-size mode matrix; that route squares the conditioning of the
    modes, which is exactly what makes it a useful foil in
    ill-conditioned comparisons.

    The fitted amplitudes and attained residual are stored on the
    returned decomposition; an unreachable reference simply shows up as
    a large residual.
    """
    if pairs.provenance not in ("sequential", "delay-embedded"):
        raise ValueError(
            "amplitude scaling needs time-ordered pairs; got provenance "
            f"{pairs.provenance!r}"
        )
    if convention not in ("y0", "x0"):
        raise ValueError(f"unknown convention {convention!r}")
    if method not in ("qr", "gram"):
        raise ValueError(f"unknown method {method!r}")
    if dec.n_modes == 0:
        raise ValueError("decomposition has no modes to scale")
    has_zero = bool(np.any(np.abs(dec.eigenvalues) == 0.0))
    if has_zero and (convention == "y0" or method == "gram"):
        raise ValueError(
            "amplitudes through the eigenvalue inverse are undefined for "
            "zero eigenvalues; recompute without zero modes (or use "
            "method='qr' with convention='x0')"
        )

    target = pairs.y[:, 0] if convention == "y0" else pairs.x[:, 0]
    if vector is not None:
        target = np.asarray(vector, dtype=np.complex128).reshape(-1)
    if target.shape[0] != dec.exact_modes.shape[0]:
        raise DimensionError(
            f"reference snapshot has {target.shape[0]} entries, modes have "
            f"{dec.exact_modes.shape[0]}"
        )

    lam = dec.eigenvalues
    phi = dec.exact_modes
    if method == "qr":
        if convention == "y0":
            t, _, _, _ = np.linalg.lstsq(phi, target, rcond=None)
            d = t / lam
            residual = float(np.linalg.norm(phi @ (lam * d) - target))
        else:
            d, _, _, _ = np.linalg.lstsq(phi, target, rcond=None)
            residual = float(np.linalg.norm(phi @ d - target))
    else:
        # Normal equations in pair space: phi diag(lam) = y (v / sigma) w,
        # so only m-by-k factors and y* y ever appear.
        svd = dec.svd_of_x
        if pairs.y.shape != (phi.shape[0], svd.v.shape[0]):
            raise DimensionError(
                "pairs do not match the decomposition (expected y of shape "
                f"{(phi.shape[0], svd.v.shape[0])}, got {pairs.y.shape})"
            )
        t_mat = (svd.v / svd.sigma[None, :]) @ dec.reduced_vectors
        gram = t_mat.conj().T @ (pairs.y.conj().T @ pairs.y) @ t_mat
        if convention == "y0":
            rhs = t_mat.conj().T @ (pairs.y.conj().T @ target)
            d = np.linalg.solve(gram, rhs)
            residual = float(np.linalg.norm(pairs.y @ (t_mat @ d) - target))
        else:
            rhs = t_mat.conj().T @ (pairs.y.conj().T @ target)
            d = lam * np.linalg.solve(gram, rhs)
            residual = float(np.linalg.norm(pairs.y @ (t_mat @ (d / lam)) - target))

    return replace(
        dec,
        amplitudes=d,
        amplitude_residual=residual,
        scaling=f"amplitude-{method}",
    )
