"""Mode decompositions of the best-fit linear operator A = y x^+.

Four routes to the same eigenvalues:

* :func:`exact_dmd` - eigenvectors of A itself, built in the reduced
  space and lifted through y (modes live in range(y)).
* :func:`projected_dmd` - eigenvectors of the projection of A onto
  range(x); cheaper lift, modes live in range(x).
* :func:`exact_dmd_qr` - works in an orthonormal basis of [x y], where
  the restriction of A is similar to A on its range.
* :func:`exact_dmd_sequential` - specialization for a single time
  series; augments range(x) with the one direction the last snapshot
  adds, so exact modes cost one extra basis vector.

The operator A is never formed at state dimension; everything runs
through the rank-r SVD of x.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError
from .linalg import ReducedSvd, eig_dense, orthonormal_basis, reduced_svd
from .pairs import SnapshotPairs, pairs_from_sequence, snapshot_matrix

__all__ = [
    "ReducedOperator",
    "DmdDecomposition",
    "ConsistencyReport",
    "Reconstruction",
    "SpectrumPoint",
    "reduced_operator",
    "exact_dmd",
    "projected_dmd",
    "exact_dmd_qr",
    "exact_dmd_sequential",
    "adjoint_modes",
    "linear_consistency",
    "reconstruct",
    "propagate",
    "spectrum",
]

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class ReducedOperator:
    """The operator A compressed to the rank-r column space of x.

    Attributes:
        a_tilde: (r, r) matrix u* A u = u* b.
        svd_of_x: the truncated SVD the compression is built on.
        b: (n, r) matrix y v / sigma; A = b u* without ever forming A.
    """

    a_tilde: np.ndarray
    svd_of_x: ReducedSvd
    b: np.ndarray


def reduced_operator(
    pairs: SnapshotPairs,
    *,
    rtol: float | None = None,
    atol: float | None = None,
    svd_method: str = "direct",
    gram_tol: float | None = None,
) -> ReducedOperator:
    """Compress A = y x^+ to the numerical column space of x."""
    if svd_method == "gram":
        svd = reduced_svd(pairs.x, method="gram", gram_tol=gram_tol)
    else:
        svd = reduced_svd(pairs.x, rtol=rtol, atol=atol, method=svd_method)
    b = (pairs.y @ svd.v) / svd.sigma[None, :]
    return ReducedOperator(a_tilde=svd.u.conj().T @ b, svd_of_x=svd, b=b)


@dataclass(frozen=True)
class DmdDecomposition:
    """Eigenvalues and mode families from one decomposition run.

    Mode columns are index-paired across all arrays. ``exact_modes``
    are eigenvectors of A; ``projected_modes`` their projections onto
    range(x) (for the projected algorithm these are the native output);
    ``adjoint_modes`` satisfy psi* A = lambda psi*. ``reduced_vectors``
    hold the rank-space eigenvectors w with u* phi = w.

    Modes are ordered by descending mode 2-norm, ties broken by
    descending |lambda| then ascending arg(lambda), which keeps
    conjugate pairs adjacent. The norm used is that of the algorithm's
    own modes (see :attr:`modes`).
    """

    eigenvalues: np.ndarray
    exact_modes: np.ndarray
    projected_modes: np.ndarray
    reduced_vectors: np.ndarray
    adjoint_modes: np.ndarray | None
    algorithm: str
    scaling: str
    svd_of_x: ReducedSvd
    amplitudes: np.ndarray | None = None
    amplitude_residual: float | None = None
    warnings: tuple[str, ...] = ()

    @property
    def modes(self) -> np.ndarray:
        """The mode family the algorithm itself defines."""
        return self.projected_modes if self.algorithm == "projected" else self.exact_modes

    @property
    def n_modes(self) -> int:
        return len(self.eigenvalues)


def _quant(v: float) -> float:
    """Round to 12 significant digits so roundoff-equal keys tie."""
    return float(f"{v:.12g}")


def _canonical_order(eigenvalues: np.ndarray, mode_norms: np.ndarray) -> np.ndarray:
    keys = [
        (-_quant(mode_norms[j]), -_quant(abs(eigenvalues[j])), float(np.angle(eigenvalues[j])))
        for j in range(len(eigenvalues))
    ]
    return np.array(sorted(range(len(eigenvalues)), key=keys.__getitem__), dtype=int)


def _zero_tol(a_tilde: np.ndarray, zero_tol: float | None) -> float:
    if zero_tol is not None:
        if zero_tol < 0:
            raise ValueError("zero_tol must be nonnegative")
        return float(zero_tol)
    r = a_tilde.shape[0]
    return r * _EPS * float(np.linalg.norm(a_tilde))


def _defect_warning(vectors: np.ndarray) -> tuple[str, ...]:
    sv = np.linalg.svd(vectors, compute_uv=False)
    if sv[-1] <= 1e-8 * sv[0]:
        cond = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
        return (
            "eigenvector basis nearly defective (condition {:.1e}); "
            "mode-coefficient computations may be inaccurate".format(cond),
        )
    return ()


def _exact_zero_mode(op: ReducedOperator, w: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Eigenvector of A for an eigenvalue at (numerical) zero.

    The image of w under y v / sigma is itself a lambda=0 eigenvector
    when it is nonzero; when that image vanishes, u w already is one.
    "Vanishes" is judged against the roundoff floor of the product.
    """
    t = (op.svd_of_x.v / op.svd_of_x.sigma[None, :]) @ w
    bw = y @ t
    floor = max(y.shape) * _EPS * float(np.linalg.norm(y)) * float(np.linalg.norm(t))
    if np.linalg.norm(bw) > floor:
        return bw
    return op.svd_of_x.u @ w


def _normalize_columns(
    *, reduced: np.ndarray, families: list[np.ndarray | None]
) -> tuple[np.ndarray, list[np.ndarray | None]]:
    """Scale each mode so its reduced vector has unit norm.

    Falls back to leaving a column untouched when the reduced vector is
    numerically zero (possible only for null-space modes).
    """
    norms = np.linalg.norm(reduced, axis=0)
    scale = np.where(norms > 1e3 * _EPS, 1.0 / np.maximum(norms, _EPS), 1.0)
    out_fams = [f * scale[None, :] if f is not None else None for f in families]
    return reduced * scale[None, :], out_fams


def _assemble(
    *,
    algorithm: str,
    eigenvalues: np.ndarray,
    exact: np.ndarray,
    projected: np.ndarray,
    reduced: np.ndarray,
    adjoint: np.ndarray | None,
    svd_of_x: ReducedSvd,
    zero_cut: float,
    include_zero_modes: bool,
    warnings: tuple[str, ...],
) -> DmdDecomposition:
    keep = np.ones(len(eigenvalues), dtype=bool)
    if not include_zero_modes:
        keep = np.abs(eigenvalues) > zero_cut
    lam = eigenvalues[keep]
    exact = exact[:, keep]
    projected = projected[:, keep]
    reduced = reduced[:, keep]
    adjoint = adjoint[:, keep] if adjoint is not None else None

    reduced, (exact, projected) = _normalize_columns(
        reduced=reduced, families=[exact, projected]
    )

    own = projected if algorithm == "projected" else exact
    order = _canonical_order(lam, np.linalg.norm(own, axis=0))
    return DmdDecomposition(
        eigenvalues=lam[order],
        exact_modes=exact[:, order],
        projected_modes=projected[:, order],
        reduced_vectors=reduced[:, order],
        adjoint_modes=adjoint[:, order] if adjoint is not None else None,
        algorithm=algorithm,
        scaling="unit-norm",
        svd_of_x=svd_of_x,
        warnings=warnings,
    )


def _core_decomposition(
    pairs: SnapshotPairs,
    algorithm: str,
    *,
    rtol: float | None,
    atol: float | None,
    svd_method: str,
    gram_tol: float | None,
    zero_tol: float | None,
    include_zero_modes: bool,
    eig_tol: float,
) -> DmdDecomposition:
    """Shared path for the exact and projected algorithms."""
    op = reduced_operator(
        pairs, rtol=rtol, atol=atol, svd_method=svd_method, gram_tol=gram_tol
    )
    pairs_eig = eig_dense(op.a_tilde, want_left=True, eig_tol=eig_tol)
    lam = pairs_eig.values
    w = pairs_eig.vectors
    u = op.svd_of_x.u

    cut = _zero_tol(op.a_tilde, zero_tol)
    projected = u @ w
    exact = np.empty_like(projected)
    bw = op.b @ w
    for j in range(len(lam)):
        if abs(lam[j]) > cut:
            exact[:, j] = bw[:, j] / lam[j]
        else:
            exact[:, j] = _exact_zero_mode(op, w[:, j], pairs.y)
    adjoint = u @ pairs_eig.left_vectors

    return _assemble(
        algorithm=algorithm,
        eigenvalues=lam,
        exact=exact,
        projected=projected,
        reduced=w,
        adjoint=adjoint,
        svd_of_x=op.svd_of_x,
        zero_cut=cut,
        include_zero_modes=include_zero_modes,
        warnings=_defect_warning(w),
    )


def exact_dmd(
    pairs: SnapshotPairs,
    *,
    rtol: float | None = None,
    atol: float | None = None,
    svd_method: str = "direct",
    gram_tol: float | None = None,
    zero_tol: float | None = None,
    include_zero_modes: bool = False,
    eig_tol: float = 1e-9,
) -> DmdDecomposition:
    """Eigenpairs of A = y x^+ with modes in the image of y.

    Each nonzero eigenvalue lambda of the reduced operator gives the
    mode phi = (y v / sigma) w / lambda, an eigenvector of A itself.
    Zero eigenvalues are dropped unless ``include_zero_modes`` is set,
    in which case a genuine null-space eigenvector is constructed.
    """
    return _core_decomposition(
        pairs,
        "exact",
        rtol=rtol,
        atol=atol,
        svd_method=svd_method,
        gram_tol=gram_tol,
        zero_tol=zero_tol,
        include_zero_modes=include_zero_modes,
        eig_tol=eig_tol,
    )


def projected_dmd(
    pairs: SnapshotPairs,
    *,
    rtol: float | None = None,
    atol: float | None = None,
    svd_method: str = "direct",
    gram_tol: float | None = None,
    zero_tol: float | None = None,
    include_zero_modes: bool = False,
    eig_tol: float = 1e-9,
) -> DmdDecomposition:
    """Eigenpairs of A projected onto the column space of x.

    Modes are u w for rank-space eigenvectors w; they equal the exact
    modes after projection onto range(x) and share their eigenvalues.
    """
    return _core_decomposition(
        pairs,
        "projected",
        rtol=rtol,
        atol=atol,
        svd_method=svd_method,
        gram_tol=gram_tol,
        zero_tol=zero_tol,
        include_zero_modes=include_zero_modes,
        eig_tol=eig_tol,
    )


def exact_dmd_qr(
    pairs: SnapshotPairs,
    *,
    rtol: float | None = None,
    atol: float | None = None,
    zero_tol: float | None = None,
    include_zero_modes: bool = False,
    eig_tol: float = 1e-9,
) -> DmdDecomposition:
    """Exact modes via an orthonormal basis q of [x y].

    Since range(A) lies inside range([x y]), compressing A to that
    basis preserves the nonzero spectrum, and q w is already an
    eigenvector of A; no per-eigenvalue rescaling is needed. Costs a
    second orthogonal factorization, pays off when modes for many
    eigenvalues are wanted at once.
    """
    op = reduced_operator(pairs, rtol=rtol, atol=atol)
    q = orthonormal_basis(
        np.concatenate([pairs.x, pairs.y], axis=1), rtol=rtol, atol=atol
    )
    u = op.svd_of_x.u
    # a_tilde_q = q* A q with A = b u*, assembled at reduced size.
    a_q = (q.conj().T @ op.b) @ (u.conj().T @ q)
    pairs_eig = eig_dense(a_q, want_left=True, eig_tol=eig_tol)
    lam = pairs_eig.values

    exact = q @ pairs_eig.vectors
    reduced = u.conj().T @ exact
    projected = u @ reduced
    adjoint = q @ pairs_eig.left_vectors

    return _assemble(
        algorithm="qr",
        eigenvalues=lam,
        exact=exact,
        projected=projected,
        reduced=reduced,
        adjoint=adjoint,
        svd_of_x=op.svd_of_x,
        zero_cut=_zero_tol(a_q, zero_tol),
        include_zero_modes=include_zero_modes,
        warnings=_defect_warning(pairs_eig.vectors),
    )


def exact_dmd_sequential(
    z,
    *,
    dt: float | None = None,
    rtol: float | None = None,
    atol: float | None = None,
    zero_tol: float | None = None,
    include_zero_modes: bool = False,
    gs_tol: float = 1e-10,
    eig_tol: float = 1e-9,
) -> DmdDecomposition:
    """Exact modes from a single time series z_0, ..., z_m.

    Only the final snapshot can stick out of range(x), so one
    Gram-Schmidt step against u supplies the full basis of [x y] and
    the exact mode is u w plus a rank-one correction along that new
    direction. When the final snapshot already lies in range(x)
    (relative residual below ``gs_tol``) the output coincides with
    :func:`projected_dmd` on the same data; the exact and projected
    families are then identical.
    """
    zmat = snapshot_matrix(z)
    if zmat.shape[1] < 2:
        raise DimensionError("a sequence needs at least 2 snapshots")
    pairs = pairs_from_sequence(zmat, dt=dt)
    op = reduced_operator(pairs, rtol=rtol, atol=atol)
    u = op.svd_of_x.u
    z_last = zmat[:, -1]
    p = z_last - u @ (u.conj().T @ z_last)
    in_span = np.linalg.norm(p) <= gs_tol * max(np.linalg.norm(z_last), _EPS)

    pairs_eig = eig_dense(op.a_tilde, want_left=True, eig_tol=eig_tol)
    lam = pairs_eig.values
    w = pairs_eig.vectors
    cut = _zero_tol(op.a_tilde, zero_tol)

    projected = u @ w
    if in_span:
        exact = projected.copy()
    else:
        q = p / np.linalg.norm(p)
        bw = op.b @ w
        corr = np.outer(q, q.conj() @ bw)
        exact = np.empty_like(projected)
        for j in range(len(lam)):
            if abs(lam[j]) > cut:
                exact[:, j] = projected[:, j] + corr[:, j] / lam[j]
            else:
                exact[:, j] = _exact_zero_mode(op, w[:, j], pairs.y)
    adjoint = u @ pairs_eig.left_vectors

    return _assemble(
        algorithm="sequential",
        eigenvalues=lam,
        exact=exact,
        projected=projected,
        reduced=w,
        adjoint=adjoint,
        svd_of_x=op.svd_of_x,
        zero_cut=cut,
        include_zero_modes=include_zero_modes,
        warnings=_defect_warning(w),
    )


def adjoint_modes(op: ReducedOperator, *, eig_tol: float = 1e-9) -> np.ndarray:
    """Left eigenvectors of A lifted to state space, psi* A = lambda psi*.

    Columns follow the same ordering :func:`exact_dmd` would give its
    modes on the same operator (descending exact-mode norm, then
    descending |lambda|, then ascending arg), so column j pairs with
    mode j of the default exact decomposition. Zero eigenvalues are
    dropped, as there.
    """
    pairs_eig = eig_dense(op.a_tilde, want_left=True, eig_tol=eig_tol)
    lam = pairs_eig.values
    cut = _zero_tol(op.a_tilde, None)
    keep = np.abs(lam) > cut
    lam = lam[keep]
    w = pairs_eig.vectors[:, keep]
    zv = pairs_eig.left_vectors[:, keep]
    exact_norms = np.linalg.norm(op.b @ w, axis=0) / np.abs(lam)
    order = _canonical_order(lam, exact_norms)
    psi = op.svd_of_x.u @ zv[:, order]
    return psi / np.linalg.norm(psi, axis=0, keepdims=True)


@dataclass(frozen=True)
class ConsistencyReport:
    """Whether y is a linear image of x, with the measured defects.

    ``defect`` is the relative mass of y outside the row space of x,
    norm(y (I - x^+ x)) / norm(y); ``residual`` is the relative misfit
    norm(A x - y) / norm(y) of the fitted operator. The two agree up to
    roundoff: null directions of x are exactly what A cannot see.
    """

    consistent: bool
    defect: float
    residual: float
    tol: float
    rank: int


def linear_consistency(pairs: SnapshotPairs, *, tol: float = 1e-10,
                       rtol: float | None = None, atol: float | None = None) -> ConsistencyReport:
    """Measure whether any linear operator can map each x_k to y_k."""
    op = reduced_operator(pairs, rtol=rtol, atol=atol)
    v = op.svd_of_x.v
    y = pairs.y
    y_norm = float(np.linalg.norm(y))
    if y_norm == 0.0:
        return ConsistencyReport(True, 0.0, 0.0, tol, op.svd_of_x.rank)
    defect = float(np.linalg.norm(y - (y @ v) @ v.conj().T)) / y_norm
    residual = float(np.linalg.norm(op.b @ (op.svd_of_x.u.conj().T @ pairs.x) - y)) / y_norm
    return ConsistencyReport(
        consistent=defect <= tol,
        defect=defect,
        residual=residual,
        tol=tol,
        rank=op.svd_of_x.rank,
    )


@dataclass(frozen=True)
class Reconstruction:
    """Least-squares mode coefficients for one state vector."""

    coefficients: np.ndarray
    residual: float


def reconstruct(dec: DmdDecomposition, x) -> Reconstruction:
    """Expand a state vector in the decomposition's own modes.

    Solves min_c norm(modes c - x) by orthogonal factorization and
    reports the attained residual; components of x outside the mode
    span end up in the residual, never hidden.
    """
    vec = np.asarray(x, dtype=np.complex128).reshape(-1)
    if vec.shape[0] != dec.modes.shape[0]:
        raise DimensionError(
            f"state has {vec.shape[0]} entries, modes have {dec.modes.shape[0]}"
        )
    if dec.n_modes == 0:
        return Reconstruction(np.zeros(0, dtype=np.complex128), float(np.linalg.norm(vec)))
    c, _, _, _ = np.linalg.lstsq(dec.modes, vec, rcond=None)
    residual = float(np.linalg.norm(dec.modes @ c - vec))
    return Reconstruction(coefficients=c, residual=residual)


def propagate(dec: DmdDecomposition, coefficients, steps: int) -> np.ndarray:
    """Advance a mode expansion k steps: sum_j lambda_j^k c_j phi_j."""
    c = np.asarray(coefficients, dtype=np.complex128).reshape(-1)
    if c.shape[0] != dec.n_modes:
        raise DimensionError(f"expected {dec.n_modes} coefficients, got {c.shape[0]}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    return dec.modes @ (c * dec.eigenvalues**steps)


@dataclass(frozen=True)
class SpectrumPoint:
    """Frequency/growth view of one eigenvalue.

    ``growth_continuous`` is -inf for a zero eigenvalue (log of zero
    magnitude); the frequency of a zero eigenvalue is reported as 0.
    """

    eigenvalue: complex
    frequency: float
    growth_discrete: float
    growth_continuous: float
    mode_norm: float
    weighted_norm: float


def spectrum(dec: DmdDecomposition, dt: float = 1.0, m_weight: float = 0) -> list[SpectrumPoint]:
    """Per-mode frequencies, growth rates and (weighted) mode norms.

    ``dt`` is the time advanced per pair; frequencies come out in
    cycles per unit time. ``m_weight`` weights each mode norm by
    |lambda|^m_weight, emphasizing modes that persist over that many
    steps (0 leaves norms untouched).
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    norms = np.linalg.norm(dec.modes, axis=0)
    points = []
    for lam, nrm in zip(dec.eigenvalues, norms):
        mag = abs(lam)
        if mag == 0.0:
            freq = 0.0
            growth_c = float("-inf")
            if m_weight == 0:
                weighted = float(nrm)
            else:
                weighted = 0.0 if m_weight > 0 else float("inf")
        else:
            freq = float(np.angle(lam)) / (2.0 * np.pi * dt)
            growth_c = float(np.log(mag)) / dt
            weighted = float(nrm * mag**m_weight)
        points.append(
            SpectrumPoint(
                eigenvalue=complex(lam),
                frequency=freq,
                growth_discrete=float(mag),
                growth_continuous=growth_c,
                mode_norm=float(nrm),
                weighted_norm=weighted,
            )
        )
    return points
