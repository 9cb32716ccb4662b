"""Eigensystem realization from Markov parameter sequences.

A sequence of impulse-response blocks C A^k B is stacked into a block
Hankel matrix and its one-step shift; a balanced state-space model of
chosen order falls out of the Hankel SVD. The same (H, H') pair fed to
the exact decomposition gives a similar operator, which is what
:func:`era_dmd_similarity` verifies numerically.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .dmd import exact_dmd, reduced_operator
from .errors import DimensionError
from .linalg import eig_dense, reduced_svd
from .pairs import pairs_from_arrays

__all__ = [
    "MarkovSequence",
    "EraRealization",
    "EraDmdReport",
    "markov_parameters",
    "markov_from_blocks",
    "build_hankel",
    "era_realize",
    "era_dmd_similarity",
    "match_eigenvalues",
]


def _as_block(value, q: int, p: int, name: str) -> np.ndarray:
    block = np.atleast_2d(np.asarray(value, dtype=np.complex128))
    if block.shape != (q, p):
        raise DimensionError(f"{name} has shape {block.shape}, expected {(q, p)}")
    if not np.all(np.isfinite(block)):
        raise ValueError(f"{name} contains non-finite entries")
    return block


@dataclass(frozen=True)
class MarkovSequence:
    """Impulse-response blocks at a fixed sampling stride.

    ``params[k]`` holds C A^(k P) B and ``shifted[k]`` its one-step
    advance C A^(k P + 1) B, each a (q, p) block; the two lists have
    equal length. The shift by a single fine step, not by P, is what
    lets the realization estimate the one-step operator.
    """

    params: tuple[np.ndarray, ...]
    shifted: tuple[np.ndarray, ...]
    q: int
    p: int
    stride: int = 1

    def __post_init__(self):
        if len(self.params) == 0 or len(self.params) != len(self.shifted):
            raise DimensionError("params and shifted must be equal-length and nonempty")
        if self.stride < 1:
            raise ValueError("stride must be >= 1")


def markov_parameters(a, b, c, *, count: int, stride: int = 1) -> MarkovSequence:
    """Generate C A^(kP) B and C A^(kP+1) B from a state-space model."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.atleast_2d(np.asarray(b, dtype=np.complex128))
    c = np.atleast_2d(np.asarray(c, dtype=np.complex128))
    if b.shape[0] == 1 and a.shape[0] != 1 and b.shape[1] == a.shape[0]:
        b = b.T
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("a must be square")
    if b.shape[0] != a.shape[0] or c.shape[1] != a.shape[0]:
        raise DimensionError("b/c dimensions do not match a")
    if count < 1:
        raise ValueError("count must be >= 1")
    if stride < 1:
        raise ValueError("stride must be >= 1")
    params = []
    shifted = []
    g = b  # holds a^(k*stride) @ b
    for _ in range(count):
        params.append(c @ g)
        shifted.append(c @ (a @ g))
        for _ in range(stride):
            g = a @ g
    return MarkovSequence(
        params=tuple(params),
        shifted=tuple(shifted),
        q=c.shape[0],
        p=b.shape[1],
        stride=stride,
    )


def markov_from_blocks(blocks, *, stride: int = 1, count: int | None = None) -> MarkovSequence:
    """Subsample a fine impulse-response list into a Markov sequence.

    ``blocks[j]`` is C A^j B (scalars are accepted for q = p = 1).
    Entry k of the result takes blocks[k*stride] and blocks[k*stride+1].
    """
    if stride < 1:
        raise ValueError("stride must be >= 1")
    raw = list(blocks)
    if len(raw) < 2:
        raise DimensionError("need at least 2 impulse-response blocks")
    first = np.atleast_2d(np.asarray(raw[0], dtype=np.complex128))
    q, p = first.shape
    seq = [_as_block(v, q, p, f"block {j}") for j, v in enumerate(raw)]
    max_count = (len(seq) - 2) // stride + 1
    m = max_count if count is None else int(count)
    if m < 1 or m > max_count:
        raise DimensionError(
            f"count {m} outside 1..{max_count} for {len(seq)} blocks at stride {stride}"
        )
    params = tuple(seq[k * stride] for k in range(m))
    shifted = tuple(seq[k * stride + 1] for k in range(m))
    return MarkovSequence(params=params, shifted=shifted, q=q, p=p, stride=stride)


def build_hankel(
    seq: MarkovSequence, m_c: int | None = None, m_o: int | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Block Hankel matrix and its shift from a Markov sequence.

    Block (i, j) of the first matrix is params[i + j], of the second
    shifted[i + j]; i runs over m_o + 1 block rows and j over m_c + 1
    block columns. The split must use the whole sequence:
    m_c + m_o = len(params) - 1. By default the rows take the balanced
    share m_o = (len - 1) // 2.
    """
    m = len(seq.params)
    if m_o is None and m_c is None:
        m_o = (m - 1) // 2
        m_c = m - 1 - m_o
    elif m_o is None:
        m_o = m - 1 - int(m_c)
    elif m_c is None:
        m_c = m - 1 - int(m_o)
    m_c = int(m_c)
    m_o = int(m_o)
    if m_c < 0 or m_o < 0:
        raise ValueError("m_c and m_o must be nonnegative")
    if m_c + m_o != m - 1:
        raise DimensionError(
            f"m_c + m_o must equal len(params) - 1 = {m - 1}, got {m_c} + {m_o}"
        )
    q, p = seq.q, seq.p
    h = np.empty(((m_o + 1) * q, (m_c + 1) * p), dtype=np.complex128)
    h_shift = np.empty_like(h)
    for i in range(m_o + 1):
        for j in range(m_c + 1):
            h[i * q : (i + 1) * q, j * p : (j + 1) * p] = seq.params[i + j]
            h_shift[i * q : (i + 1) * q, j * p : (j + 1) * p] = seq.shifted[i + j]
    return h, h_shift


@dataclass(frozen=True)
class EraRealization:
    """Balanced state-space model realized from a Hankel pair."""

    a_r: np.ndarray
    b_r: np.ndarray
    c_r: np.ndarray
    d_r: np.ndarray
    order: int
    singular_values: np.ndarray


def era_realize(
    h,
    h_shift,
    order: int | None,
    p: int,
    q: int,
    *,
    d=None,
    rtol: float | None = None,
    atol: float | None = None,
) -> EraRealization:
    """Realize (A_r, B_r, C_r, D_r) of the given order from (H, H').

    ``order=None`` takes the full numerical rank of H. B_r reads off
    the first p columns of sqrt(S) V*, C_r the first q rows of
    U sqrt(S); the feedthrough passes through unchanged (zero block
    when not supplied, since the Markov sequence starts at C B).
    """
    h = np.asarray(h, dtype=np.complex128)
    hs = np.asarray(h_shift, dtype=np.complex128)
    if h.shape != hs.shape:
        raise DimensionError(f"H and H' shapes differ: {h.shape} vs {hs.shape}")
    if p < 1 or q < 1 or h.shape[0] % q or h.shape[1] % p:
        raise DimensionError(
            f"H of shape {h.shape} is not divisible into {q}-by-{p} blocks"
        )
    svd = reduced_svd(h, rtol=rtol, atol=atol)
    r = svd.rank if order is None else int(order)
    if r < 1 or r > svd.rank:
        raise ValueError(f"order {r} outside 1..numerical rank {svd.rank}")
    root = np.sqrt(svd.sigma[:r])
    u = svd.u[:, :r]
    v = svd.v[:, :r]
    a_r = (u.conj().T @ hs @ v) / np.outer(root, root)
    b_r = (root[:, None] * v.conj().T)[:, :p]
    c_r = (u * root[None, :])[:q, :]
    d_r = np.zeros((q, p), dtype=np.complex128) if d is None else _as_block(d, q, p, "d")
    return EraRealization(
        a_r=a_r, b_r=b_r, c_r=c_r, d_r=d_r, order=r, singular_values=svd.sigma.copy()
    )


def match_eigenvalues(left, right) -> np.ndarray:
    """Pair two equal-length eigenvalue sets, minimizing total |diff|.

    Returns the permutation ``perm`` with right[perm] matched to left.
    Uses an optimal assignment, so every eigenvalue is used exactly
    once even inside clusters.
    """
    left = np.asarray(left)
    right = np.asarray(right)
    if left.shape != right.shape:
        raise DimensionError(
            f"eigenvalue sets have different sizes: {left.shape} vs {right.shape}"
        )
    cost = np.abs(left[:, None] - right[None, :])
    _, cols = scipy.optimize.linear_sum_assignment(cost)
    return cols


@dataclass(frozen=True)
class EraDmdReport:
    """Agreement between a full-order realization and the exact decomposition.

    ``max_eigenvalue_mismatch`` is the largest matched |difference|;
    ``max_map_residual`` checks that sqrt(S) v is an eigenvector of the
    reduced operator for every realization eigenpair (lambda, v),
    normalized by the operator's Frobenius norm.
    """

    era_eigenvalues: np.ndarray
    dmd_eigenvalues: np.ndarray
    max_eigenvalue_mismatch: float
    max_map_residual: float
    order: int


def era_dmd_similarity(
    h, h_shift, *, rtol: float | None = None, atol: float | None = None
) -> EraDmdReport:
    """Check that ERA at full order and exact decomposition agree on (H, H').

    The realization A_r equals sqrt(S)^-1 (u* H' v / sigma) sqrt(S), a
    similarity transform of the reduced operator, so the spectra must
    coincide and eigenvectors must map through sqrt(S).
    """
    h = np.asarray(h, dtype=np.complex128)
    hs = np.asarray(h_shift, dtype=np.complex128)
    pair = pairs_from_arrays(h, hs)
    op = reduced_operator(pair, rtol=rtol, atol=atol)
    real = era_realize(h, hs, None, 1, 1, rtol=rtol, atol=atol)

    era_eigs = eig_dense(real.a_r)
    dec = exact_dmd(pair, rtol=rtol, atol=atol, include_zero_modes=True)
    dmd_lam = dec.eigenvalues
    perm = match_eigenvalues(era_eigs.values, dmd_lam)
    mismatch = float(np.max(np.abs(era_eigs.values - dmd_lam[perm])))

    root = np.sqrt(op.svd_of_x.sigma[: real.order])
    a_norm = max(float(np.linalg.norm(op.a_tilde)), np.finfo(float).eps)
    worst = 0.0
    for j in range(real.order):
        w = root * era_eigs.vectors[:, j]
        w = w / np.linalg.norm(w)
        resid = float(np.linalg.norm(op.a_tilde @ w - era_eigs.values[j] * w))
        worst = max(worst, resid)
    return EraDmdReport(
        era_eigenvalues=era_eigs.values,
        dmd_eigenvalues=dmd_lam,
        max_eigenvalue_mismatch=mismatch,
        max_map_residual=worst / a_norm,
        order=real.order,
    )
