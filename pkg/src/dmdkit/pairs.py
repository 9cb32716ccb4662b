"""Snapshot-pair assembly.

All decompositions consume a :class:`SnapshotPairs`: two equal-shaped
matrices x and y whose k-th columns are related by one application of
the (unknown) map under study. The constructors here cover the usual
ways such pairs arise: a single time series, a strided subsample of a
finer series, several independent runs, or pre-matched matrices.

Columns are snapshots everywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionError

__all__ = [
    "SnapshotPairs",
    "TrajectorySet",
    "snapshot_matrix",
    "pairs_from_arrays",
    "pairs_from_sequence",
    "pairs_from_strided",
    "pairs_from_trajectories",
    "embed_sequence",
    "delay_embed",
    "subtract_mean",
    "permute_columns",
]

_PROVENANCES = ("sequential", "strided", "concatenated", "generic", "delay-embedded")


def snapshot_matrix(z, name: str = "snapshots") -> np.ndarray:
    """Coerce a snapshot collection to an (n, count) complex matrix.

    Accepts a 2-D array (columns already snapshots), a sequence of 1-D
    vectors, or a sequence of scalars (treated as 1-D states).
    """
    if isinstance(z, np.ndarray) and z.ndim == 2:
        mat = z
    else:
        try:
            mat = np.column_stack([np.atleast_1d(np.asarray(c)) for c in z])
        except ValueError as exc:
            raise DimensionError(f"{name}: snapshots have inconsistent lengths") from exc
    mat = np.asarray(mat)
    if mat.ndim != 2:
        raise DimensionError(f"{name} must form a 2-D matrix, got shape {mat.shape}")
    if mat.size == 0:
        raise DimensionError(f"{name} is empty")
    if not np.all(np.isfinite(mat)):
        raise ValueError(f"{name} contains non-finite entries")
    return np.ascontiguousarray(mat, dtype=np.complex128)


@dataclass(frozen=True)
class SnapshotPairs:
    """Matched snapshot matrices x, y with y_k the image of x_k.

    Attributes:
        x: (n, m) matrix of pre-images.
        y: (n, m) matrix of images, same shape as x.
        dt: time advanced by one application of the map, if known.
        provenance: how the pairing was built; one of "sequential",
            "strided", "concatenated", "generic", "delay-embedded".
    """

    x: np.ndarray
    y: np.ndarray
    dt: float | None = None
    provenance: str = "generic"

    def __post_init__(self):
        if self.x.shape != self.y.shape:
            raise DimensionError(
                f"x and y must have equal shapes, got {self.x.shape} and {self.y.shape}"
            )
        if self.x.ndim != 2 or self.x.shape[1] < 1:
            raise DimensionError("pairs need at least one column")
        if self.provenance not in _PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        if self.dt is not None and not self.dt > 0:
            raise ValueError("dt must be positive when given")

    @property
    def n_states(self) -> int:
        return self.x.shape[0]

    @property
    def n_pairs(self) -> int:
        return self.x.shape[1]


@dataclass(frozen=True)
class TrajectorySet:
    """Several independent runs sampled with a shared timestep.

    Each trajectory is an (n, count_j) matrix with count_j >= 2; the
    state dimension n must agree across runs.
    """

    trajectories: tuple[np.ndarray, ...]
    dt: float | None = None

    def __post_init__(self):
        if len(self.trajectories) == 0:
            raise DimensionError("trajectory set is empty")
        n = self.trajectories[0].shape[0]
        for j, traj in enumerate(self.trajectories):
            if traj.ndim != 2 or traj.shape[1] < 2:
                raise DimensionError(f"trajectory {j} needs at least 2 snapshots")
            if traj.shape[0] != n:
                raise DimensionError(
                    f"trajectory {j} has {traj.shape[0]} states, expected {n}"
                )


def pairs_from_arrays(x, y, *, dt: float | None = None) -> SnapshotPairs:
    """Wrap pre-matched matrices as generic pairs."""
    return SnapshotPairs(
        x=snapshot_matrix(x, "x"), y=snapshot_matrix(y, "y"), dt=dt, provenance="generic"
    )


def pairs_from_sequence(z, *, dt: float | None = None) -> SnapshotPairs:
    """Pairs (z_k, z_{k+1}) from one time series of >= 2 snapshots."""
    mat = snapshot_matrix(z)
    if mat.shape[1] < 2:
        raise DimensionError("a sequence needs at least 2 snapshots")
    return SnapshotPairs(x=mat[:, :-1], y=mat[:, 1:], dt=dt, provenance="sequential")


def pairs_from_strided(z, stride: int, *, count: int | None = None, dt: float | None = None) -> SnapshotPairs:
    """Pairs (z_{kP}, z_{kP+1}) subsampled from a finer series.

    ``stride`` is P, the coarse spacing between pair anchors; each pair
    still spans a single fine step, so the one-step map is what gets
    estimated. ``count`` limits the number of pairs (default: as many as
    the series allows). ``dt`` remains the fine timestep.
    """
    mat = snapshot_matrix(z)
    total = mat.shape[1]
    if stride < 1:
        raise ValueError("stride must be >= 1")
    max_count = (total - 2) // stride + 1 if total >= 2 else 0
    if max_count < 1:
        raise DimensionError(
            f"series of {total} snapshots has no room for stride {stride}"
        )
    m = max_count if count is None else int(count)
    if m < 1 or m > max_count:
        raise DimensionError(
            f"count {m} outside 1..{max_count} for {total} snapshots at stride {stride}"
        )
    anchors = stride * np.arange(m)
    return SnapshotPairs(
        x=mat[:, anchors], y=mat[:, anchors + 1], dt=dt, provenance="strided"
    )


def pairs_from_trajectories(runs: TrajectorySet | list | tuple, *, dt: float | None = None) -> SnapshotPairs:
    """Concatenate the sequential pairs of several independent runs."""
    if not isinstance(runs, TrajectorySet):
        runs = TrajectorySet(
            trajectories=tuple(snapshot_matrix(t, f"trajectory {j}") for j, t in enumerate(runs)),
            dt=dt,
        )
    xs = [traj[:, :-1] for traj in runs.trajectories]
    ys = [traj[:, 1:] for traj in runs.trajectories]
    return SnapshotPairs(
        x=np.concatenate(xs, axis=1),
        y=np.concatenate(ys, axis=1),
        dt=dt if dt is not None else runs.dt,
        provenance="concatenated",
    )


def embed_sequence(z, depth: int) -> np.ndarray:
    """Stack ``depth`` consecutive snapshots into each embedded column.

    Column k of the result is [z_k; z_{k+1}; ...; z_{k+depth-1}], so a
    series of L snapshots embeds into L - depth + 1 columns of dimension
    n * depth.
    """
    mat = snapshot_matrix(z)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    total = mat.shape[1]
    if total - depth + 1 < 2:
        raise DimensionError(
            f"series of {total} snapshots is too short for depth {depth}"
        )
    blocks = [mat[:, k : total - depth + 1 + k] for k in range(depth)]
    return np.concatenate(blocks, axis=0)


def delay_embed(pairs: SnapshotPairs, depth: int) -> SnapshotPairs:
    """Delay-embed sequential pairs with the given stacking depth.

    The underlying series is recovered from the pairs (possible exactly
    for sequential provenance), embedded, and re-paired; the column
    count shrinks by depth - 1. depth=1 returns the input unchanged.
    """
    if depth == 1:
        return pairs
    if pairs.provenance != "sequential":
        raise ValueError(
            "delay_embed needs sequential pairs; got provenance "
            f"{pairs.provenance!r} (shifted copies are unavailable)"
        )
    z = np.concatenate([pairs.x, pairs.y[:, -1:]], axis=1)
    embedded = embed_sequence(z, depth)
    out = pairs_from_sequence(embedded, dt=pairs.dt)
    return replace(out, provenance="delay-embedded")


def subtract_mean(pairs: SnapshotPairs, mode: str = "x-mean") -> tuple[SnapshotPairs, np.ndarray]:
    """Remove a constant offset from both snapshot matrices.

    mode "x-mean" uses the column mean of x; "pooled-mean" averages the
    columns of x and y together. Returns the centered pairs and the mean
    that was removed (add it back to undo).
    """
    if mode == "x-mean":
        mean = pairs.x.mean(axis=1)
    elif mode == "pooled-mean":
        mean = np.concatenate([pairs.x, pairs.y], axis=1).mean(axis=1)
    else:
        raise ValueError(f"unknown mean mode {mode!r}")
    return (
        replace(pairs, x=pairs.x - mean[:, None], y=pairs.y - mean[:, None]),
        mean,
    )


def permute_columns(pairs: SnapshotPairs, perm) -> SnapshotPairs:
    """Reorder the pair columns by the same permutation on x and y.

    The pairing (x_k, y_k) is preserved, only the column order changes;
    the fitted operator is invariant under this.
    """
    p = np.asarray(perm)
    m = pairs.n_pairs
    if p.shape != (m,) or not np.array_equal(np.sort(p), np.arange(m)):
        raise ValueError(f"perm must be a permutation of range({m})")
    # Column order no longer encodes time, so the result is generic.
    return SnapshotPairs(x=pairs.x[:, p], y=pairs.y[:, p], dt=pairs.dt, provenance="generic")
