"""Tests for snapshot-pair construction and rearrangement."""

import numpy as np
import pytest

from dmdkit import (
    SnapshotPairs,
    delay_embed,
    embed_sequence,
    pairs_from_arrays,
    pairs_from_sequence,
    pairs_from_strided,
    pairs_from_trajectories,
    permute_columns,
    snapshot_matrix,
    subtract_mean,
)
from dmdkit.errors import DimensionError


def test_snapshot_matrix_accepts_list_of_vectors():
    mat = snapshot_matrix([[1.0, 0.0], [0.0, 1.0], [2.0, 3.0]])
    assert mat.shape == (2, 3)
    assert np.allclose(mat[:, 2], [2.0, 3.0])


def test_snapshot_matrix_accepts_scalar_sequence():
    mat = snapshot_matrix([1.0, 0.5, 0.25])
    assert mat.shape == (1, 3)


def test_pairs_from_arrays_basic():
    x = np.eye(3)
    y = 2.0 * np.eye(3)
    pairs = pairs_from_arrays(x, y, dt=0.5)
    assert isinstance(pairs, SnapshotPairs)
    assert pairs.n_states == 3
    assert pairs.n_pairs == 3
    assert pairs.dt == 0.5
    assert pairs.provenance == "generic"


def test_pairs_from_arrays_shape_mismatch():
    with pytest.raises(DimensionError):
        pairs_from_arrays(np.eye(3)[:, :2], np.eye(3))


def test_pairs_from_sequence_scalar_halving():
    pairs = pairs_from_sequence([1.0, 0.5, 0.25], dt=2.0)
    assert pairs.provenance == "sequential"
    assert np.allclose(pairs.x, [[1.0, 0.5]])
    assert np.allclose(pairs.y, [[0.5, 0.25]])
    assert pairs.dt == 2.0


def test_pairs_from_sequence_needs_two_snapshots():
    with pytest.raises(DimensionError):
        pairs_from_sequence(np.ones((3, 1)))


def test_pairs_from_strided_anchor_layout():
    z = np.arange(10.0)[None, :]
    pairs = pairs_from_strided(z, 3)
    assert pairs.provenance == "strided"
    assert np.allclose(pairs.x, [[0.0, 3.0, 6.0]])
    assert np.allclose(pairs.y, [[1.0, 4.0, 7.0]])


def test_pairs_from_strided_count_clamp():
    z = np.arange(10.0)[None, :]
    pairs = pairs_from_strided(z, 3, count=2)
    assert pairs.n_pairs == 2
    with pytest.raises(DimensionError):
        pairs_from_strided(z, 3, count=4)


def test_pairs_from_strided_unit_stride_matches_sequence():
    rng = np.random.default_rng(0)
    z = rng.standard_normal((4, 9))
    a = pairs_from_strided(z, 1)
    b = pairs_from_sequence(z)
    assert np.array_equal(a.x, b.x)
    assert np.array_equal(a.y, b.y)


def test_pairs_from_trajectories_concatenates_runs():
    rng = np.random.default_rng(1)
    runs = [rng.standard_normal((3, 5)), rng.standard_normal((3, 4))]
    pairs = pairs_from_trajectories(runs)
    assert pairs.provenance == "concatenated"
    assert pairs.n_pairs == (5 - 1) + (4 - 1)
    assert np.array_equal(pairs.x[:, :4], runs[0][:, :4])
    assert np.array_equal(pairs.y[:, 4:], runs[1][:, 1:])


def test_embed_sequence_stacks_consecutive_snapshots():
    z = np.arange(6.0)[None, :]
    emb = embed_sequence(z, 3)
    assert emb.shape == (3, 4)
    for k in range(4):
        assert np.allclose(emb[:, k], [k, k + 1, k + 2])


def test_delay_embed_structure():
    rng = np.random.default_rng(2)
    z = rng.standard_normal((2, 8))
    pairs = pairs_from_sequence(z, dt=0.1)
    emb = delay_embed(pairs, 2)
    assert emb.provenance == "delay-embedded"
    assert emb.n_states == 4
    assert emb.n_pairs == 6
    assert np.allclose(emb.x[:2], z[:, :6])
    assert np.allclose(emb.x[2:], z[:, 1:7])
    assert np.allclose(emb.y[:2], z[:, 1:7])
    assert emb.dt == 0.1


def test_delay_embed_depth_one_is_identity():
    pairs = pairs_from_sequence(np.random.default_rng(3).standard_normal((2, 5)))
    out = delay_embed(pairs, 1)
    assert np.array_equal(out.x, pairs.x)
    assert np.array_equal(out.y, pairs.y)


def test_delay_embed_rejects_generic_pairs():
    pairs = pairs_from_arrays(np.eye(3), np.eye(3))
    with pytest.raises(ValueError):
        delay_embed(pairs, 2)


def test_subtract_mean_x_mode():
    rng = np.random.default_rng(4)
    z = rng.standard_normal((3, 10)) + 5.0
    pairs = pairs_from_sequence(z)
    centered, mean = subtract_mean(pairs)
    assert np.allclose(mean, pairs.x.mean(axis=1).real)
    assert np.allclose(centered.x.mean(axis=1), 0.0, atol=1e-12)
    assert np.allclose(centered.x + mean[:, None], pairs.x)
    assert np.allclose(centered.y + mean[:, None], pairs.y)


def test_subtract_mean_pooled_mode():
    rng = np.random.default_rng(5)
    pairs = pairs_from_sequence(rng.standard_normal((2, 7)) - 3.0)
    centered, mean = subtract_mean(pairs, mode="pooled-mean")
    pooled = np.hstack([pairs.x, pairs.y]).mean(axis=1).real
    assert np.allclose(mean, pooled)
    stacked = np.hstack([centered.x, centered.y])
    assert np.allclose(stacked.mean(axis=1), 0.0, atol=1e-12)


def test_permute_columns_keeps_pairing():
    rng = np.random.default_rng(6)
    x = rng.standard_normal((3, 5))
    y = rng.standard_normal((3, 5))
    pairs = pairs_from_arrays(x, y)
    perm = [4, 2, 0, 1, 3]
    out = permute_columns(pairs, perm)
    assert out.provenance == "generic"
    for new, old in enumerate(perm):
        assert np.array_equal(out.x[:, new], pairs.x[:, old])
        assert np.array_equal(out.y[:, new], pairs.y[:, old])


def test_permute_columns_rejects_non_permutation():
    pairs = pairs_from_arrays(np.eye(3), np.eye(3))
    with pytest.raises(ValueError):
        permute_columns(pairs, [0, 0, 2])


def test_validation_rejects_nan():
    with pytest.raises(ValueError):
        pairs_from_arrays(np.array([[np.nan]]), np.array([[1.0]]))
