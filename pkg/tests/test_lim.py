"""Tests for the statistical propagator view of the snapshot operator."""

import numpy as np
import pytest

from dmdkit import (
    eig_dense,
    exact_dmd,
    green_function,
    lim_dmd_equivalence,
    lim_model,
    most_probable_state,
    pairs_from_arrays,
    pairs_from_sequence,
    reduced_operator,
    subtract_mean,
)


def _centered_pairs(seed, n=4, m=20):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, m))
    x -= x.mean(axis=1, keepdims=True)
    mat = rng.standard_normal((n, n))
    y = mat @ x
    return pairs_from_arrays(x, y, dt=1.0), mat


class TestCenteringGuard:
    def test_uncentered_snapshots_refused(self):
        rng = np.random.default_rng(0)
        z = np.abs(rng.standard_normal((3, 15))) + 1.0
        pairs = pairs_from_sequence(z)
        with pytest.raises(ValueError, match="subtract_mean"):
            lim_model(pairs)

    def test_force_bypasses_the_guard(self):
        rng = np.random.default_rng(1)
        z = np.abs(rng.standard_normal((3, 15))) + 1.0
        pairs = pairs_from_sequence(z)
        model = lim_model(pairs, force=True)
        assert model.green.shape[0] == model.green.shape[1]

    def test_centered_data_accepted(self):
        pairs, _ = _centered_pairs(2)
        model = lim_model(pairs)
        assert model.eofs.shape[0] == 4

    def test_subtract_mean_output_passes(self):
        rng = np.random.default_rng(3)
        pairs = pairs_from_sequence(rng.standard_normal((3, 18)) + 7.0)
        centered, _ = subtract_mean(pairs)
        lim_model(centered)


class TestModelStructure:
    def test_covariance_eigenvalues_from_singular_values(self):
        pairs, _ = _centered_pairs(4)
        model = lim_model(pairs)
        op = reduced_operator(pairs)
        want = op.svd_of_x.sigma**2 / pairs.n_pairs
        assert np.allclose(np.diag(model.lambda_cov), want, atol=1e-14)
        off = model.lambda_cov - np.diag(np.diag(model.lambda_cov))
        assert np.abs(off).max() == 0.0

    def test_eof_coefficients_reproduce_snapshots(self):
        pairs, _ = _centered_pairs(5)
        model = lim_model(pairs)
        assert np.linalg.norm(model.eofs @ model.x_hat - pairs.x) < 1e-10
        assert np.linalg.norm(model.eofs @ model.y_hat - pairs.y) < 1e-10

    def test_lag_comes_from_pair_spacing(self):
        rng = np.random.default_rng(6)
        x = rng.standard_normal((3, 12))
        x -= x.mean(axis=1, keepdims=True)
        pairs = pairs_from_arrays(x, np.roll(x, -1, axis=1), dt=0.3)
        model = lim_model(pairs, force=True)
        assert model.tau == 0.3

    def test_full_rank_propagator_recovers_generator(self):
        for seed in range(8):
            pairs, mat = _centered_pairs(30 + seed)
            model = lim_model(pairs)
            u = model.eofs
            lifted = u @ model.green @ u.conj().T
            assert np.linalg.norm(lifted - mat) < 1e-9 * np.linalg.norm(mat)


class TestEquivalence:
    def test_propagator_equals_reduced_operator_entrywise(self):
        for seed in range(10):
            pairs, _ = _centered_pairs(50 + seed)
            rep = lim_dmd_equivalence(pairs)
            assert rep.equivalent
            assert rep.max_abs_diff <= rep.tol
            op = reduced_operator(pairs)
            assert np.abs(rep.green - op.a_tilde).max() < 1e-12 * np.linalg.norm(op.a_tilde)

    def test_green_function_helper_agrees(self):
        pairs, _ = _centered_pairs(7)
        g = green_function(pairs)
        model = lim_model(pairs)
        assert np.array_equal(g, model.green)

    def test_propagator_spectrum_matches_decomposition(self):
        pairs, _ = _centered_pairs(8)
        model = lim_model(pairs)
        lam_g = np.sort_complex(eig_dense(model.green).values)
        lam_d = np.sort_complex(exact_dmd(pairs).eigenvalues)
        assert np.allclose(lam_g, lam_d, atol=1e-10)


def test_most_probable_state_applies_propagator():
    pairs, _ = _centered_pairs(9)
    model = lim_model(pairs)
    v = np.arange(model.green.shape[1], dtype=float)
    out = most_probable_state(model.green, v)
    assert np.allclose(out, model.green @ v, atol=1e-14)
