"""Tests for mode scaling conventions and amplitude fitting."""

import dataclasses

import numpy as np
import pytest

from dmdkit import (
    exact_dmd,
    gen_random_linear,
    pairs_from_arrays,
    pairs_from_sequence,
    scale_amplitudes,
    scale_biorthogonal,
    scale_unit_norm,
)


def _linear_sequence(seed, n=5, steps=12, radius=0.9):
    mat, z = gen_random_linear(n, steps, seed, spectral_radius=radius)
    return mat, z


class TestUnitNorm:
    def test_all_families_share_the_factor(self):
        rng = np.random.default_rng(0)
        x = rng.standard_normal((6, 5))
        y = rng.standard_normal((6, 5))
        dec = exact_dmd(pairs_from_arrays(x, y))
        # perturb the scale, then restore it
        skew = dataclasses.replace(
            dec,
            exact_modes=3.0 * dec.exact_modes,
            projected_modes=3.0 * dec.projected_modes,
            reduced_vectors=3.0 * dec.reduced_vectors,
            scaling="none",
        )
        out = scale_unit_norm(skew)
        assert out.scaling == "unit-norm"
        # the reduced vectors set the normalization; the tripled copies land
        # back exactly where the original unit-norm decomposition put them
        assert np.allclose(np.linalg.norm(out.reduced_vectors, axis=0), 1.0, atol=1e-12)
        assert np.allclose(out.reduced_vectors, dec.reduced_vectors, atol=1e-12)
        assert np.allclose(out.exact_modes, dec.exact_modes, atol=1e-12)
        assert np.allclose(out.projected_modes, dec.projected_modes, atol=1e-12)
        # one shared factor per column keeps the families mutually consistent
        u = out.svd_of_x.u
        assert np.linalg.norm(out.projected_modes - u @ out.reduced_vectors) < 1e-10


class TestBiorthogonal:
    def test_gram_matrix_becomes_identity(self):
        for seed in range(8):
            _, z = _linear_sequence(seed)
            dec = exact_dmd(pairs_from_sequence(z))
            out = scale_biorthogonal(dec)
            gram = out.adjoint_modes.conj().T @ out.exact_modes
            assert np.abs(gram - np.eye(dec.n_modes)).max() < 1e-9
            assert out.scaling == "biorthogonal"

    def test_modes_keep_unit_norm(self):
        _, z = _linear_sequence(3)
        out = scale_biorthogonal(exact_dmd(pairs_from_sequence(z)))
        assert np.allclose(np.linalg.norm(out.exact_modes, axis=0), 1.0, atol=1e-12)

    def test_refuses_coincident_eigenvalues(self):
        pairs = pairs_from_arrays(np.eye(3), np.diag([0.5, 0.5, 0.9]))
        dec = exact_dmd(pairs)
        with pytest.raises(ValueError, match="coincide"):
            scale_biorthogonal(dec)

    def test_refuses_missing_adjoints(self):
        _, z = _linear_sequence(4)
        dec = dataclasses.replace(exact_dmd(pairs_from_sequence(z)), adjoint_modes=None)
        with pytest.raises(ValueError, match="adjoint"):
            scale_biorthogonal(dec)


class TestAmplitudes:
    def test_hand_checked_swap_sequence(self):
        # snapshots e1, e2, e1: the map swaps the axes, eigenvalues +1 and -1,
        # modes (e1 +- e2)/sqrt(2), and the first image expands with equal
        # weights 1/sqrt(2) on both modes.
        z = np.array([[1.0, 0.0, 1.0], [0.0, 1.0, 0.0]])
        pairs = pairs_from_sequence(z)
        dec = scale_amplitudes(exact_dmd(pairs), pairs, method="qr")
        assert np.allclose(dec.eigenvalues, [1.0, -1.0], atol=1e-12)
        root_half = 0.7071067811865476
        assert np.allclose(dec.amplitudes, [root_half, root_half], atol=1e-12)
        assert dec.amplitude_residual < 1e-12
        assert dec.scaling == "amplitude-qr"

    def test_first_image_convention_fits_y0(self):
        for seed in range(6):
            _, z = _linear_sequence(seed, n=4, steps=10)
            pairs = pairs_from_sequence(z)
            dec = scale_amplitudes(exact_dmd(pairs), pairs, method="qr")
            lhs = dec.exact_modes @ (dec.eigenvalues * dec.amplitudes)
            assert np.linalg.norm(lhs - z[:, 1]) < 1e-9 * np.linalg.norm(z[:, 1])

    def test_initial_state_convention_fits_x0(self):
        _, z = _linear_sequence(11, n=4, steps=10)
        pairs = pairs_from_sequence(z)
        dec = scale_amplitudes(
            exact_dmd(pairs), pairs, method="qr", convention="x0"
        )
        lhs = dec.exact_modes @ dec.amplitudes
        assert np.linalg.norm(lhs - z[:, 0]) < 1e-9 * np.linalg.norm(z[:, 0])

    def test_gram_matches_qr_on_well_conditioned_data(self):
        for seed in range(6):
            _, z = _linear_sequence(seed, n=4, steps=12)
            pairs = pairs_from_sequence(z)
            base = exact_dmd(pairs)
            dq = scale_amplitudes(base, pairs, method="qr")
            dg = scale_amplitudes(base, pairs, method="gram")
            assert np.allclose(dq.amplitudes, dg.amplitudes, atol=1e-8)
            assert dg.scaling == "amplitude-gram"

    def test_gram_residual_matches_explicit_evaluation(self):
        _, z = _linear_sequence(7, n=4, steps=12)
        pairs = pairs_from_sequence(z)
        dec = scale_amplitudes(exact_dmd(pairs), pairs, method="gram")
        explicit = np.linalg.norm(
            dec.exact_modes @ (dec.eigenvalues * dec.amplitudes) - z[:, 1]
        )
        assert abs(dec.amplitude_residual - explicit) < 1e-10

    def test_rejects_unordered_pairs(self):
        rng = np.random.default_rng(5)
        pairs = pairs_from_arrays(rng.standard_normal((3, 6)), rng.standard_normal((3, 6)))
        dec = exact_dmd(pairs)
        with pytest.raises(ValueError, match="provenance"):
            scale_amplitudes(dec, pairs)

    def test_rejects_zero_eigenvalues_where_undefined(self):
        z = np.zeros((2, 3))
        z[0, 0] = 1.0
        z[1, 1] = 1.0
        pairs = pairs_from_sequence(z)
        dec = exact_dmd(pairs, include_zero_modes=True)
        with pytest.raises(ValueError, match="zero eigenvalue"):
            scale_amplitudes(dec, pairs, method="qr", convention="y0")
        with pytest.raises(ValueError, match="zero eigenvalue"):
            scale_amplitudes(dec, pairs, method="gram", convention="x0")
        out = scale_amplitudes(dec, pairs, method="qr", convention="x0")
        assert out.amplitudes is not None

    def test_explicit_vector_overrides_default(self):
        _, z = _linear_sequence(13, n=4, steps=10)
        pairs = pairs_from_sequence(z)
        target = z[:, 3]
        dec = scale_amplitudes(
            exact_dmd(pairs), pairs, method="qr", convention="x0", vector=target
        )
        lhs = dec.exact_modes @ dec.amplitudes
        assert np.linalg.norm(lhs - target) < 1e-9 * np.linalg.norm(target)


class TestConditioning:
    def test_orthogonal_factorization_beats_normal_equations(self):
        # trajectory of a system whose eigenvector matrix is ill conditioned;
        # the normal-equations route squares that conditioning and loses digits
        n, m = 6, 40
        rng = np.random.default_rng(5)
        u_m, _ = np.linalg.qr(rng.standard_normal((n, n)))
        v_m, _ = np.linalg.qr(rng.standard_normal((n, n)))
        svals = np.logspace(0, -7, n)
        s_mat = u_m @ np.diag(svals) @ v_m.T
        lam_true = 0.8 + 0.15 * rng.random(n)
        m_sys = s_mat @ np.diag(lam_true) @ np.linalg.inv(s_mat)
        z = np.empty((n, m))
        z[:, 0] = s_mat @ rng.standard_normal(n)
        for k in range(m - 1):
            z[:, k + 1] = m_sys @ z[:, k]
        pairs = pairs_from_sequence(z)
        dec = exact_dmd(pairs)
        cond = np.linalg.cond(dec.exact_modes)
        assert cond > 1e6
        dq = scale_amplitudes(dec, pairs, method="qr")
        dg = scale_amplitudes(dec, pairs, method="gram")
        assert dq.amplitude_residual <= dg.amplitude_residual
        assert dq.amplitude_residual < 1e-12
        assert dg.amplitude_residual > 1e-10
