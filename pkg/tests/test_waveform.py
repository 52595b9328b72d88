"""Subcarrier matrix construction, modulation round trips, prefix handling."""

import numpy as np
import pytest

from wdpsim.mapping import qpsk_map
from wdpsim.waveform import (
    add_cyclic_prefix,
    build_subcarrier_matrix,
    correlation_matrix,
    demodulate,
    modulate,
    remove_cyclic_prefix,
)


def kernel_entry(q: int, k: int, alpha: float, n_samples: int) -> complex:
    """Independent elementwise evaluation of the subcarrier kernel."""
    return np.exp(2j * np.pi * q * k * alpha / n_samples) / np.sqrt(n_samples)


def direct_correlation(n_subcarriers: int, n_samples: int, alpha: float) -> np.ndarray:
    """Correlation by direct summation, no matrix products involved."""
    c = np.zeros((n_subcarriers, n_subcarriers), dtype=np.complex128)
    for kp in range(n_subcarriers):
        for k in range(n_subcarriers):
            c[kp, k] = sum(
                np.conj(kernel_entry(q, kp, alpha, n_samples))
                * kernel_entry(q, k, alpha, n_samples)
                for q in range(n_samples)
            )
    return c


class TestBuildSubcarrierMatrix:
    def test_two_point_orthonormal_kernel(self):
        m = build_subcarrier_matrix(2, 2, 1.0)
        expected = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
        np.testing.assert_allclose(m.entries, expected, atol=1e-15)
        np.testing.assert_allclose(correlation_matrix(m), np.eye(2), atol=1e-15)

    def test_default_dimensions_unitary(self):
        m = build_subcarrier_matrix(64, 128, 1.0)
        np.testing.assert_allclose(correlation_matrix(m), np.eye(64), atol=1e-12)

    def test_compressed_two_point_off_diagonal(self):
        m = build_subcarrier_matrix(2, 2, 0.5)
        c = correlation_matrix(m)
        oracle = direct_correlation(2, 2, 0.5)
        np.testing.assert_allclose(c, oracle, atol=1e-14)
        assert abs(c[0, 1]) == pytest.approx(0.7071, abs=1e-4)

    def test_unit_modulus_entries(self):
        m = build_subcarrier_matrix(8, 16, 0.77)
        np.testing.assert_allclose(np.abs(m.entries), 1 / np.sqrt(16), atol=1e-14)

    def test_kernel_periodicity(self):
        # entry depends only on (q*k*alpha mod Q)
        m = build_subcarrier_matrix(16, 32, 0.8)
        q_idx, k_idx = np.meshgrid(np.arange(32), np.arange(16), indexing="ij")
        reduced = np.mod(q_idx * k_idx * 0.8, 32.0)
        expected = np.exp(2j * np.pi * reduced / 32) / np.sqrt(32)
        np.testing.assert_allclose(m.entries, expected, atol=1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            build_subcarrier_matrix(4, 2, 1.0)
        with pytest.raises(ValueError):
            build_subcarrier_matrix(4, 8, 0.0)
        with pytest.raises(ValueError):
            build_subcarrier_matrix(4, 8, 1.5)
        with pytest.raises(ValueError):
            build_subcarrier_matrix(0, 8, 1.0)

    def test_entries_are_immutable(self):
        m = build_subcarrier_matrix(4, 8, 1.0)
        with pytest.raises(ValueError):
            m.entries[0, 0] = 0


class TestModulate:
    def test_zero_vector_maps_to_zero(self):
        m = build_subcarrier_matrix(4, 4, 1.0)
        np.testing.assert_array_equal(modulate(m, np.zeros(4)), np.zeros(4))

    def test_basis_vector_extracts_first_column(self):
        m = build_subcarrier_matrix(2, 2, 1.0)
        np.testing.assert_allclose(modulate(m, [1, 0]), np.array([1, 1]) / np.sqrt(2), atol=1e-15)

    def test_matches_elementwise_kernel_evaluation(self):
        m = build_subcarrier_matrix(2, 4, 0.8)
        s = np.array([1.0, 1j])
        expected = np.array(
            [
                kernel_entry(q, 0, 0.8, 4) * s[0] + kernel_entry(q, 1, 0.8, 4) * s[1]
                for q in range(4)
            ]
        )
        np.testing.assert_allclose(modulate(m, s), expected, atol=1e-14)

    def test_energy_preserved_at_alpha_one(self):
        rng = np.random.default_rng(7)
        m = build_subcarrier_matrix(64, 128, 1.0)
        s = qpsk_map(rng.integers(0, 2, 128))
        assert np.linalg.norm(modulate(m, s)) == pytest.approx(np.linalg.norm(s), abs=1e-12)

    def test_length_mismatch_rejected(self):
        m = build_subcarrier_matrix(4, 8, 1.0)
        with pytest.raises(ValueError):
            modulate(m, np.zeros(5))


class TestDemodulate:
    def test_round_trip_orthogonal(self):
        rng = np.random.default_rng(3)
        m = build_subcarrier_matrix(64, 128, 1.0)
        s = qpsk_map(rng.integers(0, 2, 128))
        np.testing.assert_allclose(demodulate(m, modulate(m, s)), s, atol=1e-12)

    def test_compressed_round_trip_residual_is_ici(self):
        rng = np.random.default_rng(4)
        m = build_subcarrier_matrix(8, 16, 0.8)
        s = qpsk_map(rng.integers(0, 2, 16))
        r = demodulate(m, modulate(m, s))
        assert not np.allclose(r, s, atol=1e-6)
        c = direct_correlation(8, 16, 0.8)
        np.testing.assert_allclose(r - s, (c - np.eye(8)) @ s, atol=1e-12)

    def test_zero_in_zero_out(self):
        m = build_subcarrier_matrix(4, 8, 0.9)
        np.testing.assert_array_equal(demodulate(m, np.zeros(8)), np.zeros(4))

    def test_length_mismatch_rejected(self):
        m = build_subcarrier_matrix(4, 8, 1.0)
        with pytest.raises(ValueError):
            demodulate(m, np.zeros(9))


class TestCyclicPrefix:
    def test_zero_length_prefix_is_identity(self):
        x = np.arange(6, dtype=complex)
        np.testing.assert_array_equal(add_cyclic_prefix(x, 0), x)
        np.testing.assert_array_equal(remove_cyclic_prefix(x, 0), x)

    def test_definition(self):
        x = np.array([1, 2, 3, 4], dtype=complex)
        np.testing.assert_array_equal(add_cyclic_prefix(x, 2), [3, 4, 1, 2, 3, 4])

    def test_suffix_copy_property_default_sizes(self):
        rng = np.random.default_rng(5)
        x = rng.normal(size=128) + 1j * rng.normal(size=128)
        y = add_cyclic_prefix(x, 8)
        assert len(y) == 136
        np.testing.assert_array_equal(y[:8], x[-8:])
        np.testing.assert_array_equal(y[8:], x)

    def test_round_trip(self):
        rng = np.random.default_rng(6)
        x = rng.normal(size=32) + 1j * rng.normal(size=32)
        for cp_len in (0, 1, 8, 32):
            np.testing.assert_array_equal(
                remove_cyclic_prefix(add_cyclic_prefix(x, cp_len), cp_len), x
            )

    def test_remove_returns_tail(self):
        y = np.arange(136, dtype=complex)
        assert len(remove_cyclic_prefix(y, 8)) == 128

    def test_rejects_oversized_prefix(self):
        with pytest.raises(ValueError):
            add_cyclic_prefix(np.zeros(4), 5)
        with pytest.raises(ValueError):
            remove_cyclic_prefix(np.zeros(4), 4)
        with pytest.raises(ValueError):
            add_cyclic_prefix(np.zeros(4), -1)

    def test_block_shape_supported(self):
        x = np.arange(12, dtype=complex).reshape(4, 3)
        y = add_cyclic_prefix(x, 2)
        assert y.shape == (6, 3)
        np.testing.assert_array_equal(remove_cyclic_prefix(y, 2), x)


class TestCorrelationMatrix:
    def test_identity_at_alpha_one(self):
        m = build_subcarrier_matrix(64, 128, 1.0)
        np.testing.assert_allclose(correlation_matrix(m), np.eye(64), atol=1e-12)

    def test_hermitian_and_unit_diagonal(self):
        m = build_subcarrier_matrix(64, 128, 0.8)
        c = correlation_matrix(m)
        np.testing.assert_allclose(c, c.conj().T, atol=1e-12)
        np.testing.assert_allclose(np.diag(c), np.ones(64), atol=1e-12)

    def test_off_diagonal_energy_grows_as_alpha_shrinks(self):
        def offdiag_energy(alpha):
            c = correlation_matrix(build_subcarrier_matrix(64, 128, alpha))
            return float(np.sum(np.abs(c - np.diag(np.diag(c))) ** 2))

        assert offdiag_energy(1.0) < 1e-24
        energies = [offdiag_energy(a) for a in (0.95, 0.9, 0.85, 0.8, 0.75)]
        assert all(e > 0 for e in energies)
        assert all(b > a for a, b in zip(energies, energies[1:]))
