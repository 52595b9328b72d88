"""Closed-form curves and the crossing interpolator."""

import numpy as np
import pytest

from wdpsim.theory import paired_qpsk_ber_awgn, qfunc, qpsk_ber_awgn, snr_at_ber


class TestQfunc:
    def test_reference_values(self):
        assert qfunc(0.0) == pytest.approx(0.5)
        assert float(qfunc(1.0)) == pytest.approx(0.158655, abs=1e-6)
        assert float(qfunc(3.719)) == pytest.approx(1e-4, rel=1e-2)

    def test_vectorized(self):
        out = qfunc(np.array([0.0, 1.0, 2.0]))
        assert out.shape == (3,)
        assert np.all(np.diff(out) < 0)


class TestQpskCurves:
    def test_symbol_snr_convention(self):
        # per-symbol SNR s equals 2 Eb/N0, so BER = Q(sqrt(s))
        assert float(qpsk_ber_awgn(0.0)) == pytest.approx(float(qfunc(1.0)))

    def test_pairing_curve_is_plain_curve_shifted_3db(self):
        grid = np.linspace(0, 12, 25)
        shifted = qpsk_ber_awgn(grid)
        paired = paired_qpsk_ber_awgn(grid - 10 * np.log10(2))
        np.testing.assert_allclose(paired, shifted, rtol=1e-9)

    def test_ber_1e4_crossings(self):
        # plain crosses 1e-4 near 11.4 dB, the paired curve near 8.4 dB
        grid = np.linspace(0, 14, 1401)
        plain_cross = snr_at_ber(grid, qpsk_ber_awgn(grid), 1e-4)
        paired_cross = snr_at_ber(grid, paired_qpsk_ber_awgn(grid), 1e-4)
        assert plain_cross == pytest.approx(11.42, abs=0.05)
        assert plain_cross - paired_cross == pytest.approx(3.01, abs=0.02)


class TestSnrAtBer:
    def test_interpolates_between_points(self):
        snr = [0.0, 2.0]
        ber = [1e-2, 1e-4]
        assert snr_at_ber(snr, ber, 1e-3) == pytest.approx(1.0)

    def test_skips_zero_points(self):
        snr = [0.0, 2.0, 4.0, 6.0]
        ber = [1e-2, 0.0, 1e-3, 1e-5]
        assert snr_at_ber(snr, ber, 1e-4) == pytest.approx(5.0)

    def test_no_crossing_raises(self):
        with pytest.raises(ValueError):
            snr_at_ber([0.0, 2.0], [1e-2, 1e-3], 1e-6)

    def test_shape_mismatch_raises(self):
        with pytest.raises(ValueError):
            snr_at_ber([0.0, 1.0], [1e-2], 1e-3)
