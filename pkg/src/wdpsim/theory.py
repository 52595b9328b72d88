"""Closed-form QPSK error rates used as Monte-Carlo oracles."""

import numpy as np
from scipy.special import erfc


def qfunc(x):
    """Gaussian tail probability Q(x)."""
    return 0.5 * erfc(np.asarray(x, dtype=float) / np.sqrt(2.0))


def qpsk_ber_awgn(snr_db):
    """Uncoded Gray-mapped QPSK bit error rate in AWGN.

    ``snr_db`` is per-subcarrier symbol SNR (Es/N0); with two bits per
    symbol this equals Q(sqrt(Es/N0)) = Q(sqrt(2 Eb/N0)).
    """
    snr = 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)
    return qfunc(np.sqrt(snr))


def paired_qpsk_ber_awgn(snr_db):
    """QPSK bit error rate with opposite-sign pair combining in AWGN.

    The pair differencing doubles the symbol amplitude while only
    doubling the noise variance, a 3 dB shift of the plain curve.
    """
    snr = 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)
    return qfunc(np.sqrt(2.0 * snr))


def snr_at_ber(snr_db, ber, target: float) -> float:
    """SNR where a measured curve crosses ``target``, by log-linear interpolation.

    ``snr_db`` must be ascending and ``ber`` generally decreasing; the
    first bracketing segment is used. Points with ber == 0 cannot be
    interpolated in log space and are skipped.

    Raises:
        ValueError: if the curve never crosses the target.
    """
    snr_db = np.asarray(snr_db, dtype=float)
    ber = np.asarray(ber, dtype=float)
    if snr_db.shape != ber.shape or snr_db.ndim != 1:
        raise ValueError("snr_db and ber must be 1-D arrays of equal length")
    for i in range(len(snr_db) - 1):
        b0, b1 = ber[i], ber[i + 1]
        if b0 <= 0 or b1 <= 0:
            continue
        if (b0 - target) == 0.0:
            return float(snr_db[i])
        if (b0 > target) != (b1 > target) or b1 == target:
            frac = (np.log10(b0) - np.log10(target)) / (np.log10(b0) - np.log10(b1))
            return float(snr_db[i] + frac * (snr_db[i + 1] - snr_db[i]))
    raise ValueError(f"curve never crosses ber = {target:g}")
