"""Subcarrier matrix construction, modulation and matched-filter demodulation.

The transmitter maps an N-symbol vector onto Q time samples through a
Q x N matrix whose columns are complex exponentials. A bandwidth
compression factor ``alpha`` scales the exponent: ``alpha = 1`` gives
orthogonal (OFDM-style) subcarriers, ``alpha < 1`` packs them closer
together at the cost of inter-carrier interference. Demodulation is the
matched filter, i.e. the conjugate transpose of the same matrix.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SubcarrierMatrix:
    """Q x N modulation matrix with entries exp(2j*pi*q*k*alpha/Q)/sqrt(Q).

    Attributes:
        n_subcarriers: number of data subcarriers N (columns).
        n_samples: time samples per symbol body Q (rows), Q >= N.
        alpha: bandwidth compression factor in (0, 1].
        entries: the complex matrix itself.
    """

    n_subcarriers: int
    n_samples: int
    alpha: float
    entries: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "entries", np.asarray(self.entries, dtype=np.complex128))
        self.entries.setflags(write=False)


def build_subcarrier_matrix(n_subcarriers: int, n_samples: int, alpha: float) -> SubcarrierMatrix:
    """Build the modulation matrix for N subcarriers over Q samples.

    Entry (q, k) is exp(2j*pi*q*k*alpha/Q)/sqrt(Q). At alpha = 1 the
    columns are orthonormal, so demodulation inverts modulation exactly.

    Raises:
        ValueError: if n_samples < n_subcarriers, either count is not a
            positive integer, or alpha is outside (0, 1].
    """
    if n_subcarriers < 1 or n_samples < 1:
        raise ValueError("n_subcarriers and n_samples must be positive")
    if n_samples < n_subcarriers:
        raise ValueError(
            f"n_samples ({n_samples}) must be >= n_subcarriers ({n_subcarriers})"
        )
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must be in (0, 1], got {alpha}")
    q = np.arange(n_samples)[:, None]
    k = np.arange(n_subcarriers)[None, :]
    entries = np.exp(2j * np.pi * q * k * alpha / n_samples) / np.sqrt(n_samples)
    return SubcarrierMatrix(n_subcarriers, n_samples, float(alpha), entries)


def modulate(matrix: SubcarrierMatrix, symbols: np.ndarray) -> np.ndarray:
    """Map symbol vector(s) to time samples: X = F @ S.

    ``symbols`` is a length-N vector or an (N, B) block of B frames;
    the result has length Q (or shape (Q, B)).
    """
    s = np.asarray(symbols, dtype=np.complex128)
    if s.shape[0] != matrix.n_subcarriers:
        raise ValueError(
            f"symbol vector length {s.shape[0]} != n_subcarriers {matrix.n_subcarriers}"
        )
    return matrix.entries @ s


def demodulate(matrix: SubcarrierMatrix, samples: np.ndarray) -> np.ndarray:
    """Matched-filter demodulation: R = conj(F).T @ Y.

    ``samples`` must already have any prefix removed (length Q, or
    shape (Q, B) for a block). At alpha = 1 this inverts ``modulate``.
    """
    y = np.asarray(samples, dtype=np.complex128)
    if y.shape[0] != matrix.n_samples:
        raise ValueError(
            f"sample vector length {y.shape[0]} != n_samples {matrix.n_samples}"
        )
    return matrix.entries.conj().T @ y


def add_cyclic_prefix(samples: np.ndarray, cp_len: int) -> np.ndarray:
    """Prepend the last ``cp_len`` samples of each symbol body.

    Works on a length-Q vector or a (Q, B) block (time on axis 0).
    """
    x = np.asarray(samples)
    if cp_len < 0:
        raise ValueError("cp_len must be non-negative")
    if cp_len > x.shape[0]:
        raise ValueError(f"cp_len ({cp_len}) exceeds symbol length ({x.shape[0]})")
    if cp_len == 0:
        return x.copy()
    return np.concatenate([x[-cp_len:], x], axis=0)


def remove_cyclic_prefix(samples: np.ndarray, cp_len: int) -> np.ndarray:
    """Drop the first ``cp_len`` samples, inverting ``add_cyclic_prefix``."""
    y = np.asarray(samples)
    if cp_len < 0:
        raise ValueError("cp_len must be non-negative")
    if cp_len >= y.shape[0]:
        raise ValueError(f"cp_len ({cp_len}) leaves no symbol body (length {y.shape[0]})")
    return y[cp_len:].copy()


def correlation_matrix(matrix: SubcarrierMatrix) -> np.ndarray:
    """Subcarrier cross-correlation C = conj(F).T @ F.

    Hermitian with unit diagonal; identity at alpha = 1, nonzero
    off-diagonals (inter-carrier interference) for alpha < 1.
    """
    return matrix.entries.conj().T @ matrix.entries
