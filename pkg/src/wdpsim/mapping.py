"""QPSK mapping and the opposite-sign subcarrier pairing.

Privacy-preserving frames place each information symbol on an
even-index subcarrier and its negated copy on the next (odd-index)
subcarrier. A receiver that knows the pairing subtracts each pair,
doubling the signal amplitude; a receiver that assumes the public
training sequence estimates wrong channel phases on the paired
subcarriers.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

_SQRT2 = np.sqrt(2.0)


class PreambleStyle(Enum):
    """How the standard (public) training vector relates to the pairing."""

    RANDOM = "random"  # independent QPSK symbol on every subcarrier
    PAIRED = "paired"  # each even-index symbol repeated on the odd index


def qpsk_map(bits) -> np.ndarray:
    """Gray-map bit pairs to unit-energy QPSK symbols.

    00 -> (+1+j)/sqrt2, 01 -> (-1+j)/sqrt2, 11 -> (-1-j)/sqrt2,
    10 -> (+1-j)/sqrt2. Operates on the last axis, which must have even
    length; output has half that length.
    """
    b = np.asarray(bits)
    if b.shape[-1] % 2 != 0:
        raise ValueError(f"bit count ({b.shape[-1]}) must be even")
    b_imag = b[..., 0::2]
    b_real = b[..., 1::2]
    return ((1 - 2 * b_real) + 1j * (1 - 2 * b_imag)) / _SQRT2


def qpsk_demap(symbols) -> np.ndarray:
    """Hard-decision QPSK demapping, inverse of ``qpsk_map``.

    Sign decisions on real and imaginary parts; an exact-zero component
    decides bit 0.
    """
    s = np.asarray(symbols)
    bits = np.empty(s.shape[:-1] + (2 * s.shape[-1],), dtype=np.int64)
    bits[..., 0::2] = s.imag < 0
    bits[..., 1::2] = s.real < 0
    return bits


def wdp_expand(effective) -> np.ndarray:
    """Expand N/2 information symbols to N subcarriers as (+s, -s) pairs.

    out[2m] = effective[m], out[2m+1] = -effective[m]. Operates on the
    last axis.
    """
    eff = np.asarray(effective, dtype=np.complex128)
    out = np.empty(eff.shape[:-1] + (2 * eff.shape[-1],), dtype=np.complex128)
    out[..., 0::2] = eff
    out[..., 1::2] = -eff
    return out


def wdp_combine(demodulated) -> np.ndarray:
    """Pairwise receiver combining: out[m] = in[2m] - in[2m+1].

    On a noiseless orthogonal link this doubles each information symbol
    (the even slot carries +s, the odd slot -s).
    """
    r = np.asarray(demodulated)
    if r.shape[-1] % 2 != 0:
        raise ValueError(f"input length ({r.shape[-1]}) must be even")
    return r[..., 0::2] - r[..., 1::2]


@dataclass(frozen=True)
class PreamblePair:
    """Public training vector and its privacy-mapped counterpart.

    ``standard`` is what an outside observer believes was transmitted;
    ``wdp`` is what the transmitter actually sends. Both are unit-modulus
    QPSK subcarrier-for-subcarrier, and ``wdp`` reuses the information
    (even-index) entries of ``standard`` with negated copies on the odd
    indices.
    """

    standard: np.ndarray
    wdp: np.ndarray


def build_preambles(
    seed: int, n_subcarriers: int, style: PreambleStyle = PreambleStyle.RANDOM
) -> PreamblePair:
    """Draw a deterministic preamble pair for ``n_subcarriers`` (even).

    With ``PreambleStyle.PAIRED`` the standard vector repeats each
    even-index symbol on the following odd index, so the wdp vector is
    its exact negation there (phase discrepancy of exactly pi at every
    paired subcarrier). With ``RANDOM`` every standard entry is an
    independent draw and the paired-index discrepancy is a random
    multiple of pi/2.
    """
    if n_subcarriers % 2 != 0:
        raise ValueError("n_subcarriers must be even")
    rng = np.random.default_rng(seed)
    standard = qpsk_map(rng.integers(0, 2, size=2 * n_subcarriers))
    if style is PreambleStyle.PAIRED:
        standard = standard.copy()
        standard[1::2] = standard[0::2]
    wdp = wdp_expand(standard[0::2])
    return PreamblePair(standard=standard, wdp=wdp)


@dataclass(frozen=True)
class CompositeEffectiveMatrix:
    """Composite channel views seen by the paired transmission.

    ``g`` is the N x N demodulator-view matrix. ``g_prime`` (N x N/2)
    folds the transmit-side pairing into it: column m is
    g[:, 2m] - g[:, 2m+1], so the demodulated frame equals
    g_prime @ effective_symbols. ``g_double_prime`` (N/2 x N/2)
    additionally folds the receive-side pair differencing:
    row i is g_prime[2i] - g_prime[2i+1], so the combined symbols equal
    g_double_prime @ effective_symbols. Its off-diagonal energy is the
    residual inter-carrier interference after the pairing cancellation.
    """

    g: np.ndarray
    g_prime: np.ndarray
    g_double_prime: np.ndarray


def _expansion_matrix(n: int) -> np.ndarray:
    e = np.zeros((n, n // 2))
    cols = np.arange(n // 2)
    e[2 * cols, cols] = 1.0
    e[2 * cols + 1, cols] = -1.0
    return e


def effective_composite(g: np.ndarray) -> CompositeEffectiveMatrix:
    """Derive the pairing-folded views of a composite matrix ``g``."""
    g = np.asarray(g, dtype=np.complex128)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError(f"g must be square, got shape {g.shape}")
    n = g.shape[0]
    if n % 2 != 0:
        raise ValueError("g dimension must be even")
    expand = _expansion_matrix(n)
    g_prime = g @ expand
    g_double_prime = expand.T @ g_prime
    return CompositeEffectiveMatrix(g=g, g_prime=g_prime, g_double_prime=g_double_prime)


def interference_ratio(g_double_prime: np.ndarray) -> float:
    """Residual interference power over useful power of a combined matrix.

    sum of squared off-diagonal magnitudes divided by sum of squared
    diagonal magnitudes. Zero on an orthogonal link; grows as the
    bandwidth compression factor shrinks.
    """
    gdp = np.asarray(g_double_prime)
    diag_power = float(np.sum(np.abs(np.diag(gdp)) ** 2))
    total_power = float(np.sum(np.abs(gdp) ** 2))
    return (total_power - diag_power) / diag_power
