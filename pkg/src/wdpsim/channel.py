"""Multipath FIR channel, calibrated noise injection and composite matrices."""

import math
from dataclasses import dataclass

import numpy as np

from .waveform import SubcarrierMatrix


@dataclass(frozen=True)
class MultipathChannel:
    """Static FIR channel: a sparse list of (delay, complex gain) taps.

    Delays are sample counts and must be strictly increasing; the first
    need not be zero.
    """

    taps: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        if len(self.taps) == 0:
            raise ValueError("channel needs at least one tap")
        taps = tuple((int(d), complex(g)) for d, g in self.taps)
        delays = [d for d, _ in taps]
        if any(d < 0 for d in delays):
            raise ValueError("tap delays must be non-negative")
        if any(b <= a for a, b in zip(delays, delays[1:])):
            raise ValueError(f"tap delays must be strictly increasing, got {delays}")
        object.__setattr__(self, "taps", taps)

    @property
    def max_delay(self) -> int:
        return self.taps[-1][0]

    def impulse_response(self, length: int) -> np.ndarray:
        """Dense impulse response padded with zeros to ``length``."""
        if length <= self.max_delay:
            raise ValueError(f"length {length} must exceed max delay {self.max_delay}")
        h = np.zeros(length, dtype=np.complex128)
        for d, g in self.taps:
            h[d] = g
        return h


def default_channel() -> MultipathChannel:
    """Three-path frequency-selective test channel, max delay 5 samples."""
    return MultipathChannel(
        taps=((0, complex(0.8655, 0.0)), (3, complex(0.0, -0.255)), (5, complex(0.0, -0.4312)))
    )


def identity_channel() -> MultipathChannel:
    """Single unit tap at delay zero (distortion-free)."""
    return MultipathChannel(taps=((0, 1.0 + 0j),))


def apply_channel(channel: MultipathChannel, samples: np.ndarray) -> np.ndarray:
    """Linear convolution truncated to the input length.

    y[t] = sum over taps of gain * x[t - delay], with x[t < 0] = 0
    (each frame starts from zero channel state). Works on a vector or a
    (T, B) block with time on axis 0.
    """
    x = np.asarray(samples, dtype=np.complex128)
    if x.shape[0] < channel.max_delay + 1:
        raise ValueError(
            f"input length {x.shape[0]} shorter than channel memory {channel.max_delay + 1}"
        )
    y = np.zeros_like(x)
    for delay, gain in channel.taps:
        if delay == 0:
            y += gain * x
        else:
            y[delay:] += gain * x[:-delay]
    return y


@dataclass(frozen=True)
class NoiseSpec:
    """Complex AWGN at a per-subcarrier symbol SNR, reproducible by seed.

    ``snr_db`` is referenced to unit symbol energy at the demodulator
    output: the per-sample variance equals 10**(-snr_db/10) because the
    matched-filter columns have unit norm. ``math.inf`` disables noise.
    """

    snr_db: float
    seed: int = 0


def noise_variance(snr_db: float) -> float:
    """Per-sample complex noise variance for a given symbol SNR in dB."""
    if math.isinf(snr_db) and snr_db > 0:
        return 0.0
    return 10.0 ** (-snr_db / 10.0)


def add_awgn(samples: np.ndarray, spec: NoiseSpec) -> np.ndarray:
    """Add circularly-symmetric complex Gaussian noise to ``samples``."""
    x = np.asarray(samples, dtype=np.complex128)
    variance = noise_variance(spec.snr_db)
    if variance == 0.0:
        return x.copy()
    rng = np.random.default_rng(spec.seed)
    scale = math.sqrt(variance / 2.0)
    noise = rng.normal(scale=scale, size=x.shape) + 1j * rng.normal(scale=scale, size=x.shape)
    return x + noise


def frequency_response(channel: MultipathChannel, matrix: SubcarrierMatrix) -> np.ndarray:
    """Per-subcarrier channel coefficient H(k) seen through ``matrix``.

    H(k) = sum over taps of gain * exp(-2j*pi*k*alpha*delay/Q). At
    alpha = 1 with a sufficient cyclic prefix this is exactly the
    diagonal of the composite matrix.
    """
    k = np.arange(matrix.n_subcarriers)
    h = np.zeros(matrix.n_subcarriers, dtype=np.complex128)
    for delay, gain in channel.taps:
        h += gain * np.exp(-2j * np.pi * k * matrix.alpha * delay / matrix.n_samples)
    return h


def composite_matrix(
    channel: MultipathChannel, matrix: SubcarrierMatrix, cp_len: int
) -> np.ndarray:
    """Demodulator-view channel matrix G = conj(F).T @ H_circ @ F.

    ``H_circ`` is the circulant matrix equivalent to transmitting with a
    cyclic prefix of ``cp_len`` samples over the FIR channel; the model
    is only valid when the prefix covers the channel memory.
    """
    if cp_len < channel.max_delay:
        raise ValueError(
            f"cp_len ({cp_len}) must cover the channel memory ({channel.max_delay})"
        )
    q = matrix.n_samples
    h = channel.impulse_response(q)
    idx = (np.arange(q)[:, None] - np.arange(q)[None, :]) % q
    h_circ = h[idx]
    f = matrix.entries
    return f.conj().T @ h_circ @ f


def parse_channel_text(text: str) -> MultipathChannel:
    """Parse a channel definition: one ``delay real_gain imag_gain`` per line.

    Blank lines and ``#`` comments are ignored. Delays must be strictly
    increasing.
    """
    taps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 3:
            raise ValueError(
                f"channel file line {lineno}: expected 'delay real imag', got {raw!r}"
            )
        try:
            delay = int(fields[0])
            gain = complex(float(fields[1]), float(fields[2]))
        except ValueError as exc:
            raise ValueError(f"channel file line {lineno}: {exc}") from None
        taps.append((delay, gain))
    if not taps:
        raise ValueError("channel file defines no taps")
    return MultipathChannel(taps=tuple(taps))


def load_channel_file(path) -> MultipathChannel:
    """Read a channel definition file (see ``parse_channel_text``)."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_channel_text(fh.read())
