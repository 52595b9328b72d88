"""Channel state information estimation, comparison and equalization.

A receiver divides each demodulated training symbol by the training
symbol it believes was transmitted. The legitimate receiver knows the
privacy-mapped training vector; an eavesdropper only knows the public
one, so on the paired subcarriers it divides by the wrong reference and
estimates a coefficient with the correct amplitude but a wrong phase.
"""

import csv
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._io import write_atomic


class Observer(Enum):
    LEGITIMATE = "legitimate"
    EAVESDROPPER = "eavesdropper"


@dataclass(frozen=True)
class CsiEstimate:
    """Per-subcarrier complex channel coefficients for one observer."""

    observer: Observer
    coefficients: np.ndarray

    def __post_init__(self):
        coeff = np.asarray(self.coefficients, dtype=np.complex128)
        object.__setattr__(self, "coefficients", coeff)
        coeff.setflags(write=False)

    @property
    def amplitudes(self) -> np.ndarray:
        return np.abs(self.coefficients)

    @property
    def phases(self) -> np.ndarray:
        """Four-quadrant angles in (-pi, pi]."""
        return wrap_phase(np.angle(self.coefficients))

    def __len__(self) -> int:
        return len(self.coefficients)


def wrap_phase(angle) -> np.ndarray:
    """Wrap angles to (-pi, pi] (note: -pi maps to +pi)."""
    return np.pi - np.mod(np.pi - np.asarray(angle, dtype=float), 2.0 * np.pi)


def estimate_csi(received_training, reference, observer: Observer) -> CsiEstimate:
    """Single-shot estimate: coefficients[k] = received[k] / reference[k]."""
    received = np.asarray(received_training, dtype=np.complex128)
    ref = np.asarray(reference, dtype=np.complex128)
    if received.shape != ref.shape:
        raise ValueError(
            f"received ({received.shape}) and reference ({ref.shape}) lengths differ"
        )
    if np.any(ref == 0):
        raise ValueError("reference contains zero symbols; estimate undefined")
    return CsiEstimate(observer=observer, coefficients=received / ref)


def csi_phase_gap(legitimate: CsiEstimate, eavesdropper: CsiEstimate) -> np.ndarray:
    """Wrapped per-subcarrier phase difference (eavesdropper - legitimate).

    Zero wherever both observers divide by the same reference symbol;
    nonzero on the paired subcarriers, where the privacy mapping makes
    the references disagree. Computed from the coefficient product so an
    exactly-opposite pair lands on +pi rather than straddling the wrap
    boundary.
    """
    if len(legitimate) != len(eavesdropper):
        raise ValueError("estimates cover different subcarrier counts")
    product = eavesdropper.coefficients * np.conj(legitimate.coefficients)
    return wrap_phase(np.angle(product))


def equalize(symbols, estimate: CsiEstimate) -> np.ndarray:
    """One-tap equalization: divide each subcarrier by its coefficient.

    ``symbols`` may be a length-N vector or a (B, N) block.
    """
    r = np.asarray(symbols, dtype=np.complex128)
    coeff = estimate.coefficients
    if r.shape[-1] != len(coeff):
        raise ValueError(
            f"symbol length {r.shape[-1]} != coefficient count {len(coeff)}"
        )
    if np.any(coeff == 0):
        raise ValueError("estimate contains zero coefficients; cannot equalize")
    return r / coeff


def write_csi_csv(path, legitimate: CsiEstimate, eavesdropper: CsiEstimate) -> None:
    """Write both estimates as CSV rows (one per subcarrier and observer).

    Header: ``subcarrier,observer,amp,phase,re,im``. The file is written
    atomically (temp file then rename).
    """
    write_atomic(path, lambda fh: _write_csi_rows(fh, legitimate, eavesdropper))


def csi_rows(estimate: CsiEstimate) -> list[dict]:
    """Flatten an estimate into row dicts matching the CSV columns."""
    rows = []
    amps = estimate.amplitudes
    phases = estimate.phases
    coeff = estimate.coefficients
    for k in range(len(estimate)):
        rows.append(
            {
                "subcarrier": k,
                "observer": estimate.observer.value,
                "amp": float(amps[k]),
                "phase": float(phases[k]),
                "re": float(coeff[k].real),
                "im": float(coeff[k].imag),
            }
        )
    return rows


def _write_csi_rows(fh, legitimate: CsiEstimate, eavesdropper: CsiEstimate) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["subcarrier", "observer", "amp", "phase", "re", "im"])
    for estimate in (legitimate, eavesdropper):
        for row in csi_rows(estimate):
            writer.writerow(
                [
                    row["subcarrier"],
                    row["observer"],
                    f"{row['amp']:.12g}",
                    f"{row['phase']:.12g}",
                    f"{row['re']:.12g}",
                    f"{row['im']:.12g}",
                ]
            )
