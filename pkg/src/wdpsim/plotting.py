"""Figure rendering for BER sweeps and CSI dumps (file output only)."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csi import CsiEstimate
from .theory import paired_qpsk_ber_awgn, qpsk_ber_awgn


def save_ber_figure(records, path, title: str | None = None, theory: bool = False) -> None:
    """Render BER-vs-SNR curves (one line per scenario id) to ``path``.

    Zero-error points cannot be drawn on the log axis and are omitted.
    With ``theory`` set, closed-form AWGN QPSK references are overlaid.
    """
    by_id: dict[str, list] = {}
    for r in records:
        by_id.setdefault(r.scenario_id, []).append(r)

    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    for scenario_id, points in by_id.items():
        points = sorted(points, key=lambda r: r.snr_db)
        snr = np.array([p.snr_db for p in points])
        ber = np.array([p.ber for p in points])
        ci = np.array([p.ci_halfwidth for p in points])
        shown = ber > 0
        if not shown.any():
            continue
        lower = np.minimum(ci[shown], ber[shown] * 0.999)
        ax.errorbar(
            snr[shown],
            ber[shown],
            yerr=np.vstack([lower, ci[shown]]),
            marker="o",
            capsize=3,
            label=scenario_id,
        )
    if theory:
        grid = np.linspace(
            min(r.snr_db for r in records), max(r.snr_db for r in records), 200
        )
        ax.plot(grid, qpsk_ber_awgn(grid), "k--", linewidth=1, label="QPSK theory")
        ax.plot(
            grid, paired_qpsk_ber_awgn(grid), "k:", linewidth=1, label="paired QPSK theory"
        )
    ax.set_yscale("log")
    ax.set_xlabel("per-subcarrier symbol SNR (dB)")
    ax.set_ylabel("BER")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", linestyle=":", alpha=0.6)
    ax.legend(fontsize=8)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def save_csi_figure(
    legitimate: CsiEstimate, eavesdropper: CsiEstimate, path, title: str | None = None
) -> None:
    """Render amplitude and phase stem plots for both observers."""
    fig, axes = plt.subplots(2, 2, figsize=(9.0, 6.0), sharex=True)
    panels = [
        (axes[0, 0], legitimate.amplitudes, "legitimate amplitude"),
        (axes[0, 1], eavesdropper.amplitudes, "eavesdropper amplitude"),
        (axes[1, 0], legitimate.phases, "legitimate phase (rad)"),
        (axes[1, 1], eavesdropper.phases, "eavesdropper phase (rad)"),
    ]
    subcarriers = np.arange(len(legitimate))
    for ax, values, label in panels:
        ax.stem(subcarriers, values, basefmt=" ", markerfmt=".")
        ax.set_title(label, fontsize=10)
        ax.grid(True, linestyle=":", alpha=0.6)
    for ax in axes[1]:
        ax.set_xlabel("subcarrier")
        ax.set_ylim(-np.pi * 1.1, np.pi * 1.1)
    if title:
        fig.suptitle(title)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
