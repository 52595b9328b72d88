"""Scenario-driven Monte-Carlo engine.

Frames are simulated in batches of up to ``BATCH_FRAMES``. Each batch
draws from its own generator seeded by (master seed, scenario id, SNR
point, batch index), and the stopping rule folds batch counts in batch
order, so results are bit-identical for any worker count: workers only
decide how many batches are in flight, never what any batch contains.

Per-frame receiver chain: map -> (pair-expand) -> modulate -> cyclic
prefix -> channel -> noise -> strip prefix -> demodulate -> one-tap
equalize -> (pair-combine) -> demap. Equalization precedes combining
because channel state is estimated per subcarrier while the combined
stream has only half as many entries.
"""

import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

import numpy as np

from .channel import apply_channel, frequency_response, noise_variance
from .csi import CsiEstimate, Observer, estimate_csi
from .mapping import build_preambles, qpsk_demap, qpsk_map, wdp_combine, wdp_expand
from .results import BerRecord, make_record
from .scenario import CsiMode, MappingKind, Scenario
from .waveform import add_cyclic_prefix, build_subcarrier_matrix, modulate, demodulate

BATCH_FRAMES = 512

# stream tags keeping the per-scenario preamble and the one-shot CSI
# experiment independent of the per-point data streams
_PREAMBLE_TAG = 0x5052_4541
_CSI_NOISE_TAG = 0x4353_4945


def _scenario_hash(scenario_id: str) -> int:
    return zlib.crc32(scenario_id.encode("utf-8"))


def _snr_key(snr_db: float) -> int:
    # millidecibel resolution, offset to stay non-negative
    return int(round((snr_db + 1000.0) * 1000.0))


def _batch_seed(scenario: Scenario, snr_db: float, batch_index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence(
        [
            scenario.master_seed,
            _scenario_hash(scenario.scenario_id),
            _snr_key(snr_db),
            batch_index,
        ]
    )


def _preamble_seed(scenario: Scenario) -> np.random.SeedSequence:
    return np.random.SeedSequence(
        [scenario.master_seed, _scenario_hash(scenario.scenario_id), _PREAMBLE_TAG]
    )


def _wdp_power_scale(matrix) -> float:
    """Transmit scale keeping paired-frame power independent of alpha.

    The opposite-sign pair radiates 2 - 2*Re(c1) units of waveform
    energy per information symbol, where c1 is the adjacent-subcarrier
    correlation; the scale normalizes that back to the orthogonal
    value 2. Exactly 1.0 at alpha = 1.
    """
    if matrix.alpha == 1.0:
        return 1.0
    c1 = np.vdot(matrix.entries[:, 0], matrix.entries[:, 1])
    return float(np.sqrt(2.0 / (2.0 - 2.0 * c1.real)))


def _complex_noise(rng: np.random.Generator, sigma2: float, shape) -> np.ndarray:
    scale = np.sqrt(sigma2 / 2.0)
    return rng.normal(scale=scale, size=shape) + 1j * rng.normal(scale=scale, size=shape)


def _through_link(scenario: Scenario, f_tx, symbols) -> np.ndarray:
    """Noiseless transmit chain; returns prefix-stripped body samples."""
    x = modulate(f_tx, symbols)
    x = add_cyclic_prefix(x, scenario.cp_len)
    if scenario.channel is not None:
        x = apply_channel(scenario.channel, x)
    return x[scenario.cp_len :]


def _training_references(scenario: Scenario):
    """(transmitted training vector, legitimate reference, eavesdropper reference)."""
    pair = build_preambles(_preamble_seed(scenario), scenario.n_subcarriers, scenario.preamble)
    if scenario.mapping == MappingKind.WDP:
        return pair.wdp, pair.wdp, pair.standard
    return pair.standard, pair.standard, pair.standard


def _simulate_batch(scenario: Scenario, snr_db: float, batch_index: int, n_frames: int):
    """Simulate one batch; returns (bits, errors). Deterministic in its args."""
    rng = np.random.default_rng(_batch_seed(scenario, snr_db, batch_index))
    n = scenario.n_subcarriers
    q = scenario.n_samples
    is_wdp = scenario.mapping == MappingKind.WDP

    f_tx = build_subcarrier_matrix(n, q, scenario.alpha)
    if scenario.rx_alpha == scenario.alpha:
        f_rx = f_tx
    else:
        f_rx = build_subcarrier_matrix(n, q, scenario.rx_alpha)
    scale = _wdp_power_scale(f_tx) if is_wdp else 1.0
    sigma2 = 0.0 if scenario.noiseless else noise_variance(snr_db)

    bits = rng.integers(0, 2, size=(n_frames, scenario.bits_per_frame))
    symbols = qpsk_map(bits)
    if is_wdp:
        symbols = wdp_expand(symbols) * scale
    body = _through_link(scenario, f_tx, symbols.T)  # (Q, B)

    if scenario.csi_mode == CsiMode.ESTIMATED:
        transmitted, ref_legit, ref_eaves = _training_references(scenario)
        reference = ref_legit if scenario.observer is Observer.LEGITIMATE else ref_eaves
        training_body = _through_link(scenario, f_tx, transmitted * scale)  # (Q,)
        if sigma2 > 0.0:
            training_body = training_body[:, None] + _complex_noise(rng, sigma2, (q, n_frames))
            received_training = demodulate(f_rx, training_body).T  # (B, N)
        else:
            received_training = demodulate(f_rx, training_body)[None, :]  # (1, N)
        csi = received_training / reference[None, :]
    elif scenario.channel is not None:
        csi = frequency_response(scenario.channel, f_rx)[None, :]
    else:
        csi = np.ones((1, n), dtype=np.complex128)

    if sigma2 > 0.0:
        body = body + _complex_noise(rng, sigma2, body.shape)
    received = demodulate(f_rx, body).T  # (B, N)

    with np.errstate(divide="ignore", invalid="ignore"):
        equalized = received / csi
    if is_wdp:
        equalized = wdp_combine(equalized)
    decided = qpsk_demap(equalized)

    n_bits = bits.size
    n_errors = int(np.count_nonzero(decided != bits))
    return n_bits, n_errors


def _batch_plan(scenario: Scenario, start_index: int, count: int):
    """Frame counts for batches [start, start+count) under the bit budget."""
    bpf = scenario.bits_per_frame
    total_frames = max(1, scenario.max_bits // bpf)
    plan = []
    for index in range(start_index, start_index + count):
        first = index * BATCH_FRAMES
        frames = min(BATCH_FRAMES, total_frames - first)
        if frames <= 0:
            break
        plan.append((index, frames))
    return plan


def run_ber_point(
    scenario: Scenario, snr_db: float, workers: int = 1, _executor=None
) -> BerRecord:
    """Measure one BER point, stopping at min_errors or the bit budget.

    Deterministic given (scenario, snr_db) for any ``workers`` value.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    own_executor = None
    executor = _executor
    if executor is None and workers > 1:
        own_executor = ProcessPoolExecutor(max_workers=workers)
        executor = own_executor
    try:
        total_bits = 0
        total_errors = 0
        next_index = 0
        exhausted = False
        while True:
            plan = _batch_plan(scenario, next_index, max(workers, 1))
            if not plan:
                exhausted = True
                break
            if executor is None:
                outcomes = [
                    _simulate_batch(scenario, snr_db, index, frames) for index, frames in plan
                ]
            else:
                futures = [
                    executor.submit(_simulate_batch, scenario, snr_db, index, frames)
                    for index, frames in plan
                ]
                outcomes = [f.result() for f in futures]
            stopped = False
            for n_bits, n_errors in outcomes:  # fold in batch order
                total_bits += n_bits
                total_errors += n_errors
                if total_errors >= scenario.min_errors:
                    stopped = True
                    break
            if stopped:
                break
            next_index += len(plan)
            if len(plan) < max(workers, 1):
                exhausted = True
                break
    finally:
        if own_executor is not None:
            own_executor.shutdown()
    floor_uncertain = exhausted and total_errors < scenario.min_errors
    return make_record(
        scenario.scenario_id, snr_db, total_bits, total_errors, floor_uncertain
    )


def run_ber_sweep(scenario: Scenario, workers: int = 1) -> list[BerRecord]:
    """One record per distinct SNR grid point, sorted by SNR ascending."""
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        records = [
            run_ber_point(scenario, snr_db, workers=workers, _executor=executor)
            for snr_db in sorted(set(scenario.snr_grid_db))
        ]
    finally:
        if executor is not None:
            executor.shutdown()
    return records


def run_security_sweep(
    scenario: Scenario,
    alphas=None,
    mismatch_alpha: float | None = None,
    workers: int = 1,
) -> list[BerRecord]:
    """BER sweeps over a set of compression factors.

    With ``mismatch_alpha`` (or ``scenario.eavesdropper_alpha``) set,
    every sub-sweep demodulates with that alpha instead of the true one
    (the receiver does not know the transmit compression); otherwise the
    receiver is matched. Scenario ids gain ``_a<alpha>`` and, when
    mismatched, ``_rx<alpha>`` suffixes.
    """
    alphas = tuple(alphas) if alphas is not None else scenario.alphas
    if not alphas:
        raise ValueError("security sweep needs a non-empty alphas list")
    rx_alpha = mismatch_alpha if mismatch_alpha is not None else scenario.eavesdropper_alpha
    records: list[BerRecord] = []
    for alpha in alphas:
        suffix = f"_a{alpha:g}" + (f"_rx{rx_alpha:g}" if rx_alpha is not None else "")
        sub = replace(
            scenario,
            alpha=alpha,
            eavesdropper_alpha=rx_alpha,
            scenario_id=scenario.scenario_id + suffix,
            alphas=(),
        )
        records.extend(run_ber_sweep(sub, workers=workers))
    return records


def run_csi_experiment(scenario: Scenario) -> tuple[CsiEstimate, CsiEstimate]:
    """Transmit one privacy-mapped training frame; estimate both observers.

    Noise is disabled when ``scenario.noiseless`` is set; otherwise the
    highest SNR grid point is used. Requires ``mapping = wdp`` (the
    experiment contrasts the two observers' references, which coincide
    for plain frames).
    """
    if scenario.mapping != MappingKind.WDP:
        raise ValueError("CSI experiment requires mapping = wdp")
    f_tx = build_subcarrier_matrix(scenario.n_subcarriers, scenario.n_samples, scenario.alpha)
    if scenario.rx_alpha == scenario.alpha:
        f_rx = f_tx
    else:
        f_rx = build_subcarrier_matrix(
            scenario.n_subcarriers, scenario.n_samples, scenario.rx_alpha
        )
    transmitted, ref_legit, ref_eaves = _training_references(scenario)
    scale = _wdp_power_scale(f_tx)
    body = _through_link(scenario, f_tx, transmitted * scale)
    if not scenario.noiseless:
        sigma2 = noise_variance(max(scenario.snr_grid_db))
        if sigma2 > 0.0:
            rng = np.random.default_rng(
                np.random.SeedSequence(
                    [
                        scenario.master_seed,
                        _scenario_hash(scenario.scenario_id),
                        _CSI_NOISE_TAG,
                    ]
                )
            )
            body = body + _complex_noise(rng, sigma2, body.shape)
    received = demodulate(f_rx, body)
    legit = estimate_csi(received, ref_legit, Observer.LEGITIMATE)
    eaves = estimate_csi(received, ref_eaves, Observer.EAVESDROPPER)
    return legit, eaves
