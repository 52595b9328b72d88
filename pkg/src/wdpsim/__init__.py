"""Multicarrier waveform simulator with privacy-preserving subcarrier pairing.

Opposite-sign pairing of adjacent subcarriers hides channel-state phase
from observers that only know the public training sequence, while a
pair-combining receiver gains 3 dB; a fractional bandwidth compression
factor additionally locks out receivers that do not know its value.
"""

from .channel import (
    MultipathChannel,
    NoiseSpec,
    add_awgn,
    apply_channel,
    composite_matrix,
    default_channel,
    frequency_response,
    identity_channel,
    load_channel_file,
    parse_channel_text,
)
from .csi import (
    CsiEstimate,
    Observer,
    csi_phase_gap,
    equalize,
    estimate_csi,
    write_csi_csv,
)
from .mapping import (
    CompositeEffectiveMatrix,
    PreamblePair,
    PreambleStyle,
    build_preambles,
    effective_composite,
    interference_ratio,
    qpsk_demap,
    qpsk_map,
    wdp_combine,
    wdp_expand,
)
from .results import BerRecord, make_record, write_ber_csv, write_ber_json
from .scenario import (
    CsiMode,
    MappingKind,
    Scenario,
    ScenarioError,
    apply_overrides,
    load_scenario_file,
    parse_scenario_text,
)
from .simulate import (
    run_ber_point,
    run_ber_sweep,
    run_csi_experiment,
    run_security_sweep,
)
from .theory import paired_qpsk_ber_awgn, qfunc, qpsk_ber_awgn, snr_at_ber
from .waveform import (
    SubcarrierMatrix,
    add_cyclic_prefix,
    build_subcarrier_matrix,
    correlation_matrix,
    demodulate,
    modulate,
    remove_cyclic_prefix,
)

__version__ = "0.1.0"
