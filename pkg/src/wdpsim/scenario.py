"""Scenario configuration: the key-value experiment description files.

A scenario file holds one ``key = value`` pair per line (``#`` starts a
comment). Unknown keys are rejected so typos fail loudly. Command-line
``--set key=value`` overrides use the same key set and the same
validation.
"""

import math
import os
from dataclasses import dataclass, replace

from .channel import MultipathChannel, default_channel, load_channel_file
from .csi import Observer
from .mapping import PreambleStyle


class ScenarioError(ValueError):
    """Invalid scenario configuration (bad key, value or combination)."""


class CsiMode:
    IDEAL = "ideal"
    ESTIMATED = "estimated"


class MappingKind:
    PLAIN = "plain"
    WDP = "wdp"


DEFAULT_SNR_GRID = tuple(float(s) for s in range(0, 13))


@dataclass(frozen=True)
class Scenario:
    """One fully-resolved experiment description."""

    scenario_id: str = "scenario"
    n_subcarriers: int = 64
    n_samples: int = 128
    alpha: float = 1.0
    cp_len: int = 8
    mapping: str = MappingKind.PLAIN
    channel: MultipathChannel | None = None  # None = AWGN-only link
    observer: Observer = Observer.LEGITIMATE
    csi_mode: str = CsiMode.IDEAL
    eavesdropper_alpha: float | None = None  # receiver-side demodulation alpha override
    preamble: PreambleStyle = PreambleStyle.PAIRED
    noiseless: bool = False
    snr_grid_db: tuple[float, ...] = DEFAULT_SNR_GRID
    min_errors: int = 100
    max_bits: int = 20_000_000
    master_seed: int = 1
    alphas: tuple[float, ...] = ()  # security-sweep compression factors

    def __post_init__(self):
        if self.n_subcarriers < 2 or self.n_subcarriers % 2 != 0:
            raise ScenarioError("n_subcarriers must be a positive even integer")
        if self.n_samples < self.n_subcarriers:
            raise ScenarioError("n_samples must be >= n_subcarriers")
        if not 0.0 < self.alpha <= 1.0:
            raise ScenarioError(f"alpha must be in (0, 1], got {self.alpha}")
        if not 0 <= self.cp_len <= self.n_samples:
            raise ScenarioError("cp_len must be in [0, n_samples]")
        if self.mapping not in (MappingKind.PLAIN, MappingKind.WDP):
            raise ScenarioError(f"unknown mapping {self.mapping!r}")
        if self.csi_mode not in (CsiMode.IDEAL, CsiMode.ESTIMATED):
            raise ScenarioError(f"unknown csi_mode {self.csi_mode!r}")
        if self.eavesdropper_alpha is not None and not 0.0 < self.eavesdropper_alpha <= 1.0:
            raise ScenarioError("eavesdropper_alpha must be in (0, 1]")
        if len(self.snr_grid_db) == 0:
            raise ScenarioError("snr_grid_db must be non-empty")
        if any(not math.isfinite(s) for s in self.snr_grid_db):
            raise ScenarioError("snr_grid_db entries must be finite")
        if self.min_errors < 100:
            raise ScenarioError("min_errors must be >= 100")
        if self.max_bits < 1:
            raise ScenarioError("max_bits must be positive")
        if self.master_seed < 0:
            raise ScenarioError("master_seed must be non-negative")
        if self.channel is not None and self.channel.max_delay > self.cp_len:
            raise ScenarioError(
                f"cp_len ({self.cp_len}) must cover the channel memory "
                f"({self.channel.max_delay})"
            )
        if any(not 0.0 < a <= 1.0 for a in self.alphas):
            raise ScenarioError("alphas entries must be in (0, 1]")

    @property
    def rx_alpha(self) -> float:
        """Demodulation alpha actually used by the receiver."""
        return self.alpha if self.eavesdropper_alpha is None else self.eavesdropper_alpha

    @property
    def bits_per_frame(self) -> int:
        """Information bits carried by one frame (QPSK, pairing-aware)."""
        if self.mapping == MappingKind.WDP:
            return self.n_subcarriers  # N/2 effective symbols x 2 bits
        return 2 * self.n_subcarriers


def _parse_bool(value: str, key: str) -> bool:
    lowered = value.strip().lower()
    if lowered in ("true", "yes", "on", "1"):
        return True
    if lowered in ("false", "no", "off", "0"):
        return False
    raise ScenarioError(f"{key}: expected a boolean, got {value!r}")


def _parse_float(value: str, key: str) -> float:
    try:
        return float(value)
    except ValueError:
        raise ScenarioError(f"{key}: expected a number, got {value!r}") from None


def _parse_int(value: str, key: str) -> int:
    try:
        if "e" in value.lower() or "." in value:
            as_float = float(value)
            if as_float != int(as_float):
                raise ValueError(value)
            return int(as_float)
        return int(value)
    except ValueError:
        raise ScenarioError(f"{key}: expected an integer, got {value!r}") from None


def _parse_grid(value: str, key: str) -> tuple[float, ...]:
    """Grid syntax: 'start:stop:step' (inclusive) or a comma list."""
    value = value.strip()
    if ":" in value:
        parts = value.split(":")
        if len(parts) != 3:
            raise ScenarioError(f"{key}: range syntax is start:stop:step, got {value!r}")
        start, stop, step = (_parse_float(p, key) for p in parts)
        if step <= 0:
            raise ScenarioError(f"{key}: step must be positive")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        if count < 1:
            raise ScenarioError(f"{key}: empty range {value!r}")
        return tuple(start + i * step for i in range(count))
    return tuple(_parse_float(p, key) for p in value.split(","))


def _parse_mapping(value: str) -> str:
    mapping = value.strip().lower()
    if mapping not in (MappingKind.PLAIN, MappingKind.WDP):
        raise ScenarioError(f"mapping: expected plain or wdp, got {value!r}")
    return mapping


def _parse_channel(value: str, base_dir: str) -> MultipathChannel | None:
    spec = value.strip()
    if spec.lower() == "awgn":
        return None
    if spec.lower().startswith("multipath:"):
        target = spec.split(":", 1)[1].strip()
        if target.lower() == "default":
            return default_channel()
        path = target if os.path.isabs(target) else os.path.join(base_dir, target)
        try:
            return load_channel_file(path)
        except OSError as exc:
            raise ScenarioError(f"channel: cannot read {path!r}: {exc}") from None
        except ValueError as exc:
            raise ScenarioError(f"channel: {exc}") from None
    raise ScenarioError(f"channel: expected awgn or multipath:<default|path>, got {value!r}")


def _parse_observer(value: str) -> Observer:
    try:
        return Observer(value.strip().lower())
    except ValueError:
        raise ScenarioError(
            f"observer: expected legitimate or eavesdropper, got {value!r}"
        ) from None


def _parse_csi_mode(value: str) -> str:
    mode = value.strip().lower()
    if mode not in (CsiMode.IDEAL, CsiMode.ESTIMATED):
        raise ScenarioError(f"csi_mode: expected ideal or estimated, got {value!r}")
    return mode


def _parse_preamble(value: str) -> PreambleStyle:
    try:
        return PreambleStyle(value.strip().lower())
    except ValueError:
        raise ScenarioError(f"preamble: expected paired or random, got {value!r}") from None


def _parse_rx_alpha(value: str) -> float | None:
    if value.strip().lower() in ("none", ""):
        return None
    return _parse_float(value, "eavesdropper_alpha")


# scenario-file key -> (Scenario field, parser taking (value, base_dir))
_KEYS = {
    "id": ("scenario_id", lambda v, d: v.strip()),
    "n_subcarriers": ("n_subcarriers", lambda v, d: _parse_int(v, "n_subcarriers")),
    "n_samples": ("n_samples", lambda v, d: _parse_int(v, "n_samples")),
    "alpha": ("alpha", lambda v, d: _parse_float(v, "alpha")),
    "cp_len": ("cp_len", lambda v, d: _parse_int(v, "cp_len")),
    "mapping": ("mapping", lambda v, d: _parse_mapping(v)),
    "channel": ("channel", _parse_channel),
    "observer": ("observer", lambda v, d: _parse_observer(v)),
    "csi_mode": ("csi_mode", lambda v, d: _parse_csi_mode(v)),
    "eavesdropper_alpha": ("eavesdropper_alpha", lambda v, d: _parse_rx_alpha(v)),
    "preamble": ("preamble", lambda v, d: _parse_preamble(v)),
    "noiseless": ("noiseless", lambda v, d: _parse_bool(v, "noiseless")),
    "snr_grid_db": ("snr_grid_db", lambda v, d: _parse_grid(v, "snr_grid_db")),
    "min_errors": ("min_errors", lambda v, d: _parse_int(v, "min_errors")),
    "max_bits": ("max_bits", lambda v, d: _parse_int(v, "max_bits")),
    "seed": ("master_seed", lambda v, d: _parse_int(v, "seed")),
    "alphas": ("alphas", lambda v, d: tuple(_parse_float(p, "alphas") for p in v.split(","))),
}


def parse_scenario_text(
    text: str, base_dir: str = ".", scenario_id: str | None = None
) -> Scenario:
    """Parse scenario file content into a validated ``Scenario``."""
    fields = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ScenarioError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _KEYS:
            raise ScenarioError(f"unknown scenario key {key!r} (line {lineno})")
        name, parser = _KEYS[key]
        fields[name] = parser(value.strip(), base_dir)
    if scenario_id is not None and "scenario_id" not in fields:
        fields["scenario_id"] = scenario_id
    return Scenario(**fields)


def load_scenario_file(path) -> Scenario:
    """Read and parse a scenario file; the file stem names the scenario."""
    path = os.fspath(path)
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_scenario_text(text, base_dir=os.path.dirname(path) or ".", scenario_id=stem)


def apply_overrides(scenario: Scenario, overrides, base_dir: str = ".") -> Scenario:
    """Apply ``key=value`` strings on top of a scenario (same key set)."""
    fields = {}
    for item in overrides:
        if "=" not in item:
            raise ScenarioError(f"override {item!r}: expected key=value")
        key, _, value = item.partition("=")
        key = key.strip().lower()
        if key not in _KEYS:
            raise ScenarioError(f"unknown scenario key {key!r}")
        name, parser = _KEYS[key]
        fields[name] = parser(value.strip(), base_dir)
    return replace(scenario, **fields) if fields else scenario


def describe(scenario: Scenario) -> str:
    """Resolved configuration as deterministic 'key = value' lines."""
    if scenario.channel is None:
        channel = "awgn"
    else:
        taps = ", ".join(
            f"(delay={d}, gain={g.real:g}{g.imag:+g}j)" for d, g in scenario.channel.taps
        )
        channel = f"multipath [{taps}]"
    lines = [
        f"id = {scenario.scenario_id}",
        f"n_subcarriers = {scenario.n_subcarriers}",
        f"n_samples = {scenario.n_samples}",
        f"alpha = {scenario.alpha:g}",
        f"cp_len = {scenario.cp_len}",
        f"mapping = {scenario.mapping}",
        f"channel = {channel}",
        f"observer = {scenario.observer.value}",
        f"csi_mode = {scenario.csi_mode}",
        "eavesdropper_alpha = "
        + ("none" if scenario.eavesdropper_alpha is None else f"{scenario.eavesdropper_alpha:g}"),
        f"preamble = {scenario.preamble.value}",
        f"noiseless = {str(scenario.noiseless).lower()}",
        "snr_grid_db = " + ",".join(f"{s:g}" for s in scenario.snr_grid_db),
        f"min_errors = {scenario.min_errors}",
        f"max_bits = {scenario.max_bits}",
        f"seed = {scenario.master_seed}",
        "alphas = " + (",".join(f"{a:g}" for a in scenario.alphas) if scenario.alphas else "none"),
    ]
    return "\n".join(lines)
