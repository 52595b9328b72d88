"""Measurement records and the CSV/JSON result files."""

import csv
import json
import math
from dataclasses import dataclass

from ._io import write_atomic

CSV_HEADER = ["scenario_id", "snr_db", "bits", "errors", "ber", "ci_halfwidth"]


@dataclass(frozen=True)
class BerRecord:
    """One Monte-Carlo measurement point.

    ``ci_halfwidth`` is the 95% binomial (normal-approximation)
    half-width. ``floor_uncertain`` marks points that hit the bit budget
    before collecting the requested error count, so the estimate may sit
    above an unresolved floor.
    """

    scenario_id: str
    snr_db: float
    bits: int
    errors: int
    ber: float
    ci_halfwidth: float
    floor_uncertain: bool = False


def make_record(
    scenario_id: str, snr_db: float, bits: int, errors: int, floor_uncertain: bool = False
) -> BerRecord:
    """Build a record, deriving the rate and its confidence half-width."""
    if bits <= 0:
        raise ValueError("bits must be positive")
    if errors < 0 or errors > bits:
        raise ValueError("errors must lie in [0, bits]")
    ber = errors / bits
    halfwidth = 1.96 * math.sqrt(ber * (1.0 - ber) / bits)
    return BerRecord(
        scenario_id=scenario_id,
        snr_db=float(snr_db),
        bits=int(bits),
        errors=int(errors),
        ber=ber,
        ci_halfwidth=halfwidth,
        floor_uncertain=floor_uncertain,
    )


def _format(value: float) -> str:
    return f"{value:.12g}"


def write_ber_csv(path, records) -> None:
    """Write records as CSV (atomic; fixed header and field formatting)."""

    def body(fh):
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in records:
            writer.writerow(
                [
                    r.scenario_id,
                    _format(r.snr_db),
                    r.bits,
                    r.errors,
                    _format(r.ber),
                    _format(r.ci_halfwidth),
                ]
            )

    write_atomic(path, body)


def write_ber_json(path, records) -> None:
    """Write records as a JSON array equivalent to the CSV."""

    def body(fh):
        payload = [
            {
                "scenario_id": r.scenario_id,
                "snr_db": r.snr_db,
                "bits": r.bits,
                "errors": r.errors,
                "ber": r.ber,
                "ci_halfwidth": r.ci_halfwidth,
                "floor_uncertain": r.floor_uncertain,
            }
            for r in records
        ]
        json.dump(payload, fh, indent=2)
        fh.write("\n")

    write_atomic(path, body)
