"""Semantic gate: keep a perturbed intent only when its sentence embedding
stays close to the original's.

Scores are cosine similarities between sentence embeddings, clipped to
[0, 1] for reporting. A record passes the gate when its similarity is
strictly greater than the threshold. Records whose intents cannot be
encoded (every token out-of-vocabulary) are marked with NaN and always land
in the failed partition: an unverifiable perturbation is not used.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from perturbe.embedding import cosine
from perturbe.errors import ConfigError, DataError, EncodingFailure
from perturbe.perturb import GATE_FAIL, GATE_PASS, PerturbationRecord

DEFAULT_THRESHOLD = 0.80
SWEEP_THRESHOLDS = (0.70, 0.80, 0.90)


@dataclass(frozen=True)
class GateConfig:
    threshold: float = DEFAULT_THRESHOLD
    encoder: str = "mean-of-word-vectors"

    def __post_init__(self) -> None:
        if not (0.0 <= self.threshold <= 1.0):
            raise ConfigError(f"gate threshold must be in [0, 1], got {self.threshold}")


def score(record: PerturbationRecord, encoder) -> PerturbationRecord:
    """Fill in record.similarity; the gate verdict stays unevaluated."""
    try:
        original = encoder.encode(record.original_intent, key=record.sample_id)
        perturbed = encoder.encode(
            record.perturbed_intent, key=f"{record.sample_id}#{record.kind.value}"
        )
    except EncodingFailure:
        record.similarity = math.nan
        record.raw_similarity = math.nan
        return record
    raw = cosine(original, perturbed)
    record.raw_similarity = raw
    record.similarity = min(1.0, max(0.0, raw))
    return record


def score_records(records: Sequence[PerturbationRecord], encoder) -> list[PerturbationRecord]:
    return [score(r, encoder) for r in records]


def gate(
    records: Sequence[PerturbationRecord], cfg: GateConfig
) -> tuple[list[PerturbationRecord], list[PerturbationRecord]]:
    """Partition scored records into (passed, failed), preserving order."""
    passed: list[PerturbationRecord] = []
    failed: list[PerturbationRecord] = []
    for record in records:
        if record.similarity is None:
            raise DataError(f"record {record.sample_id!r} has not been scored")
        if record.similarity > cfg.threshold:  # NaN comparisons are False
            record.gate_pass = GATE_PASS
            passed.append(record)
        else:
            record.gate_pass = GATE_FAIL
            failed.append(record)
    return passed, failed


def threshold_sweep(
    records: Sequence[PerturbationRecord], thresholds: Sequence[float]
) -> dict[float, float]:
    """Pass rate per threshold; monotonically non-increasing in the threshold."""
    if not records:
        raise DataError("cannot sweep over an empty record list")
    for record in records:
        if record.similarity is None:
            raise DataError(f"record {record.sample_id!r} has not been scored")
    rates: dict[float, float] = {}
    for t in thresholds:
        passing = sum(1 for r in records if r.similarity > t)
        rates[t] = passing / len(records)
    return rates


def write_sweep_csv(
    records: Sequence[PerturbationRecord],
    thresholds: Sequence[float],
    path: str | Path,
) -> None:
    """One row per (threshold, kind): threshold,kind,pass_rate."""
    by_kind: dict[str, list[PerturbationRecord]] = {}
    for record in records:
        by_kind.setdefault(record.kind.value, []).append(record)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "kind", "pass_rate"])
        for t in thresholds:
            for kind in sorted(by_kind):
                rates = threshold_sweep(by_kind[kind], [t])
                writer.writerow([t, kind, f"{rates[t]:.6f}"])
