"""Evaluation metrics: syntactic accuracy via an external assembler,
semantic accuracy from label files, robust accuracy, Jensen-Shannon
divergence between corpora, and descriptive statistics.

Semantic correctness is a human judgment consumed as a label file; the
exact-match proxy here is a clearly-labeled automatic lower bound, never a
silent substitute.
"""

from __future__ import annotations

import csv
import re
import shlex
import shutil
import subprocess
import tempfile
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from perturbe._util import read_jsonl, write_jsonl
from perturbe.corpus import NEWLINE_MARKER, Corpus
from perturbe.errors import CheckerError, ConfigError, DataError
from perturbe.perturb import OmissionCategory, omittable_words
from perturbe.preprocess import load_stopwords, tokenize
from perturbe.vocab import Vocabulary

DEFAULT_CHECK_TIMEOUT = 10.0

# Minimal scaffolds that let an instruction fragment assemble standalone.
NASM_SCAFFOLD = "section .text\nglobal _start\n_start:\n{code}\n"
GAS_SCAFFOLD = ".intel_syntax noprefix\n.text\n.globl _start\n_start:\n{code}\n"

_MARKER_RE = re.compile(r"\s*" + re.escape(NEWLINE_MARKER) + r"\s*")


@dataclass
class PredictionSet:
    """Model outputs keyed by sample id."""

    entries: dict[str, str]
    model_name: str = ""
    cell: str = ""


@dataclass
class SemLabelSet:
    """Per-sample semantic-correctness labels and their provenance."""

    entries: dict[str, bool]
    provenance: str = "human"


@dataclass
class RobInput:
    """Label sets for the same test split before and after perturbation."""

    before: SemLabelSet
    after: SemLabelSet

    def __post_init__(self) -> None:
        if set(self.before.entries) != set(self.after.entries):
            raise DataError("before/after label sets cover different sample ids")


@dataclass(frozen=True)
class CheckerConfig:
    """External syntax checker: a command template with a {file} placeholder
    plus the scaffold the snippet is wrapped in."""

    template: str
    scaffold: str = NASM_SCAFFOLD
    timeout: float = DEFAULT_CHECK_TIMEOUT
    workers: int = 4
    file_suffix: str = ".s"

    def __post_init__(self) -> None:
        if "{file}" not in self.template:
            raise ConfigError("checker template must contain a {file} placeholder")


@dataclass
class SyntaxReport:
    accuracy: float
    verdicts: dict[str, bool] = field(default_factory=dict)
    diagnostics: dict[str, str] = field(default_factory=dict)


def detect_checker(timeout: float = DEFAULT_CHECK_TIMEOUT, workers: int = 4) -> CheckerConfig | None:
    """Pick an installed x86 assembler, preferring NASM's dialect."""
    if shutil.which("nasm"):
        return CheckerConfig(
            template="nasm -f elf32 {file} -o /dev/null",
            scaffold=NASM_SCAFFOLD,
            timeout=timeout,
            workers=workers,
            file_suffix=".asm",
        )
    if shutil.which("as"):
        return CheckerConfig(
            template="as --32 {file} -o /dev/null",
            scaffold=GAS_SCAFFOLD,
            timeout=timeout,
            workers=workers,
        )
    return None


def snippet_to_source(snippet: str, scaffold: str) -> str:
    """Expand the two-character line separator and wrap in the scaffold."""
    code = _MARKER_RE.sub("\n", snippet).strip()
    return scaffold.format(code=code)


def syntactic_accuracy(preds: PredictionSet, checker: CheckerConfig) -> SyntaxReport:
    """Fraction of predictions the external checker accepts (exit 0).

    Empty predictions count as incorrect without invoking the checker;
    timeouts count as incorrect with a diagnostic.
    """
    argv0 = shlex.split(checker.template)[0]
    if shutil.which(argv0) is None:
        raise CheckerError(f"syntax checker not found: {argv0!r}")
    if not preds.entries:
        raise DataError("empty prediction set")

    def check(item: tuple[str, str]) -> tuple[str, bool, str]:
        sample_id, prediction = item
        if not prediction.strip():
            return sample_id, False, "empty prediction"
        source = snippet_to_source(prediction, checker.scaffold)
        with tempfile.NamedTemporaryFile(
            "w", suffix=checker.file_suffix, delete=False, encoding="utf-8"
        ) as handle:
            handle.write(source)
            path = handle.name
        try:
            proc = subprocess.run(
                shlex.split(checker.template.format(file=path)),
                capture_output=True,
                timeout=checker.timeout,
                text=True,
            )
            if proc.returncode == 0:
                return sample_id, True, ""
            return sample_id, False, proc.stderr.strip().splitlines()[-1] if proc.stderr else "nonzero exit"
        except subprocess.TimeoutExpired:
            return sample_id, False, f"checker timed out after {checker.timeout}s"
        finally:
            Path(path).unlink(missing_ok=True)

    items = sorted(preds.entries.items())
    if checker.workers > 1:
        with ThreadPoolExecutor(max_workers=checker.workers) as pool:
            results = list(pool.map(check, items))
    else:
        results = [check(item) for item in items]

    report = SyntaxReport(accuracy=0.0)
    for sample_id, ok, diagnostic in results:
        report.verdicts[sample_id] = ok
        if diagnostic:
            report.diagnostics[sample_id] = diagnostic
    report.accuracy = sum(report.verdicts.values()) / len(report.verdicts)
    return report


def _normalize_ws(text: str) -> str:
    return " ".join(text.split())


def exact_match_labels(preds: PredictionSet, references: Corpus) -> SemLabelSet:
    """Automatic lower-bound proxy: correct iff the whitespace-normalized
    prediction equals the reference snippet. Equivalent-but-different code
    is counted wrong; real semantic labels come from human judgment files."""
    refs = {s.id: s.snippet for s in references}
    entries: dict[str, bool] = {}
    for sample_id, prediction in preds.entries.items():
        if sample_id not in refs:
            raise DataError(f"prediction {sample_id!r} has no reference snippet")
        entries[sample_id] = _normalize_ws(prediction) == _normalize_ws(refs[sample_id])
    return SemLabelSet(entries=entries, provenance="exact-match-proxy")


def semantic_accuracy(labels: SemLabelSet) -> float:
    if not labels.entries:
        raise DataError("empty label set")
    return sum(labels.entries.values()) / len(labels.entries)


def robust_accuracy(rob: RobInput) -> float | None:
    """Among samples correct before perturbation, the fraction still correct
    after. Undefined (None) when nothing was correct before; never 0 by
    convention."""
    correct_before = {sid for sid, ok in rob.before.entries.items() if ok}
    if not correct_before:
        return None
    still_correct = sum(1 for sid in correct_before if rob.after.entries[sid])
    return still_correct / len(correct_before)


def _intent_counts(corpus: Corpus, lowered_stop: set[str]) -> Counter:
    counts: Counter = Counter()
    for sample in corpus:
        for token in tokenize(sample.intent).tokens:
            if token.lower() not in lowered_stop:
                counts[token] += 1
    return counts


def jsd_from_counts(counts_a: dict[str, int], counts_b: dict[str, int]) -> float:
    """Base-2 Jensen-Shannon divergence between two unigram distributions.

    Accumulates integer-weighted log terms and divides once per side, so
    identical inputs give exactly 0.0 and disjoint supports exactly 1.0.
    """
    if not counts_a or not counts_b:
        raise DataError("cannot compare empty distributions")
    union = sorted(set(counts_a) | set(counts_b))
    a = np.array([counts_a.get(w, 0) for w in union], dtype=np.float64)
    b = np.array([counts_b.get(w, 0) for w in union], dtype=np.float64)
    total_a = a.sum()
    total_b = b.sum()
    p = a / total_a
    q = b / total_b
    m = 0.5 * (p + q)
    mask_a = a > 0
    mask_b = b > 0
    term_a = np.sum(a[mask_a] * np.log2(p[mask_a] / m[mask_a])) / total_a
    term_b = np.sum(b[mask_b] * np.log2(q[mask_b] / m[mask_b])) / total_b
    return float(0.5 * (term_a + term_b))


def jsd(a: Corpus, b: Corpus, stoplist: set[str] | None = None) -> float:
    """JSD between the non-stopword intent-token distributions of two corpora."""
    if len(a) == 0 or len(b) == 0:
        raise DataError("cannot compare empty corpora")
    if stoplist is None:
        stoplist = load_stopwords()
    lowered_stop = {w.lower() for w in stoplist}
    return jsd_from_counts(_intent_counts(a, lowered_stop), _intent_counts(b, lowered_stop))


def omission_rate_stats(
    corpus: Corpus, vocabulary: Vocabulary, tagger
) -> dict[OmissionCategory, float]:
    """Mean fraction of intent tokens each omission category would remove."""
    if len(corpus) == 0:
        raise DataError("empty corpus")
    totals = {category: 0.0 for category in OmissionCategory}
    for sample in corpus:
        tokens = tokenize(sample.intent, source_id=sample.id).tokens
        tags = tagger.tag(tokens, sample_id=sample.id)
        for category in OmissionCategory:
            indices = omittable_words(tokens, category, vocabulary, tags)
            totals[category] += len(indices) / len(tokens)
    return {category: total / len(corpus) for category, total in totals.items()}


@dataclass
class CellMetrics:
    """Evaluated metrics for one experiment cell."""

    model_name: str
    kind: str
    train_p: float
    test_p: float
    syn: float | None = None
    sem: float | None = None
    rob: float | None = None
    cohorts: dict[str, dict[str, float | None]] = field(default_factory=dict)


def _fmt(value: float | None) -> str:
    return "-" if value is None else f"{value:.4f}"


def report(cells: list[CellMetrics], out_dir: str | Path) -> tuple[Path, Path]:
    """Write metrics.csv plus a readable summary; returns both paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    csv_path = out_dir / "metrics.csv"
    with open(csv_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["model", "kind", "train_p", "test_p", "SYN", "SEM", "ROB"])
        for cell in cells:
            writer.writerow(
                [
                    cell.model_name,
                    cell.kind,
                    cell.train_p,
                    cell.test_p,
                    _fmt(cell.syn),
                    _fmt(cell.sem),
                    _fmt(cell.rob),
                ]
            )
    summary_path = out_dir / "summary.txt"
    lines = ["Evaluation summary", "=================="]
    for cell in cells:
        lines.append(
            f"{cell.model_name or '-'} | {cell.kind} | train {cell.train_p:.0%} "
            f"| test {cell.test_p:.0%} | SYN {_fmt(cell.syn)} | SEM {_fmt(cell.sem)} "
            f"| ROB {_fmt(cell.rob)}"
        )
        for cohort, values in sorted(cell.cohorts.items()):
            parts = " | ".join(f"{k} {_fmt(v)}" for k, v in sorted(values.items()))
            lines.append(f"    {cohort}: {parts}")
    summary_path.write_text("\n".join(lines) + "\n", "utf-8")
    return csv_path, summary_path


def cohort_breakdown(
    verdicts: dict[str, bool], corpus: Corpus
) -> dict[str, dict[str, float | None]]:
    """Split per-id boolean verdicts into single-line/multi-line cohorts."""
    single = [ok for sid, ok in verdicts.items() if not corpus.by_id(sid).multi_line]
    multi = [ok for sid, ok in verdicts.items() if corpus.by_id(sid).multi_line]
    out: dict[str, dict[str, float | None]] = {}
    out["single-line"] = {
        "n": float(len(single)),
        "accuracy": (sum(single) / len(single)) if single else None,
    }
    out["multi-line"] = {
        "n": float(len(multi)),
        "accuracy": (sum(multi) / len(multi)) if multi else None,
    }
    return out


def load_predictions(path: str | Path, model_name: str = "", cell: str = "") -> PredictionSet:
    entries: dict[str, str] = {}
    for lineno, record in read_jsonl(path):
        if "id" not in record or "prediction" not in record:
            raise DataError(f"{path}:{lineno}: expected id and prediction fields")
        entries[str(record["id"])] = str(record["prediction"])
    return PredictionSet(entries=entries, model_name=model_name, cell=cell)


def load_labels(path: str | Path) -> SemLabelSet:
    entries: dict[str, bool] = {}
    provenance = "human"
    for lineno, record in read_jsonl(path):
        if "id" not in record or "correct" not in record:
            raise DataError(f"{path}:{lineno}: expected id and correct fields")
        entries[str(record["id"])] = bool(record["correct"])
        provenance = str(record.get("provenance", provenance))
    return SemLabelSet(entries=entries, provenance=provenance)


def save_labels(labels: SemLabelSet, path: str | Path) -> None:
    write_jsonl(
        path,
        (
            {"id": sid, "correct": ok, "provenance": labels.provenance}
            for sid, ok in sorted(labels.entries.items())
        ),
    )
