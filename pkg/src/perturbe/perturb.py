"""Word-level perturbations of code descriptions.

Two families are implemented:

* substitution: replace a seeded sample of eligible words with embedding
  neighbors. Constrained substitution requires the neighbor to share the
  original word's POS tag and clear a cosine threshold; unconstrained takes
  the single nearest neighbor from a wider pool regardless.
* omission: remove every word of one category (action verbs, structure
  words, name words) from the intent. Categories are never mixed.

Protected vocabulary words are never substitution candidates; punctuation
is never touched. Corpus-level runs seed an RNG per sample so output does
not depend on iteration order or worker count.
"""

from __future__ import annotations

import enum
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable

from perturbe._util import per_sample_rng, read_jsonl, round_half_away
from perturbe.corpus import Corpus
from perturbe.embedding import VectorStore
from perturbe.errors import ConfigError, DataError, NoEligibleWords
from perturbe.postag import OPEN_CLASS_TAGS, LexiconTagger, PosTag
from perturbe.preprocess import TokenizedIntent, detokenize, load_stopwords, tokenize
from perturbe.vocab import Vocabulary, is_protected

DEFAULT_K_CONSTRAINED = 20
DEFAULT_K_UNCONSTRAINED = 50


class PerturbKind(enum.Enum):
    SUBST_CONSTRAINED = "subst-constrained"
    SUBST_UNCONSTRAINED = "subst-unconstrained"
    OMIT_ACTION = "omit-action"
    OMIT_STRUCTURE = "omit-structure"
    OMIT_NAME = "omit-name"

    @property
    def is_substitution(self) -> bool:
        return self in (PerturbKind.SUBST_CONSTRAINED, PerturbKind.SUBST_UNCONSTRAINED)


class OmissionCategory(enum.Enum):
    ACTION = "action"
    STRUCTURE = "structure"
    NAME = "name"

    @property
    def kind(self) -> PerturbKind:
        return {
            OmissionCategory.ACTION: PerturbKind.OMIT_ACTION,
            OmissionCategory.STRUCTURE: PerturbKind.OMIT_STRUCTURE,
            OmissionCategory.NAME: PerturbKind.OMIT_NAME,
        }[self]


GATE_PASS = "pass"
GATE_FAIL = "fail"
GATE_UNEVALUATED = "unevaluated"


@dataclass
class SubstitutionConfig:
    """Knobs for word substitution. k defaults to 20 with constraints and 50
    without, matching the two evaluation modes."""

    ratio: float = 0.10
    k: int | None = None
    tau: float = 0.8
    use_constraints: bool = True
    seed: int = 0

    def __post_init__(self) -> None:
        if not (0.0 < self.ratio <= 1.0):
            raise ConfigError(f"substitution ratio must be in (0, 1], got {self.ratio}")
        if self.k is not None and self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if not (0.0 <= self.tau <= 1.0):
            raise ConfigError(f"tau must be in [0, 1], got {self.tau}")
        if not (0 <= self.seed < 2**64):
            raise ConfigError("seed must fit in 64 unsigned bits")

    @property
    def effective_k(self) -> int:
        if self.k is not None:
            return self.k
        return DEFAULT_K_CONSTRAINED if self.use_constraints else DEFAULT_K_UNCONSTRAINED


@dataclass
class PerturbationRecord:
    sample_id: str
    kind: PerturbKind
    original_intent: str
    perturbed_intent: str
    changed_positions: list[int]
    similarity: float | None = None  # clipped to [0, 1] for reporting
    raw_similarity: float | None = None  # unclipped cosine, not serialized
    gate_pass: str = GATE_UNEVALUATED

    def __post_init__(self) -> None:
        if self.perturbed_intent == self.original_intent:
            raise DataError(f"record {self.sample_id!r}: perturbation changed nothing")
        if not self.changed_positions:
            raise DataError(f"record {self.sample_id!r}: no changed positions")


@dataclass
class SkipEntry:
    sample_id: str
    kind: PerturbKind
    reason: str


@dataclass
class CorpusPerturbation:
    """Records for the samples that could be perturbed, plus a skip report."""

    records: list[PerturbationRecord] = field(default_factory=list)
    skipped: list[SkipEntry] = field(default_factory=list)


def _transfer_case(original: str, replacement: str) -> str:
    if original.isupper() and len(original) > 1:
        return replacement.upper()
    if original[:1].isupper():
        return replacement[:1].upper() + replacement[1:]
    return replacement


def eligible_words(
    tokens: list[str],
    vocabulary: Vocabulary,
    tags: list[PosTag],
    store: VectorStore,
    stoplist: set[str] | None = None,
) -> set[int]:
    """Indices a substitution may touch: open-class words that are not
    stopwords, not protected vocabulary, and present in the vector store."""
    if len(tags) != len(tokens):
        raise DataError(f"{len(tags)} tags for {len(tokens)} tokens")
    if stoplist is None:
        stoplist = load_stopwords()
    lowered_stop = {w.lower() for w in stoplist}
    out: set[int] = set()
    for i, (token, tag) in enumerate(zip(tokens, tags)):
        if tag not in OPEN_CLASS_TAGS:
            continue
        if token.lower() in lowered_stop:
            continue
        if is_protected(token, vocabulary):
            continue
        if token not in store:
            continue
        out.add(i)
    return out


def _pick_replacement(
    token: str,
    tag: PosTag,
    cfg: SubstitutionConfig,
    store: VectorStore,
    tagger: LexiconTagger,
) -> str | None:
    neighbors = store.top_k(token, cfg.effective_k)
    if not cfg.use_constraints:
        return neighbors[0].word if neighbors else None
    for nb in neighbors:
        if nb.similarity >= cfg.tau and tagger.lexical_tag(nb.word) is tag:
            return nb.word
    return None


def substitute_words(
    intent: TokenizedIntent,
    cfg: SubstitutionConfig,
    vocabulary: Vocabulary,
    tags: list[PosTag],
    store: VectorStore,
    tagger: LexiconTagger | None = None,
    stoplist: set[str] | None = None,
    rng=None,
) -> PerturbationRecord:
    """Substitute a seeded sample of eligible words.

    max(1, round(ratio * |eligible|)) indices are targeted; a sampled word
    with no qualifying neighbor falls through to the next sampled index.
    Raises NoEligibleWords when nothing is eligible or nothing qualifies.
    """
    if tagger is None:
        tagger = LexiconTagger()
    if rng is None:
        rng = per_sample_rng(cfg.seed, intent.source_id)
    eligible = eligible_words(intent.tokens, vocabulary, tags, store, stoplist)
    if not eligible:
        raise NoEligibleWords(f"sample {intent.source_id!r}: no eligible words")
    wanted = max(1, round_half_away(cfg.ratio * len(eligible)))
    order = sorted(eligible)
    rng.shuffle(order)
    new_tokens = list(intent.tokens)
    changed: list[int] = []
    for index in order:
        if len(changed) == wanted:
            break
        token = intent.tokens[index]
        candidate = _pick_replacement(token, tags[index], cfg, store, tagger)
        if candidate is None:
            continue
        new_tokens[index] = _transfer_case(token, candidate)
        changed.append(index)
    if not changed:
        raise NoEligibleWords(
            f"sample {intent.source_id!r}: no eligible word has a qualifying neighbor"
        )
    kind = PerturbKind.SUBST_CONSTRAINED if cfg.use_constraints else PerturbKind.SUBST_UNCONSTRAINED
    return PerturbationRecord(
        sample_id=intent.source_id,
        kind=kind,
        original_intent=detokenize(intent.tokens),
        perturbed_intent=detokenize(new_tokens),
        changed_positions=sorted(changed),
    )


def omittable_words(
    tokens: list[str],
    category: OmissionCategory,
    vocabulary: Vocabulary,
    tags: list[PosTag],
) -> set[int]:
    """Indices belonging to one omission category.

    ACTION follows the POS tags (verbs); STRUCTURE and NAME follow the
    vocabulary partitions, with the same case rules as is_protected().
    """
    if len(tags) != len(tokens):
        raise DataError(f"{len(tags)} tags for {len(tokens)} tokens")
    if category is OmissionCategory.ACTION:
        return {i for i, tag in enumerate(tags) if tag is PosTag.VERB}
    if category is OmissionCategory.STRUCTURE:
        return {i for i, t in enumerate(tokens) if t.lower() in vocabulary.structure_words}
    return {i for i, t in enumerate(tokens) if t in vocabulary.name_words}


def omit_words(
    intent: TokenizedIntent,
    category: OmissionCategory,
    vocabulary: Vocabulary,
    tags: list[PosTag],
) -> PerturbationRecord:
    """Remove every word of the category; raises NoEligibleWords when the
    category is absent (or omission would empty the intent)."""
    indices = omittable_words(intent.tokens, category, vocabulary, tags)
    if not indices:
        raise NoEligibleWords(
            f"sample {intent.source_id!r}: no {category.value}-related words"
        )
    kept = [t for i, t in enumerate(intent.tokens) if i not in indices]
    if not kept:
        raise NoEligibleWords(
            f"sample {intent.source_id!r}: omitting every token leaves no intent"
        )
    return PerturbationRecord(
        sample_id=intent.source_id,
        kind=category.kind,
        original_intent=detokenize(intent.tokens),
        perturbed_intent=detokenize(kept),
        changed_positions=sorted(indices),
    )


_KIND_TO_CATEGORY = {
    PerturbKind.OMIT_ACTION: OmissionCategory.ACTION,
    PerturbKind.OMIT_STRUCTURE: OmissionCategory.STRUCTURE,
    PerturbKind.OMIT_NAME: OmissionCategory.NAME,
}


def perturb_corpus(
    corpus: Corpus,
    kind: PerturbKind,
    cfg: SubstitutionConfig,
    vocabulary: Vocabulary,
    store: VectorStore | None,
    tagger: LexiconTagger | None = None,
    stoplist: set[str] | None = None,
    workers: int = 1,
) -> CorpusPerturbation:
    """Perturb every sample of a corpus with one kind.

    The per-sample RNG is derived from (cfg.seed, sample id), so records are
    identical for any worker count or corpus ordering. The vector store is
    only required for substitution kinds.
    """
    if kind.is_substitution and store is None:
        raise ConfigError(f"{kind.value} requires a vector store")
    if tagger is None:
        tagger = LexiconTagger()
    if stoplist is None:
        stoplist = load_stopwords()
    effective = replace(cfg, use_constraints=(kind is PerturbKind.SUBST_CONSTRAINED))

    def one(sample) -> PerturbationRecord | SkipEntry:
        intent = tokenize(sample.intent, source_id=sample.id)
        tags = tagger.tag(intent.tokens, sample_id=sample.id)
        try:
            if kind.is_substitution:
                return substitute_words(
                    intent,
                    effective,
                    vocabulary,
                    tags,
                    store,
                    tagger=tagger,
                    stoplist=stoplist,
                    rng=per_sample_rng(cfg.seed, sample.id),
                )
            return omit_words(intent, _KIND_TO_CATEGORY[kind], vocabulary, tags)
        except NoEligibleWords as exc:
            return SkipEntry(sample_id=sample.id, kind=kind, reason=str(exc))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, corpus.samples))
    else:
        outcomes = [one(s) for s in corpus.samples]

    result = CorpusPerturbation()
    for outcome in outcomes:
        if isinstance(outcome, PerturbationRecord):
            result.records.append(outcome)
        else:
            result.skipped.append(outcome)
    return result


def record_to_dict(record: PerturbationRecord) -> dict:
    similarity = record.similarity
    if similarity is not None and math.isnan(similarity):
        similarity = None  # unevaluable; JSON has no NaN
    return {
        "id": record.sample_id,
        "kind": record.kind.value,
        "original": record.original_intent,
        "perturbed": record.perturbed_intent,
        "changed": record.changed_positions,
        "similarity": similarity,
        "gate": record.gate_pass,
    }


def record_from_dict(obj: dict, where: str = "") -> PerturbationRecord:
    try:
        return PerturbationRecord(
            sample_id=str(obj["id"]),
            kind=PerturbKind(obj["kind"]),
            original_intent=obj["original"],
            perturbed_intent=obj["perturbed"],
            changed_positions=list(obj["changed"]),
            similarity=obj.get("similarity"),
            gate_pass=obj.get("gate", GATE_UNEVALUATED),
        )
    except (KeyError, ValueError) as exc:
        raise DataError(f"{where}: malformed perturbation record: {exc}") from exc


def write_records(records: Iterable[PerturbationRecord], path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record_to_dict(record), ensure_ascii=False))
            fh.write("\n")


def read_records(path: str | Path) -> list[PerturbationRecord]:
    return [record_from_dict(obj, f"{path}:{lineno}") for lineno, obj in read_jsonl(path)]
