"""Lexicon-and-rules part-of-speech tagger for short imperative intents.

Tagging order per token: name/number patterns (SYM/NUM, never VERB), the
sentence-initial imperative rule, lexicon lookup, suffix fallbacks, and a
NOUN default. An external tag file (JSONL {"id", "tags"}) can override the
tagger per sample for exact replication of another tool's output.
"""

from __future__ import annotations

import enum
import logging
import re
from importlib import resources
from pathlib import Path

from perturbe._util import read_jsonl
from perturbe.errors import DataError
from perturbe.vocab import Vocabulary, is_name_like, load_registers

logger = logging.getLogger(__name__)


class PosTag(enum.Enum):
    NOUN = "NOUN"
    VERB = "VERB"
    ADJ = "ADJ"
    ADV = "ADV"
    PRON = "PRON"
    PREP = "PREP"
    CONJ = "CONJ"
    DET = "DET"
    NUM = "NUM"
    SYM = "SYM"
    OTHER = "OTHER"


OPEN_CLASS_TAGS = {PosTag.NOUN, PosTag.VERB, PosTag.ADJ, PosTag.ADV}

_NUMBER_RE = re.compile(r"\d+|0[xX][0-9A-Fa-f]+")
_PUNCT_RE = re.compile(r"[^\w\s]+")

_SUFFIX_RULES: tuple[tuple[str, PosTag], ...] = (
    ("ing", PosTag.VERB),
    ("ed", PosTag.VERB),
    ("ly", PosTag.ADV),
    ("tion", PosTag.NOUN),
    ("sion", PosTag.NOUN),
    ("ment", PosTag.NOUN),
    ("ness", PosTag.NOUN),
)


def load_tag_lexicon(path: str | Path | None = None) -> tuple[dict[str, PosTag], set[str]]:
    """Parse word<TAB>tag lines. The first row per word gives its primary tag;
    any VERB row marks the word verb-capable (for the imperative rule)."""
    if path is None:
        text = resources.files("perturbe.data").joinpath("tag_lexicon.tsv").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    primary: dict[str, PosTag] = {}
    verb_capable: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            word, tag_name = line.split("\t")
            tag = PosTag[tag_name.strip()]
        except (ValueError, KeyError) as exc:
            raise DataError(f"tag lexicon line {lineno}: expected word<TAB>tag") from exc
        word = word.strip().lower()
        primary.setdefault(word, tag)
        if tag is PosTag.VERB:
            verb_capable.add(word)
    return primary, verb_capable


class LexiconTagger:
    """Deterministic tagger over an immutable lexicon; safe to share."""

    def __init__(
        self,
        lexicon_path: str | Path | None = None,
        registers: set[str] | None = None,
        vocabulary: Vocabulary | None = None,
    ):
        self.primary, self.verb_capable = load_tag_lexicon(lexicon_path)
        self.registers = registers if registers is not None else load_registers()
        self.vocabulary = vocabulary

    def _pattern_tag(self, token: str) -> PosTag | None:
        if _NUMBER_RE.fullmatch(token):
            return PosTag.NUM
        if _PUNCT_RE.fullmatch(token):
            return PosTag.OTHER
        if self.vocabulary is not None and token in self.vocabulary.name_words:
            return PosTag.SYM
        if is_name_like(token, self.registers):
            return PosTag.SYM
        return None

    def lexical_tag(self, word: str) -> PosTag:
        """Context-free tag, used for substitution candidates."""
        pattern = self._pattern_tag(word)
        if pattern is not None:
            return pattern
        lowered = word.lower()
        if lowered in self.primary:
            return self.primary[lowered]
        for suffix, tag in _SUFFIX_RULES:
            if len(lowered) > len(suffix) + 1 and lowered.endswith(suffix):
                return tag
        return PosTag.NOUN

    def tag(self, tokens: list[str], sample_id: str | None = None) -> list[PosTag]:
        if not tokens:
            raise DataError("cannot tag an empty token list")
        tags: list[PosTag] = []
        for i, token in enumerate(tokens):
            if i == 0 and self._pattern_tag(token) is None and token.lower() in self.verb_capable:
                # Code descriptions are overwhelmingly imperative.
                tags.append(PosTag.VERB)
            else:
                tags.append(self.lexical_tag(token))
        return tags


class FileTagger:
    """Per-sample tag sequences from an external JSONL file, with a
    LexiconTagger fallback for samples the file does not cover."""

    def __init__(self, path: str | Path, fallback: LexiconTagger | None = None):
        self.fallback = fallback if fallback is not None else LexiconTagger()
        self.overrides: dict[str, list[PosTag]] = {}
        for lineno, record in read_jsonl(path):
            if "id" not in record or "tags" not in record:
                raise DataError(f"{path}:{lineno}: expected id and tags fields")
            try:
                self.overrides[str(record["id"])] = [PosTag[t] for t in record["tags"]]
            except KeyError as exc:
                raise DataError(f"{path}:{lineno}: unknown tag {exc}") from exc
        self.fallback_count = 0

    def tag(self, tokens: list[str], sample_id: str | None = None) -> list[PosTag]:
        if sample_id is not None and sample_id in self.overrides:
            tags = self.overrides[sample_id]
            if len(tags) != len(tokens):
                raise DataError(
                    f"tag override for {sample_id!r} has {len(tags)} tags "
                    f"for {len(tokens)} tokens"
                )
            return list(tags)
        self.fallback_count += 1
        return self.fallback.tag(tokens, sample_id)
