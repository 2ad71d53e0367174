"""Word-vector store: file loading, cosine similarity, exact top-k neighbor
search, and the sentence encoders used by the semantic gate.

Neighbor search is a deterministic linear scan in 64-bit floats with
lexicographic tie-breaking; at counter-fitted-vector scale (~65k words) this
is fast enough and reproducible everywhere.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from perturbe._util import read_jsonl
from perturbe.errors import DataError, EncodingFailure
from perturbe.preprocess import tokenize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Neighbor:
    word: str
    similarity: float


class VectorStore:
    """Immutable word -> vector map with a cached matrix for scans."""

    def __init__(self, vectors: dict[str, np.ndarray]):
        if not vectors:
            raise DataError("vector store is empty")
        dims = {v.shape[0] for v in vectors.values()}
        if len(dims) != 1:
            raise DataError(f"inconsistent vector dimensions: {sorted(dims)}")
        if any(not w for w in vectors):
            raise DataError("vector store contains an empty word")
        self.dimension = dims.pop()
        self._vectors = {w: np.asarray(v, dtype=np.float64) for w, v in vectors.items()}
        self._words = list(self._vectors)
        self._matrix = np.vstack([self._vectors[w] for w in self._words])
        norms = np.linalg.norm(self._matrix, axis=1)
        norms[norms == 0.0] = np.nan  # zero vectors never win a similarity scan
        self._norms = norms

    def __len__(self) -> int:
        return len(self._vectors)

    def __contains__(self, word: str) -> bool:
        return self.resolve(word) is not None

    def words(self) -> list[str]:
        return list(self._words)

    def resolve(self, word: str) -> str | None:
        """Exact lookup first, then lowercase fallback: intents capitalize
        sentence-initial words while vector files are usually lowercase."""
        if word in self._vectors:
            return word
        lowered = word.lower()
        if lowered in self._vectors:
            return lowered
        return None

    def get(self, word: str) -> np.ndarray | None:
        key = self.resolve(word)
        return None if key is None else self._vectors[key]

    def vector(self, word: str) -> np.ndarray:
        vec = self.get(word)
        if vec is None:
            raise DataError(f"word not in vector store: {word!r}")
        return vec

    def top_k(self, word: str, k: int) -> list[Neighbor]:
        return top_k_neighbors(word, k, self)


def load_vectors(path: str | Path) -> VectorStore:
    """Parse a whitespace-delimited vector file: token then D floats per line,
    with an optional 'N D' header. Duplicate tokens: last one wins."""
    path = Path(path)
    vectors: dict[str, np.ndarray] = {}
    dimension: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            fields = line.split()
            if not fields:
                continue
            if lineno == 1 and len(fields) == 2:
                try:
                    int(fields[0]), int(fields[1])
                except ValueError:
                    pass
                else:
                    dimension = int(fields[1])
                    continue
            word, values = fields[0], fields[1:]
            try:
                vec = np.array([float(v) for v in values], dtype=np.float64)
            except ValueError as exc:
                raise DataError(f"{path}:{lineno}: unparseable float") from exc
            if dimension is None:
                if len(vec) == 0:
                    raise DataError(f"{path}:{lineno}: no vector components")
                dimension = len(vec)
            elif len(vec) != dimension:
                raise DataError(
                    f"{path}:{lineno}: expected {dimension} components, got {len(vec)}"
                )
            if word in vectors:
                logger.warning("%s:%d: duplicate token %r, keeping last", path, lineno, word)
            vectors[word] = vec
    if not vectors:
        raise DataError(f"{path}: no vectors loaded")
    return VectorStore(vectors)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine of the angle between two vectors, in 64-bit floats."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise DataError(f"dimension mismatch: {a.shape} vs {b.shape}")
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise DataError("cosine undefined for zero-norm vector")
    return float(np.dot(a, b) / (norm_a * norm_b))


def top_k_neighbors(word: str, k: int, store: VectorStore) -> list[Neighbor]:
    """The k most-similar distinct words (query excluded), cosine descending,
    ties broken lexicographically."""
    if k < 1:
        raise DataError(f"k must be >= 1, got {k}")
    key = store.resolve(word)
    if key is None:
        raise DataError(f"query word not in vector store: {word!r}")
    query = store._vectors[key]
    query_norm = float(np.linalg.norm(query))
    if query_norm == 0.0:
        raise DataError(f"query word has a zero vector: {word!r}")
    sims = store._matrix @ query / (store._norms * query_norm)
    ranked = sorted(
        (
            Neighbor(w, float(s))
            for w, s in zip(store._words, sims)
            if w != key and not np.isnan(s)
        ),
        key=lambda nb: (-nb.similarity, nb.word),
    )
    return ranked[:k]


def sentence_embedding(tokens: list[str], store: VectorStore) -> np.ndarray:
    """L2-normalized mean of the in-vocabulary token vectors (bag of words)."""
    found = [store.get(t) for t in tokens]
    vecs = [v for v in found if v is not None]
    if not vecs:
        raise EncodingFailure(f"no token has a vector: {tokens!r}")
    mean = np.mean(vecs, axis=0)
    norm = float(np.linalg.norm(mean))
    if norm == 0.0:
        raise EncodingFailure("token vectors cancel out to the zero vector")
    return mean / norm


class MeanVectorEncoder:
    """Default sentence encoder: normalized mean of word vectors.

    Tracks skipped out-of-vocabulary tokens as a diagnostic.
    """

    name = "mean-of-word-vectors"

    def __init__(self, store: VectorStore):
        self.store = store
        self.oov_skipped = 0

    def encode(self, text: str, key: str | None = None) -> np.ndarray:
        tokens = tokenize(text).tokens
        self.oov_skipped += sum(1 for t in tokens if t not in self.store)
        return sentence_embedding(tokens, self.store)


class PrecomputedEncoder:
    """Looks up per-intent embeddings computed by an external model.

    File format: JSONL {"id": str, "vec": [floats]}. Originals are keyed by
    sample id; perturbed intents by "<sample_id>#<kind>".
    """

    name = "precomputed-file"

    def __init__(self, path: str | Path):
        self._embeddings: dict[str, np.ndarray] = {}
        for lineno, record in read_jsonl(path):
            if "id" not in record or "vec" not in record:
                raise DataError(f"{path}:{lineno}: expected id and vec fields")
            self._embeddings[str(record["id"])] = np.asarray(record["vec"], dtype=np.float64)
        if not self._embeddings:
            raise DataError(f"{path}: no embeddings loaded")

    def encode(self, text: str, key: str | None = None) -> np.ndarray:
        if key is None or key not in self._embeddings:
            raise EncodingFailure(f"no precomputed embedding for key {key!r}")
        return self._embeddings[key]
