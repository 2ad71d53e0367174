"""Deterministic fixture builders shared across the test suite.

Two vector stores are constructed with controlled geometry:

* golden_store(): 30 verbs arranged so that "stock" is the nearest neighbor
  of "store" (a noun, rejected by the POS constraint) and "save" the best
  qualifying verb. Reproduces the golden substitution examples.
* demo_store(): content words of the demo corpus. Every word carries a
  shared component plus its own axis; synonyms are built from their base
  word's direction with a target cosine, traps get large norms so that
  unconstrained substitution visibly damages sentence embeddings.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from perturbe.corpus import Corpus, Sample
from perturbe.embedding import VectorStore
from perturbe.vocab import Vocabulary

DATA_DIR = Path(__file__).parent / "data"

SYNONYM_NORM = 1.1662  # matches the norm of a (1.0, 0.6) base verb


class _Geometry:
    def __init__(self, dim: int):
        self.dim = dim
        self.words: dict[str, np.ndarray] = {}
        self._next_axis = 1  # axis 0 is the shared component

    def base(self, word: str, common: float, specific: float) -> None:
        v = np.zeros(self.dim)
        v[0] = common
        v[self._next_axis] = specific
        self._next_axis += 1
        self.words[word] = v

    def derived(self, word: str, source: str, cos_target: float, norm: float) -> None:
        u = self.words[source] / np.linalg.norm(self.words[source])
        e = np.zeros(self.dim)
        e[self._next_axis] = 1.0
        self._next_axis += 1
        self.words[word] = norm * (cos_target * u + np.sqrt(1.0 - cos_target**2) * e)


GOLDEN_WORDS = [
    "store", "save", "stock", "keep", "preserve", "place", "put", "move",
    "copy", "transfer", "write", "record", "push", "press", "pop", "jump",
    "leap", "clear", "empty", "flush", "zero", "load", "fetch", "check",
    "verify", "call", "invoke", "point", "set", "test",
]


def golden_vectors() -> dict[str, np.ndarray]:
    geom = _Geometry(dim=36)
    for word in GOLDEN_WORDS:
        if word in ("save", "stock"):
            continue
        geom.base(word, 1.0, 0.6)
    geom.derived("save", "store", 0.90, SYNONYM_NORM)
    geom.derived("stock", "store", 0.95, 2.5)
    assert len(geom.words) == 30
    return geom.words


def golden_store() -> VectorStore:
    return VectorStore(golden_vectors())


def golden_vocabulary() -> Vocabulary:
    return Vocabulary(structure_words={"register"}, name_words={"ESI"})


DEMO_RICH_VERBS = [
    "store", "copy", "move", "clear", "put", "load", "check", "call",
    "jump", "push", "point", "test", "set", "pop", "keep",
]
DEMO_POOR_VERBS = [
    "perform", "subtract", "compare", "zero", "swap", "shift", "divide", "multiply",
]
DEMO_SYNONYMS = [
    ("save", "store", 0.90), ("duplicate", "copy", 0.88), ("relocate", "move", 0.86),
    ("empty", "clear", 0.85), ("place", "put", 0.87), ("fetch", "load", 0.85),
    ("verify", "check", 0.86), ("invoke", "call", 0.84), ("leap", "jump", 0.83),
    ("press", "push", 0.82), ("indicate", "point", 0.84), ("inspect", "test", 0.82),
    ("assign", "set", 0.81), ("pull", "pop", 0.81), ("preserve", "keep", 0.83),
    ("execute", "perform", 0.82), ("deduct", "subtract", 0.82),
    ("contrast", "compare", 0.81), ("nullify", "zero", 0.81),
    ("exchange", "swap", 0.84), ("rotate", "shift", 0.82),
    ("split", "divide", 0.81), ("scale", "multiply", 0.81),
]
DEMO_TRAPS = [
    ("stock", "store", 0.95, 2.5), ("clearance", "clear", 0.86, 3.0),
    ("jumper", "jump", 0.84, 2.8), ("performance", "perform", 0.86, 3.5),
    ("subtraction", "subtract", 0.85, 3.2), ("comparison", "compare", 0.85, 3.0),
    ("null", "zero", 0.84, 2.8), ("division", "divide", 0.85, 3.2),
    ("multiplication", "multiply", 0.85, 3.4),
]
DEMO_STRUCTURE_NOUNS = [
    "register", "registers", "stack", "pointer", "shellcode", "buffer",
    "byte", "bytes", "contents", "value", "address", "label", "function",
    "result", "bits", "flag", "program", "top",
]
DEMO_NAME_TOKENS = [
    "eax", "ebx", "ecx", "edx", "esi", "edi", "ebp", "esp", "al", "bl",
    "cl", "ch", "ax", "0x1", "0x2", "0x4", "0x8", "0x10", "0x20", "0x80",
    "0xff", "0x0b", "0x3c", "_read_loop", "_myfunc", "_exit_proc",
    "_start_label", "_encoder",
]


def demo_vectors() -> dict[str, np.ndarray]:
    geom = _Geometry(dim=128)
    for verb in DEMO_RICH_VERBS + DEMO_POOR_VERBS:
        geom.base(verb, 1.0, 0.6)
    for word, source, cos_target in DEMO_SYNONYMS:
        geom.derived(word, source, cos_target, SYNONYM_NORM)
    for word, source, cos_target, norm in DEMO_TRAPS:
        geom.derived(word, source, cos_target, norm)
    for noun in DEMO_STRUCTURE_NOUNS:
        geom.base(noun, 1.0, 0.85)
    for name in DEMO_NAME_TOKENS:
        geom.base(name, 0.25, 2.2)
    return geom.words


def demo_store() -> VectorStore:
    return VectorStore(demo_vectors())


def write_vector_file(vectors: dict[str, np.ndarray], path: Path, header: bool = False) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if header:
            dim = len(next(iter(vectors.values())))
            fh.write(f"{len(vectors)} {dim}\n")
        for word, vec in vectors.items():
            fh.write(word + " " + " ".join(repr(float(x)) for x in vec) + "\n")


def load_demo_corpus() -> Corpus:
    samples = []
    with open(DATA_DIR / "demo_corpus.jsonl", "r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                obj = json.loads(line)
                samples.append(Sample(obj["id"], obj["intent"], obj["snippet"]))
    return Corpus(samples, name="demo")
