import pytest

from perturbe.postag import LexiconTagger
from perturbe.preprocess import load_stopwords
from perturbe.vocab import build_vocabulary, count_frequencies

import helpers


@pytest.fixture(scope="session")
def stopwords():
    return load_stopwords()


@pytest.fixture(scope="session")
def tagger():
    return LexiconTagger()


@pytest.fixture(scope="session")
def golden_store():
    return helpers.golden_store()


@pytest.fixture(scope="session")
def golden_vocab():
    return helpers.golden_vocabulary()


@pytest.fixture(scope="session")
def demo_corpus():
    return helpers.load_demo_corpus()


@pytest.fixture(scope="session")
def demo_store():
    return helpers.demo_store()


@pytest.fixture(scope="session")
def demo_vocab(demo_corpus, stopwords):
    from importlib import resources

    codegen = count_frequencies((s.intent for s in demo_corpus), stopwords)
    text = resources.files("perturbe.data").joinpath("comparison_corpus.txt").read_text("utf-8")
    comparison = count_frequencies(text.splitlines(), stopwords)
    return build_vocabulary(codegen, comparison)
