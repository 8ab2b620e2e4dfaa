import pathlib

import pytest

from infotweet.bigrucnn import Classifier
from infotweet.cli import load_config
from infotweet.corpus import load_split
from infotweet.embeddings import load_vectors, restrict_to_corpus
from infotweet.preprocess import normalize, tokenize

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def fixtures_dir() -> pathlib.Path:
    return FIXTURES


@pytest.fixture(scope="session")
def model_config():
    return load_config(FIXTURES / "config.ini")


@pytest.fixture(scope="session")
def train_tweets():
    return load_split(FIXTURES / "corpus" / "train.tsv", expect_labels=True)


@pytest.fixture(scope="session")
def dev_tweets():
    return load_split(FIXTURES / "corpus" / "dev.tsv", expect_labels=True)


@pytest.fixture(scope="session")
def test_tweets():
    return load_split(FIXTURES / "corpus" / "test.tsv", expect_labels=True)


@pytest.fixture(scope="session")
def full_table():
    return load_vectors(FIXTURES / "mini_glove.txt", 6)


@pytest.fixture(scope="session")
def corpus_table(full_table, train_tweets, dev_tweets):
    tokens: set[str] = set()
    for tweet in [*train_tweets, *dev_tweets]:
        tokens.update(tokenize(normalize(tweet.text)))
    return restrict_to_corpus(full_table, tokens)


@pytest.fixture(scope="session")
def trained_classifier(model_config, corpus_table, train_tweets, dev_tweets):
    """One fitted model shared by read-only tests; never mutate it."""
    classifier = Classifier(model_config, corpus_table)
    classifier.fit(train_tweets, dev_tweets)
    return classifier
