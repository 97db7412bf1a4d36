"""Shared fixtures for the test suite."""
import json
from pathlib import Path
from typing import NamedTuple

import pytest

from manifesto_affect.affect import load_affect_lexicon
from manifesto_affect.resources import resource_path
from manifesto_affect.valence import ValenceScorer, load_valence_lexicon


class SampleSentences(NamedTuple):
    positive: str
    negative: str
    neutral: str


SAMPLE = SampleSentences(
    positive="We will protect a safe, happy and good country.",
    negative="Crime and poverty are a threat.",
    neutral="The plan has ten parts.",
)

# (party, year, gov_status, number of positive sentences out of 6)
SYNTHETIC_DOCS = [
    ("labour", 2001, "incumbent", 5),
    ("labour", 2005, "incumbent", 4),
    ("labour", 2010, "opposition", 2),
    ("conservative", 2001, "opposition", 1),
    ("conservative", 2005, "opposition", 3),
    ("conservative", 2010, "incumbent", 6),
]


def _synthetic_text(positives: int) -> str:
    sentences = [SAMPLE.positive] * positives + [SAMPLE.negative] * (6 - positives)
    return "\n".join(sentences + [SAMPLE.neutral]) + "\n"


def _write_manifest(directory: Path, entries: list) -> Path:
    path = directory / "manifest.json"
    path.write_text(json.dumps(entries), encoding="utf-8")
    return path


@pytest.fixture
def sample_sentences():
    """One clearly positive, one clearly negative and one neutral sentence."""
    return SAMPLE


@pytest.fixture
def synthetic_docs():
    return list(SYNTHETIC_DOCS)


@pytest.fixture
def write_manifest():
    """Writes ``entries`` as ``manifest.json`` in a directory and returns its path."""
    return _write_manifest


@pytest.fixture
def valence_lexicon():
    return load_valence_lexicon(resource_path("valence_lexicon_excerpt.txt"))


@pytest.fixture
def affect_lexicon():
    return load_affect_lexicon(resource_path("affect_lexicon_excerpt.txt"))


@pytest.fixture
def scorer(valence_lexicon):
    return ValenceScorer(valence_lexicon)


@pytest.fixture
def synthetic_corpus(tmp_path):
    """Six two-party manifestos whose positivity rises with the positive-sentence count."""
    corpus_dir = tmp_path / "corpus"
    corpus_dir.mkdir()
    entries = []
    for party, year, status, positives in SYNTHETIC_DOCS:
        name = f"{party}_{year}.txt"
        (corpus_dir / name).write_text(_synthetic_text(positives), encoding="utf-8")
        entries.append({"party": party, "year": year, "gov_status": status, "path": name})
    return _write_manifest(corpus_dir, entries)
