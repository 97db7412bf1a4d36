"""Agreement of ValenceScorer with the stock vaderSentiment engine.

Skipped unless the ``oracle`` extra is installed.
"""
import re
from pathlib import Path

import pytest

from manifesto_affect.valence import BoundaryMode, ValenceScorer, classify, load_valence_lexicon

vader = pytest.importorskip("vaderSentiment.vaderSentiment")

SUITE = Path(__file__).parent / "data" / "valence_suite.txt"
WORD_KEY = re.compile(r"[^\W_]+(?:'[^\W_]+)*")
INCLUSIVE = BoundaryMode.INCLUSIVE_REFERENCE


def _suite():
    lines = SUITE.read_text(encoding="utf-8").splitlines()
    return [line for line in lines if line.strip() and not line.startswith("#")]


@pytest.fixture(scope="module")
def reference():
    return vader.SentimentIntensityAnalyzer()


@pytest.fixture(scope="module")
def full_lexicon():
    return load_valence_lexicon(Path(vader.__file__).parent / "vader_lexicon.txt", keep_last=True)


@pytest.fixture(scope="module")
def full_scorer(full_lexicon):
    return ValenceScorer(full_lexicon, boundary_mode=INCLUSIVE)


def test_published_lexicon_loads_like_the_stock_engine(reference, full_lexicon):
    # repeated tokens keep their last value; emoticons and mixed-case keys are left out
    expected = {
        token: float(value)
        for token, value in reference.lexicon.items()
        if token == token.lower() and WORD_KEY.fullmatch(token)
    }
    assert dict(full_lexicon.entries) == expected


def test_suite_size():
    assert len(_suite()) == 100


@pytest.mark.parametrize("sentence", _suite())
def test_compound_agrees(sentence, reference, full_scorer):
    expected = reference.polarity_scores(sentence)["compound"]
    ours = full_scorer.compound_score(sentence)
    assert ours.compound == pytest.approx(expected, abs=1e-4)
    # the reference rounds to four places before anyone labels it
    assert classify(round(ours.compound, 4), INCLUSIVE) is classify(expected, INCLUSIVE)


def test_polarity_breakdown_agrees(reference, full_scorer):
    for sentence in _suite()[:25]:
        theirs = reference.polarity_scores(sentence)
        ours = full_scorer.polarity_scores(sentence)
        assert ours.pos == pytest.approx(theirs["pos"], abs=1e-3)
        assert ours.neg == pytest.approx(theirs["neg"], abs=1e-3)
        assert ours.neu == pytest.approx(theirs["neu"], abs=1e-3)
