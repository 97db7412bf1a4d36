"""Tests for the word-emotion lexicon and affect profiles."""
import random

import pytest

from manifesto_affect.affect import (
    AFFECT_CATEGORIES,
    AffectAnalyzer,
    AffectLexiconError,
    AffectProfile,
    affect_counts,
    affect_frequencies,
    group_frequency,
    load_affect_lexicon,
    top_categories,
)
from manifesto_affect.corpus import DocumentRecord, GovStatus


def _counts(**hits):
    return {c: hits.get(c, 0) for c in AFFECT_CATEGORIES}


# ---- Lexicon ----


def test_happy_categories(affect_lexicon):
    assert affect_lexicon.categories("happy") == {"anticipation", "joy", "positive", "trust"}


def test_unassociated_word_absent(affect_lexicon):
    assert "policy" not in affect_lexicon
    assert affect_lexicon.categories("policy") == frozenset()


def test_unknown_category_rejected(tmp_path):
    path = tmp_path / "emolex.txt"
    path.write_text("calm\tserenity\t1\n", encoding="utf-8")
    with pytest.raises(AffectLexiconError, match="serenity"):
        load_affect_lexicon(path)


@pytest.mark.parametrize(
    "content, message",
    [
        ("calm\tjoy\n", "word<TAB>category<TAB>flag"),
        ("calm\tjoy\tyes\n", "flag must be 0 or 1"),
        ("calm\tjoy\t0\ncalm\ttrust\t0\n", "empty affect lexicon"),
    ],
)
def test_malformed_affect_lexicon(tmp_path, content, message):
    path = tmp_path / "emolex.txt"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(AffectLexiconError, match=message):
        load_affect_lexicon(path)


def test_all_zero_words_omitted(tmp_path):
    path = tmp_path / "emolex.txt"
    path.write_text("calm\tjoy\t0\ncalm\ttrust\t0\nhope\tjoy\t1\nhope\ttrust\t0\n", encoding="utf-8")
    lexicon = load_affect_lexicon(path)
    assert "calm" not in lexicon
    assert lexicon.categories("hope") == {"joy"}
    assert len(lexicon) == 1


# ---- Counts and frequencies ----


def test_counts_of_nothing(affect_lexicon):
    counts = affect_counts([], affect_lexicon)
    assert list(counts) == list(AFFECT_CATEGORIES)
    assert all(v == 0 for v in counts.values())


def test_counts_weight_repeated_lemmas(affect_lexicon):
    counts = affect_counts(["happy", "happy"], affect_lexicon)
    assert counts == _counts(anticipation=2, joy=2, positive=2, trust=2)


def test_frequencies_of_happy(affect_lexicon):
    profile = affect_frequencies(affect_counts(["happy"], affect_lexicon))
    for category in ("anticipation", "joy", "positive", "trust"):
        assert profile[category] == pytest.approx(0.25)
    assert profile["fear"] == 0.0
    assert profile.total_hits == 4


def test_frequencies_without_hits():
    profile = affect_frequencies(_counts())
    assert profile == AffectProfile.empty()
    assert sum(profile.as_vector()) == 0.0


def test_frequencies_need_every_category():
    with pytest.raises(ValueError, match="missing"):
        affect_frequencies({"joy": 1})


def test_frequency_properties_on_random_lemma_lists(affect_lexicon):
    rng = random.Random(1234)
    vocabulary = sorted(affect_lexicon.vocabulary) + ["policy", "the", "manifesto", "plan"]
    for _ in range(1000):
        lemmas = [rng.choice(vocabulary) for _ in range(rng.randint(1, 30))]
        counts = affect_counts(lemmas, affect_lexicon)
        profile = affect_frequencies(counts)
        assert set(profile.frequencies) == set(AFFECT_CATEGORIES)
        assert all(v >= 0.0 for v in profile.frequencies.values())
        if profile.total_hits:
            assert sum(profile.as_vector()) == pytest.approx(1.0, abs=1e-9)

        shuffled = list(lemmas)
        rng.shuffle(shuffled)
        assert affect_counts(shuffled, affect_lexicon) == counts

        # appending a lemma never lowers any raw count
        extra = affect_counts(lemmas + [rng.choice(vocabulary)], affect_lexicon)
        assert all(extra[c] >= counts[c] for c in AFFECT_CATEGORIES)


SINGLE_CATEGORY_LEMMAS = {"build": "positive", "economy": "trust", "tax": "negative", "school": "trust"}


def test_single_category_lemmas(affect_lexicon):
    for lemma, category in SINGLE_CATEGORY_LEMMAS.items():
        assert affect_lexicon.categories(lemma) == frozenset({category})


def test_single_category_lemma_shifts_frequencies_towards_its_category(affect_lexicon):
    rng = random.Random(99)
    vocabulary = sorted(affect_lexicon.vocabulary) + ["policy", "the"]
    for _ in range(500):
        lemmas = [rng.choice(vocabulary) for _ in range(rng.randint(0, 25))]
        added, category = rng.choice(sorted(SINGLE_CATEGORY_LEMMAS.items()))
        before = affect_frequencies(affect_counts(lemmas, affect_lexicon))
        after = affect_frequencies(affect_counts(lemmas + [added], affect_lexicon))

        if before[category] < 1.0:
            assert after[category] > before[category]
        else:
            assert after[category] == 1.0
        for other in AFFECT_CATEGORIES:
            if other == category:
                continue
            if before[other] > 0.0:
                assert after[other] < before[other]
            else:
                assert after[other] == 0.0


# ---- Ranking and groups ----


def test_top_categories_order(affect_lexicon):
    profile = affect_frequencies(affect_counts(["happy", "happy", "crime"], affect_lexicon))
    ranked = top_categories(profile)
    assert [c for c, _ in ranked[:4]] == ["positive", "joy", "trust", "anticipation"]
    assert ranked[4] == ("negative", pytest.approx(0.1))
    assert top_categories(profile, n=2) == ranked[:2]


def test_group_frequency(affect_lexicon):
    profile = affect_frequencies(affect_counts(["happy", "threat"], affect_lexicon))
    assert group_frequency(profile, "tja") == pytest.approx(3 / 7)
    assert group_frequency(profile, "fasd") == pytest.approx(2 / 7)
    assert group_frequency(profile, "all") == pytest.approx(1.0)
    with pytest.raises(ValueError, match="unknown affect group"):
        group_frequency(profile, "calm")


# ---- Analyzer ----


def test_analyzer_profiles_sentences(affect_lexicon, sample_sentences):
    analyzer = AffectAnalyzer(affect_lexicon)
    profile = analyzer.profile_sentences([sample_sentences.positive])
    assert profile.total_hits == 13
    assert profile["positive"] == pytest.approx(4 / 13)
    assert profile["surprise"] == pytest.approx(1 / 13)
    assert profile["negative"] == 0.0


def test_analyzer_lemmatises_inflections(affect_lexicon):
    analyzer = AffectAnalyzer(affect_lexicon)
    assert analyzer.lemmas(["Threats and crimes."]) == ["threat", "and", "crime"]


def test_analyzer_profiles_document(affect_lexicon, sample_sentences):
    doc = DocumentRecord(
        party="conservative",
        year=2010,
        gov_status=GovStatus.OPPOSITION,
        sentences=(sample_sentences.positive, sample_sentences.negative),
    )
    profile = AffectAnalyzer(affect_lexicon).profile_document(doc)
    assert profile.total_hits == 23
    assert profile["anger"] == pytest.approx(3 / 23)
    assert sum(profile.as_vector()) == pytest.approx(1.0)
