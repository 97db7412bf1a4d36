"""Tests for manifest loading, cleaning, segmentation and lemmatisation."""
import json
import random

import pytest

from manifesto_affect.corpus import (
    GovStatus,
    Lemmatizer,
    ManifestError,
    ResourceFormatError,
    clean_text,
    lemmatize,
    load_abbreviations,
    load_document,
    load_lemma_table,
    load_manifest,
    load_unicode_map,
    normalize_for_affect,
    split_sentences,
    tokenize,
)


def _entry(party, year, status="incumbent", path="doc.txt"):
    return {"party": party, "year": year, "gov_status": status, "path": path}


# ---- Manifest ----


def test_manifest_with_twelve_entries(tmp_path, write_manifest):
    entries = []
    for party in ("labour", "conservative"):
        for year in (2001, 2005, 2010, 2015, 2017, 2019):
            name = f"{party}{year}.txt"
            (tmp_path / name).write_text("Text.", encoding="utf-8")
            entries.append(_entry(party, year, "opposition", name))
    manifest = load_manifest(write_manifest(tmp_path, entries))
    assert len(manifest) == 12
    assert manifest.parties == ["labour", "conservative"]
    assert all(e.path.is_file() for e in manifest)
    assert manifest.entries[0].gov_status is GovStatus.OPPOSITION


def test_empty_manifest_rejected(tmp_path, write_manifest):
    with pytest.raises(ManifestError, match="empty manifest"):
        load_manifest(write_manifest(tmp_path, []))


def test_duplicate_party_year_rejected(tmp_path, write_manifest):
    (tmp_path / "doc.txt").write_text("Text.", encoding="utf-8")
    path = write_manifest(tmp_path, [_entry("labour", 2019), _entry("labour", 2019)])
    with pytest.raises(ManifestError, match="duplicate"):
        load_manifest(path)


def test_unknown_status_rejected(tmp_path, write_manifest):
    (tmp_path / "doc.txt").write_text("Text.", encoding="utf-8")
    path = write_manifest(tmp_path, [_entry("labour", 2019, status="coalition")])
    with pytest.raises(ManifestError, match="gov_status"):
        load_manifest(path)


def test_unknown_keys_rejected(tmp_path, write_manifest):
    (tmp_path / "doc.txt").write_text("Text.", encoding="utf-8")
    entry = dict(_entry("labour", 2019), leader="someone")
    with pytest.raises(ManifestError, match="unknown keys"):
        load_manifest(write_manifest(tmp_path, [entry]))


def test_years_must_increase_within_party(tmp_path, write_manifest):
    (tmp_path / "doc.txt").write_text("Text.", encoding="utf-8")
    path = write_manifest(tmp_path, [_entry("labour", 2010), _entry("labour", 2005)])
    with pytest.raises(ManifestError, match="strictly increasing"):
        load_manifest(path)


def test_missing_text_file_named(tmp_path, write_manifest):
    path = write_manifest(tmp_path, [_entry("labour", 2019, path="absent.txt")])
    with pytest.raises(ManifestError, match="absent.txt"):
        load_manifest(path)


def test_missing_manifest(tmp_path):
    with pytest.raises(ManifestError, match="not found"):
        load_manifest(tmp_path / "nope.json")


def test_manifest_must_be_array(tmp_path):
    path = tmp_path / "manifest.json"
    path.write_text(json.dumps({"party": "labour"}), encoding="utf-8")
    with pytest.raises(ManifestError, match="array"):
        load_manifest(path)


# ---- Cleaning ----


def test_clean_newlines():
    assert clean_text("We will\ninvest.") == "We will invest."


def test_clean_urls():
    assert clean_text("See https://labour.org.uk for detail") == "See for detail"
    assert clean_text("Visit www.conservatives.com.") == "Visit ."


def test_clean_urls_ignores_case():
    assert clean_text("Visit WWW.LABOUR.ORG.UK today") == "Visit today"
    assert clean_text("See HTTPS://LABOUR.ORG.UK now") == "See now"


def test_clean_typographic_quotes():
    assert clean_text("It’s “fair”") == 'It\'s "fair"'


def test_clean_dashes_and_ligatures():
    assert clean_text("ﬁnance — eﬀort") == "finance - effort"


def test_clean_is_idempotent():
    rng = random.Random(7)
    alphabet = list("ab .!?\n\t") + ["’", "“", "—", "ﬁ", " ", "www.x.org", "http://a.b/c"]
    for _ in range(300):
        raw = "".join(rng.choice(alphabet) for _ in range(rng.randint(0, 40)))
        once = clean_text(raw)
        assert clean_text(once) == once
        assert "\n" not in once


# ---- Segmentation ----


def test_split_two_sentences():
    assert split_sentences("We will invest. We will rebuild.") == ["We will invest.", "We will rebuild."]


def test_split_empty():
    assert split_sentences("") == []


def test_split_respects_abbreviations():
    sentences = split_sentences("Mr. Brown leads the party. He speaks.")
    assert sentences == ["Mr. Brown leads the party.", "He speaks."]


def test_split_respects_dotted_acronyms():
    sentences = split_sentences("We back the U.K. Government. It works.")
    assert sentences == ["We back the U.K. Government.", "It works."]


def test_split_needs_uppercase_after_boundary():
    assert split_sentences("Growth is 2.5 per cent. and rising.") == ["Growth is 2.5 per cent. and rising."]


def test_split_joined_reconstructs_input():
    text = "We will invest! Will you? Dr. Who agrees. Yes."
    assert " ".join(split_sentences(text)) == text


def test_load_abbreviations_default_contains_common_titles():
    abbreviations = load_abbreviations()
    assert {"mr.", "mrs.", "dr.", "st.", "no.", "e.g.", "i.e.", "etc."} <= abbreviations


def test_abbreviation_file_format(tmp_path):
    path = tmp_path / "abbrev.txt"
    path.write_text("# titles\nmr.\nmrs\n", encoding="utf-8")
    with pytest.raises(ResourceFormatError, match=":3:"):
        load_abbreviations(path)


# ---- Tokens and lemmas ----


def test_tokenize_punctuation_separate():
    assert tokenize("Britain deserves better!") == ["Britain", "deserves", "better", "!"]


def test_tokenize_keeps_internal_apostrophe():
    assert tokenize("don't stop") == ["don't", "stop"]


def test_tokenize_hyphen():
    assert tokenize("tax-free growth") == ["tax", "-", "free", "growth"]


@pytest.mark.parametrize(
    "token, lemma",
    [
        ("policy", "policy"),
        ("policies", "policy"),
        ("taxes", "tax"),
        ("economies", "economy"),
        ("always", "always"),
        ("perhaps", "perhaps"),
        ("during", "during"),
        ("towards", "towards"),
    ],
)
def test_lemmatize(token, lemma):
    assert lemmatize(token) == lemma


def test_lemmatizer_suffix_rules_without_table():
    lem = Lemmatizer(table={})
    assert lem.lemmatize("boxes") == "box"
    assert lem.lemmatize("cities") == "city"
    assert lem.lemmatize("schools") == "school"
    assert lem.lemmatize("business") == "business"
    assert lem.lemmatize("planned") == "plan"


def test_lemmatizer_vocabulary_restricts_candidates():
    lem = Lemmatizer(table={}, vocabulary={"hope", "invest"})
    assert lem.lemmatize("hoped") == "hope"
    assert lem.lemmatize("investing") == "invest"
    # no known candidate: keep the word
    assert lem.lemmatize("zorbing") == "zorbing"


def test_lemma_table_conflict(tmp_path):
    path = tmp_path / "lemmas.tsv"
    path.write_text("ran\trun\nran\trace\n", encoding="utf-8")
    with pytest.raises(ResourceFormatError, match="conflicting"):
        load_lemma_table(path)


def test_unicode_map_format(tmp_path):
    path = tmp_path / "map.tsv"
    path.write_text("U+2019\t'\nbogus\tx\n", encoding="utf-8")
    with pytest.raises(ResourceFormatError, match=":2:"):
        load_unicode_map(path)


def test_normalize_for_affect():
    assert normalize_for_affect("We protect, we build!") == ["we", "protect", "we", "build"]
    assert normalize_for_affect("!!!") == []
    assert normalize_for_affect("Stronger economies") == ["stronger", "economy"]


def test_normalized_lemmas_are_lowercase_alphanumeric():
    for lemma in normalize_for_affect("Labour's NHS plans can't wait: 2019 pledges, £20bn!"):
        assert lemma == lemma.lower()
        assert lemma.isalnum()


# ---- Documents ----


def test_load_document(tmp_path, write_manifest):
    (tmp_path / "doc.txt").write_text("We will invest.\nSee www.x.org for more. Done.", encoding="utf-8")
    manifest = load_manifest(write_manifest(tmp_path, [_entry("labour", 2001)]))
    doc = load_document(manifest.entries[0])
    assert doc.sentences == ("We will invest.", "See for more.", "Done.")
    assert doc.sentence_count == 3
    assert all("\n" not in s and "www." not in s for s in doc.sentences)


def test_load_document_without_sentences(tmp_path, write_manifest):
    (tmp_path / "doc.txt").write_text("  \n\n", encoding="utf-8")
    manifest = load_manifest(write_manifest(tmp_path, [_entry("labour", 2001)]))
    with pytest.raises(ManifestError, match="no sentences"):
        load_document(manifest.entries[0])


def test_unicode_map_escapes_and_literals(tmp_path):
    path = tmp_path / "map.tsv"
    path.write_text("U+00A0\t\\x20\nU+2212\t\\u002d\nU+00E6\t\u00e6\nU+2044\t\\\\\nU+FEFF\t\n", encoding="utf-8")
    mapping = load_unicode_map(path)
    assert mapping["\u00a0"] == " "
    assert mapping["\u2212"] == "-"
    # non-ASCII replacements are taken as written
    assert mapping["\u00e6"] == "\u00e6"
    assert mapping["\u2044"] == "\\"
    assert mapping["\ufeff"] == ""


def test_unicode_map_bad_escape(tmp_path):
    path = tmp_path / "map.tsv"
    path.write_text("U+00A0\t\\x20\nU+2212\t\\q\n", encoding="utf-8")
    with pytest.raises(ResourceFormatError, match=":2: bad escape"):
        load_unicode_map(path)
