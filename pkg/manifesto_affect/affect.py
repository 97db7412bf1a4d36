"""
Affect
======
Word-emotion association profiling. Lemmas are matched against a word-level
emotion lexicon (two sentiments plus eight basic emotions) and the hits are
turned into an affect-frequency profile whose ten values sum to one.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .corpus import DocumentRecord, Lemmatizer, normalize_for_affect

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

# canonical order, used for tables, charts and the correlation matrix
AFFECT_CATEGORIES: Tuple[str, ...] = (
    "positive",
    "negative",
    "joy",
    "trust",
    "anticipation",
    "surprise",
    "fear",
    "sadness",
    "anger",
    "disgust",
)
SENTIMENT_CATEGORIES: Tuple[str, ...] = ("positive", "negative")
TJA: Tuple[str, ...] = ("trust", "joy", "anticipation")
FASD: Tuple[str, ...] = ("fear", "anger", "sadness", "disgust")
AFFECT_GROUPS: Dict[str, Tuple[str, ...]] = {
    "sentiment": SENTIMENT_CATEGORIES,
    "tja": TJA,
    "fasd": FASD,
    "all": AFFECT_CATEGORIES,
}


class AffectLexiconError(ValueError):
    """Raised for malformed word-emotion association files."""


@dataclass(frozen=True)
class AffectLexicon:
    """Lowercase lemma -> the affect categories it is associated with."""

    entries: Dict[str, FrozenSet[str]]

    def __post_init__(self) -> None:
        if not self.entries:
            raise AffectLexiconError("empty affect lexicon")

    def __contains__(self, lemma: object) -> bool:
        return lemma in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def categories(self, lemma: str) -> FrozenSet[str]:
        return self.entries.get(lemma, frozenset())

    @property
    def vocabulary(self) -> FrozenSet[str]:
        return frozenset(self.entries)


@dataclass(frozen=True)
class AffectProfile:
    frequencies: Dict[str, float]
    total_hits: int

    @classmethod
    def empty(cls) -> "AffectProfile":
        return cls(frequencies={c: 0.0 for c in AFFECT_CATEGORIES}, total_hits=0)

    def __getitem__(self, category: str) -> float:
        return self.frequencies[category]

    def as_vector(self) -> List[float]:
        """Frequencies in canonical category order."""
        return [self.frequencies[c] for c in AFFECT_CATEGORIES]


def load_affect_lexicon(path: PathLike) -> AffectLexicon:
    """
    Read ``word<TAB>category<TAB>flag`` triples.

    Only categories flagged 1 are kept; words whose flags are all 0 are
    omitted from the lexicon.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise AffectLexiconError(f"cannot read affect lexicon {path}: {exc}") from exc

    known = set(AFFECT_CATEGORIES)
    flagged: Dict[str, set] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.strip().split("\t")
        if len(parts) != 3:
            raise AffectLexiconError(f"{path}:{lineno}: expected 'word<TAB>category<TAB>flag'")
        word, category, flag = (p.strip() for p in parts)
        if category not in known:
            raise AffectLexiconError(f"{path}:{lineno}: unknown category '{category}'")
        if flag not in ("0", "1"):
            raise AffectLexiconError(f"{path}:{lineno}: flag must be 0 or 1, got '{flag}'")
        if flag == "1":
            flagged.setdefault(word.lower(), set()).add(category)

    if not flagged:
        raise AffectLexiconError(f"{path}: empty affect lexicon")
    logger.info("Loaded affect lexicon %s with %d associated words", path, len(flagged))
    return AffectLexicon(entries={w: frozenset(cats) for w, cats in flagged.items()})


def affect_counts(lemmas: Iterable[str], lexicon: AffectLexicon) -> Dict[str, int]:
    """Occurrence-weighted hit count per category."""
    counts: Counter = Counter({c: 0 for c in AFFECT_CATEGORIES})
    for lemma in lemmas:
        counts.update(lexicon.categories(lemma))
    return {c: counts[c] for c in AFFECT_CATEGORIES}


def affect_frequencies(counts: Mapping[str, int]) -> AffectProfile:
    """Share of all category hits per category; all zero when nothing matched."""
    missing = set(AFFECT_CATEGORIES) - set(counts)
    if missing:
        raise ValueError(f"counts missing categories {sorted(missing)}")
    total = sum(counts[c] for c in AFFECT_CATEGORIES)
    if total == 0:
        return AffectProfile.empty()
    return AffectProfile(
        frequencies={c: counts[c] / total for c in AFFECT_CATEGORIES},
        total_hits=total,
    )


def top_categories(profile: AffectProfile, n: Optional[int] = None) -> List[Tuple[str, float]]:
    """Categories by descending frequency; ties keep canonical order."""
    ranked = sorted(
        ((c, profile.frequencies[c]) for c in AFFECT_CATEGORIES),
        key=lambda item: -item[1],
    )
    return ranked if n is None else ranked[:n]


def group_frequency(profile: AffectProfile, group: str) -> float:
    """Summed frequency of a category group ("sentiment", "tja", "fasd", "all")."""
    try:
        members = AFFECT_GROUPS[group]
    except KeyError:
        raise ValueError(f"unknown affect group '{group}'") from None
    return sum(profile.frequencies[c] for c in members)


class AffectAnalyzer:
    """
    Builds affect profiles for sentences and documents.

    The lemmatiser's suffix rules are restricted to the lexicon's vocabulary
    unless a lemmatiser is passed in explicitly.
    """

    def __init__(self, lexicon: AffectLexicon, lemmatizer: Optional[Lemmatizer] = None) -> None:
        self.lexicon = lexicon
        self.lemmatizer = lemmatizer or Lemmatizer(vocabulary=lexicon.vocabulary)

    def lemmas(self, sentences: Sequence[str]) -> List[str]:
        lemmas: List[str] = []
        for sentence in sentences:
            lemmas.extend(normalize_for_affect(sentence, self.lemmatizer))
        return lemmas

    def profile_sentences(self, sentences: Sequence[str]) -> AffectProfile:
        return affect_frequencies(affect_counts(self.lemmas(sentences), self.lexicon))

    def profile_document(self, doc: DocumentRecord) -> AffectProfile:
        profile = self.profile_sentences(doc.sentences)
        logger.info(
            "Profiled %s %d: %d affect hits, positive=%.3f negative=%.3f",
            doc.party,
            doc.year,
            profile.total_hits,
            profile["positive"],
            profile["negative"],
        )
        return profile
