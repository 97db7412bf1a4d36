"""
Valence
=======
Rule-based sentence valence scoring: lexicon lookup plus contextual
heuristics (boosters, negation, ALL-CAPS emphasis, contrastive "but",
punctuation emphasis), normalisation of the summed valence to a compound
score in (-1, 1), and ternary labelling at +/-0.05.

The heuristics and their constants follow the published VADER engine;
the constants live in ``resources/valence_constants.txt``.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, fields
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .corpus import DocumentRecord, is_word, tokenize
from .resources import resource_path

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

_LEXICON_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*")

NEGATE = frozenset(
    {
        "aint", "arent", "cannot", "cant", "couldnt", "darent", "didnt", "doesnt",
        "ain't", "aren't", "can't", "couldn't", "daren't", "didn't", "doesn't",
        "dont", "hadnt", "hasnt", "havent", "isnt", "mightnt", "mustnt", "neither",
        "don't", "hadn't", "hasn't", "haven't", "isn't", "mightn't", "mustn't",
        "neednt", "needn't", "never", "none", "nope", "nor", "not", "nothing", "nowhere",
        "oughtnt", "shant", "shouldnt", "uhuh", "wasnt", "werent",
        "oughtn't", "shan't", "shouldn't", "uh-uh", "wasn't", "weren't",
        "without", "wont", "wouldnt", "won't", "wouldn't", "rarely", "seldom", "despite",
    }
)

# +1 boosts, -1 dampens; scaled by ValenceConstants.booster_increment
BOOSTERS: Dict[str, int] = {
    **dict.fromkeys(
        [
            "absolutely", "amazingly", "awfully", "completely", "considerable", "considerably",
            "decidedly", "deeply", "effing", "enormous", "enormously", "entirely", "especially",
            "exceptional", "exceptionally", "extreme", "extremely", "fabulously", "flipping",
            "flippin", "frackin", "fracking", "fricking", "frickin", "frigging", "friggin",
            "fully", "fuckin", "fucking", "fuggin", "fugging", "greatly", "hella", "highly",
            "hugely", "incredible", "incredibly", "intensely", "major", "majorly", "more", "most",
            "particularly", "purely", "quite", "really", "remarkably", "so", "substantially",
            "thoroughly", "total", "totally", "tremendous", "tremendously", "uber",
            "unbelievably", "unusually", "utter", "utterly", "very",
        ],
        1,
    ),
    **dict.fromkeys(
        [
            "almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof",
            "kind-of", "less", "little", "marginal", "marginally", "occasional",
            "occasionally", "partly", "scarce", "scarcely", "slight", "slightly", "somewhat",
            "sort of", "sorta", "sortof", "sort-of",
        ],
        -1,
    ),
}

# multi-word phrases that override the valence of the lexicon word they contain
SPECIAL_CASES: Dict[str, float] = {
    "the shit": 3.0,
    "the bomb": 3.0,
    "bad ass": 1.5,
    "badass": 1.5,
    "bus stop": 0.0,
    "yeah right": -2.0,
    "kiss of death": -1.5,
    "to die for": 3.0,
    "beating heart": 3.1,
    "broken heart": -2.9,
}


class LexiconError(ValueError):
    """Raised for malformed valence lexicon or constants files."""


class EmptyDocumentError(ValueError):
    """Raised when a document without sentences is scored."""


class Sentiment(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


class BoundaryMode(str, Enum):
    STRICT_PAPER = "strict_paper"                 # |c| == threshold stays neutral
    INCLUSIVE_REFERENCE = "inclusive_reference"   # |c| == threshold is labelled


@dataclass(frozen=True)
class ValenceConstants:
    alpha: float = 15.0
    booster_increment: float = 0.293
    booster_decay_2: float = 0.95
    booster_decay_3: float = 0.9
    caps_increment: float = 0.733
    negation_scalar: float = -0.74
    never_so_scalar: float = 1.25
    but_before_weight: float = 0.5
    but_after_weight: float = 1.5
    exclamation_increment: float = 0.292
    exclamation_max_count: int = 4
    question_increment: float = 0.18
    question_max_count: int = 3
    question_flood_value: float = 0.96
    label_threshold: float = 0.05
    inclusive_boundaries: bool = False

    @property
    def boundary_mode(self) -> BoundaryMode:
        return BoundaryMode.INCLUSIVE_REFERENCE if self.inclusive_boundaries else BoundaryMode.STRICT_PAPER


def load_valence_constants(path: Optional[PathLike] = None) -> ValenceConstants:
    """
    Parse the ``key = value`` constants table.

    Every field of :class:`ValenceConstants` must be present exactly once;
    unknown keys are rejected.
    """
    if path is None:
        return _default_constants()
    return _read_constants(Path(path))


@lru_cache(maxsize=None)
def _default_constants() -> ValenceConstants:
    return _read_constants(resource_path("valence_constants.txt"))


def _read_constants(path: Path) -> ValenceConstants:
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise LexiconError(f"cannot read constants table {path}: {exc}") from exc

    types = {f.name: f.type for f in fields(ValenceConstants)}
    values: Dict[str, object] = {}
    for lineno, line in enumerate(lines, start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, raw = (part.strip() for part in line.partition("="))
        if not sep or key not in types:
            raise LexiconError(f"{path}:{lineno}: unknown or malformed constant {line!r}")
        if key in values:
            raise LexiconError(f"{path}:{lineno}: duplicate constant '{key}'")
        try:
            number = float(raw)
        except ValueError:
            raise LexiconError(f"{path}:{lineno}: '{key}' is not numeric") from None
        if types[key] in ("int", int):
            values[key] = int(number)
        elif types[key] in ("bool", bool):
            values[key] = bool(int(number))
        else:
            values[key] = number

    missing = set(types) - set(values)
    if missing:
        raise LexiconError(f"{path}: missing constants {sorted(missing)}")
    return ValenceConstants(**values)  # type: ignore[arg-type]


# ----------------------------------------------------------------------
# Lexicon
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ValenceLexicon:
    """Lowercase token -> mean valence in [-4, 4]."""

    entries: Dict[str, float]

    def __post_init__(self) -> None:
        if not self.entries:
            raise LexiconError("empty lexicon")

    def __contains__(self, token: object) -> bool:
        return token in self.entries

    def __getitem__(self, token: str) -> float:
        return self.entries[token]

    def __len__(self) -> int:
        return len(self.entries)


def load_valence_lexicon(path: PathLike, keep_last: bool = False) -> ValenceLexicon:
    """
    Read a tab-separated valence lexicon (token, mean, stddev, ratings).

    Only the mean is retained. Entries that cannot be produced by the word
    tokenizer (emoticons, keys with uppercase letters) are skipped; they can
    never match a lowercased word.

    Parameters
    ----------
    path:
        Lexicon file.
    keep_last:
        The published lexicon repeats a handful of tokens (``fav``, ``lol``,
        ``ok``, ...). With ``keep_last`` a repeated token takes its last value
        and a WARNING names it, as the stock engine does; otherwise a repeat
        is an error.

    Raises
    ------
    LexiconError
        Missing file, wrong arity, non-numeric columns, mean outside [-4, 4],
        duplicate token (unless ``keep_last``) or an empty lexicon.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise LexiconError(f"cannot read valence lexicon {path}: {exc}") from exc

    entries: Dict[str, float] = {}
    skipped = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.rstrip("\r").split("\t")
        if len(parts) != 4:
            raise LexiconError(f"{path}:{lineno}: expected 4 tab-separated columns, got {len(parts)}")
        token, mean_raw, std_raw, _ratings = parts
        try:
            mean = float(mean_raw)
            float(std_raw)
        except ValueError:
            raise LexiconError(f"{path}:{lineno}: non-numeric mean or stddev") from None
        if not math.isfinite(mean) or not -4.0 <= mean <= 4.0:
            raise LexiconError(f"{path}:{lineno}: mean {mean} outside [-4, 4]")
        token = token.strip()
        if token != token.lower() or not _LEXICON_TOKEN.fullmatch(token):
            skipped += 1
            continue
        if token in entries:
            if not keep_last:
                raise LexiconError(f"{path}:{lineno}: duplicate token '{token}'")
            logger.warning("%s:%d: duplicate token '%s', keeping the later value", path, lineno, token)
        entries[token] = mean

    if not entries:
        raise LexiconError(f"{path}: empty lexicon")
    if skipped:
        logger.warning("Skipped %d non-word entries (emoticons, mixed case) in %s", skipped, path)
    logger.info("Loaded valence lexicon %s with %d entries", path, len(entries))
    return ValenceLexicon(entries=entries)


# ----------------------------------------------------------------------
# Scores
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SentenceScore:
    compound: float
    label: Sentiment


@dataclass(frozen=True)
class PolarityScores:
    neg: float
    neu: float
    pos: float
    compound: float


@dataclass(frozen=True)
class SentimentCounts:
    positive: int
    negative: int
    neutral: int

    @property
    def total(self) -> int:
        return self.positive + self.negative + self.neutral

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.positive, self.negative, self.neutral)


def normalize_score(raw_sum: float, alpha: float = 15.0) -> float:
    """Map a summed valence into (-1, 1): ``s / sqrt(s*s + alpha)``."""
    if not math.isfinite(raw_sum):
        raise ValueError(f"raw_sum must be finite, got {raw_sum}")
    return raw_sum / math.sqrt(raw_sum * raw_sum + alpha)


def classify(
    compound: float,
    mode: BoundaryMode = BoundaryMode.STRICT_PAPER,
    threshold: float = 0.05,
) -> Sentiment:
    """
    Ternary label for a compound score.

    ``strict_paper`` needs the score to be strictly beyond the threshold;
    ``inclusive_reference`` also labels scores sitting exactly on it.
    """
    if not -1.0 <= compound <= 1.0:
        raise ValueError(f"compound {compound} outside [-1, 1]")
    if BoundaryMode(mode) is BoundaryMode.INCLUSIVE_REFERENCE:
        if compound >= threshold:
            return Sentiment.POSITIVE
        if compound <= -threshold:
            return Sentiment.NEGATIVE
        return Sentiment.NEUTRAL
    if compound > threshold:
        return Sentiment.POSITIVE
    if compound < -threshold:
        return Sentiment.NEGATIVE
    return Sentiment.NEUTRAL


# ----------------------------------------------------------------------
# Scorer
# ----------------------------------------------------------------------


class ValenceScorer:
    """
    Scores sentences against a valence lexicon.

    Usage::

        scorer = ValenceScorer(load_valence_lexicon("vader_lexicon.txt"))
        scorer.compound_score("We will build a stronger economy.")
    """

    def __init__(
        self,
        lexicon: ValenceLexicon,
        constants: Optional[ValenceConstants] = None,
        boundary_mode: Optional[BoundaryMode] = None,
    ) -> None:
        self.lexicon = lexicon
        self.constants = constants or load_valence_constants()
        self.boundary_mode = BoundaryMode(boundary_mode) if boundary_mode else self.constants.boundary_mode

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def token_valences(self, tokens: Sequence[str]) -> List[float]:
        """Adjusted valence of every lexicon-matched word, in sentence order."""
        words = [t for t in tokens if is_word(t)]
        lowered = [w.lower() for w in words]
        sentiments = self._word_sentiments(words)
        return [s for i, s in enumerate(sentiments) if self._is_scored(lowered, i)]

    def compound_score(self, sentence: str) -> SentenceScore:
        compound, _ = self._score(sentence)
        label = classify(compound, self.boundary_mode, self.constants.label_threshold)
        logger.debug("compound=%.4f label=%s sentence=%r", compound, label.value, sentence)
        return SentenceScore(compound=compound, label=label)

    def polarity_scores(self, sentence: str) -> PolarityScores:
        """Compound score plus the positive/neutral/negative proportions of the sentence."""
        compound, sentiments = self._score(sentence)
        if not sentiments:
            return PolarityScores(neg=0.0, neu=0.0, pos=0.0, compound=compound)

        emphasis = self._punctuation_emphasis(sentence)
        pos_sum = sum(s + 1 for s in sentiments if s > 0)
        neg_sum = sum(s - 1 for s in sentiments if s < 0)
        neu_count = sum(1 for s in sentiments if s == 0)
        if pos_sum > abs(neg_sum):
            pos_sum += emphasis
        elif pos_sum < abs(neg_sum):
            neg_sum -= emphasis
        total = pos_sum + abs(neg_sum) + neu_count
        return PolarityScores(
            neg=abs(neg_sum / total),
            neu=abs(neu_count / total),
            pos=abs(pos_sum / total),
            compound=compound,
        )

    def analyze_document_sentiment(self, doc: DocumentRecord) -> SentimentCounts:
        """Count positive, negative and neutral sentences in a document."""
        if not doc.sentences:
            raise EmptyDocumentError(f"{doc.party} {doc.year}: document has no sentences")
        tally = {label: 0 for label in Sentiment}
        for sentence in doc.sentences:
            tally[self.compound_score(sentence).label] += 1
        counts = SentimentCounts(
            positive=tally[Sentiment.POSITIVE],
            negative=tally[Sentiment.NEGATIVE],
            neutral=tally[Sentiment.NEUTRAL],
        )
        logger.info(
            "Scored %s %d: %d positive, %d negative, %d neutral",
            doc.party,
            doc.year,
            counts.positive,
            counts.negative,
            counts.neutral,
        )
        return counts

    # ------------------------------------------------------------------
    # Internals
    # ------------------------------------------------------------------

    def _score(self, sentence: str) -> Tuple[float, List[float]]:
        words = [t for t in tokenize(sentence) if is_word(t)]
        sentiments = self._word_sentiments(words)
        if not sentiments:
            return 0.0, sentiments
        total = float(sum(sentiments))
        emphasis = self._punctuation_emphasis(sentence)
        if total > 0:
            total += emphasis
        elif total < 0:
            total -= emphasis
        return normalize_score(total, self.constants.alpha), sentiments

    def _is_scored(self, lowered: Sequence[str], i: int) -> bool:
        lower = lowered[i]
        if lower not in self.lexicon or lower in BOOSTERS:
            return False
        return not (lower == "kind" and i < len(lowered) - 1 and lowered[i + 1] == "of")

    def _word_sentiments(self, words: Sequence[str]) -> List[float]:
        """One adjusted valence per word; words outside the lexicon score 0."""
        lowered = [w.lower() for w in words]
        cap_differential = _allcap_differential(words)
        sentiments: List[float] = []
        for i, word in enumerate(words):
            lower = lowered[i]
            if lower in BOOSTERS:
                sentiments.append(0.0)
                continue
            if i < len(words) - 1 and lower == "kind" and lowered[i + 1] == "of":
                sentiments.append(0.0)
                continue
            sentiments.append(self._word_valence(words, lowered, i, cap_differential))
        return self._but_check(lowered, sentiments)

    def _word_valence(
        self, words: Sequence[str], lowered: Sequence[str], i: int, cap_differential: bool
    ) -> float:
        c = self.constants
        word, lower = words[i], lowered[i]
        if lower not in self.lexicon:
            return 0.0
        valence = self.lexicon[lower]

        # "no" directly before another lexicon word acts as a negator, not a sentiment word
        if lower == "no" and i != len(words) - 1 and lowered[i + 1] in self.lexicon:
            valence = 0.0
        if (
            (i > 0 and lowered[i - 1] == "no")
            or (i > 1 and lowered[i - 2] == "no")
            or (i > 2 and lowered[i - 3] == "no" and lowered[i - 1] in ("or", "nor"))
        ):
            valence = self.lexicon[lower] * c.negation_scalar

        if word.isupper() and cap_differential:
            valence += c.caps_increment if valence > 0 else -c.caps_increment

        for distance in range(3):
            if i <= distance:
                continue
            prev = lowered[i - (distance + 1)]
            if prev in self.lexicon:
                continue
            scalar = self._booster_scalar(words[i - (distance + 1)], valence, cap_differential)
            if distance == 1:
                scalar *= c.booster_decay_2
            elif distance == 2:
                scalar *= c.booster_decay_3
            valence += scalar
            valence = self._negation_check(valence, lowered, distance, i)
            if distance == 2:
                valence = self._special_idioms_check(valence, lowered, i)

        return self._least_check(valence, lowered, i)

    def _booster_scalar(self, word: str, valence: float, cap_differential: bool) -> float:
        direction = BOOSTERS.get(word.lower())
        if direction is None:
            return 0.0
        scalar = direction * self.constants.booster_increment
        if valence < 0:
            scalar = -scalar
        if word.isupper() and cap_differential:
            scalar += self.constants.caps_increment if valence > 0 else -self.constants.caps_increment
        return scalar

    def _negation_check(self, valence: float, lowered: Sequence[str], distance: int, i: int) -> float:
        n = self.constants.negation_scalar
        if distance == 0:
            if _negated(lowered[i - 1]):
                valence *= n
        elif distance == 1:
            if lowered[i - 2] == "never" and lowered[i - 1] in ("so", "this"):
                valence *= self.constants.never_so_scalar
            elif lowered[i - 2] == "without" and lowered[i - 1] == "doubt":
                pass
            elif _negated(lowered[i - 2]):
                valence *= n
        else:
            # "so"/"this" right before the word triggers the boost even without "never"
            if (lowered[i - 3] == "never" and lowered[i - 2] in ("so", "this")) or lowered[i - 1] in (
                "so",
                "this",
            ):
                valence *= self.constants.never_so_scalar
            elif lowered[i - 3] == "without" and "doubt" in (lowered[i - 2], lowered[i - 1]):
                pass
            elif _negated(lowered[i - 3]):
                valence *= n
        return valence

    def _special_idioms_check(self, valence: float, lowered: Sequence[str], i: int) -> float:
        onezero = f"{lowered[i - 1]} {lowered[i]}"
        twoonezero = f"{lowered[i - 2]} {lowered[i - 1]} {lowered[i]}"
        twoone = f"{lowered[i - 2]} {lowered[i - 1]}"
        threetwoone = f"{lowered[i - 3]} {lowered[i - 2]} {lowered[i - 1]}"
        threetwo = f"{lowered[i - 3]} {lowered[i - 2]}"

        for seq in (onezero, twoonezero, twoone, threetwoone, threetwo):
            if seq in SPECIAL_CASES:
                valence = SPECIAL_CASES[seq]
                break
        if len(lowered) - 1 > i:
            zeroone = f"{lowered[i]} {lowered[i + 1]}"
            if zeroone in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroone]
        if len(lowered) - 1 > i + 1:
            zeroonetwo = f"{lowered[i]} {lowered[i + 1]} {lowered[i + 2]}"
            if zeroonetwo in SPECIAL_CASES:
                valence = SPECIAL_CASES[zeroonetwo]

        # booster bigrams such as "sort of" and "kind of"
        for ngram in (threetwoone, threetwo, twoone):
            if ngram in BOOSTERS:
                valence += BOOSTERS[ngram] * self.constants.booster_increment
        return valence

    def _least_check(self, valence: float, lowered: Sequence[str], i: int) -> float:
        if i > 0 and lowered[i - 1] == "least" and lowered[i - 1] not in self.lexicon:
            if i == 1 or lowered[i - 2] not in ("at", "very"):
                valence *= self.constants.negation_scalar
        return valence

    def _but_check(self, lowered: Sequence[str], sentiments: List[float]) -> List[float]:
        if "but" not in lowered:
            return sentiments
        bi = lowered.index("but")
        c = self.constants
        return [
            s * c.but_before_weight if idx < bi else s * c.but_after_weight if idx > bi else s
            for idx, s in enumerate(sentiments)
        ]

    def _punctuation_emphasis(self, sentence: str) -> float:
        c = self.constants
        exclamations = min(sentence.count("!"), c.exclamation_max_count)
        emphasis = exclamations * c.exclamation_increment
        questions = sentence.count("?")
        if questions > 1:
            emphasis += (
                questions * c.question_increment
                if questions <= c.question_max_count
                else c.question_flood_value
            )
        return emphasis


def _negated(word: str) -> bool:
    return word in NEGATE or "n't" in word


def _allcap_differential(words: Sequence[str]) -> bool:
    """True when some, but not all, words are ALL CAPS."""
    allcaps = sum(1 for w in words if w.isupper())
    return 0 < len(words) - allcaps < len(words)


# ----------------------------------------------------------------------
# Functional API
# ----------------------------------------------------------------------


def token_valences(tokens: Sequence[str], lexicon: ValenceLexicon) -> List[float]:
    return ValenceScorer(lexicon).token_valences(tokens)


def compound_score(
    sentence: str,
    lexicon: ValenceLexicon,
    boundary_mode: Optional[BoundaryMode] = None,
) -> SentenceScore:
    return ValenceScorer(lexicon, boundary_mode=boundary_mode).compound_score(sentence)


def analyze_document_sentiment(
    doc: DocumentRecord,
    lexicon: ValenceLexicon,
    boundary_mode: Optional[BoundaryMode] = None,
) -> SentimentCounts:
    return ValenceScorer(lexicon, boundary_mode=boundary_mode).analyze_document_sentiment(doc)
