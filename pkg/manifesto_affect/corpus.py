"""
Corpus
======
Loads the corpus manifest, cleans raw manifesto text, segments it into
sentences and produces the token/lemma streams consumed by the valence and
affect engines.

All functions are pure; the resource tables (abbreviations, lemma table,
unicode map) are read once per process and shared read-only.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path
from typing import Collection, Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple, Union

from .resources import resource_path

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

MANIFEST_KEYS = frozenset({"party", "year", "gov_status", "path"})

_NEWLINES = re.compile(r"[\r\n\u2028\u2029\u0085\v]+")
_SPACES = re.compile(r"\s+")
# URL body stops before trailing sentence punctuation so "see www.x.org." keeps its period.
_URL = re.compile(
    r"(?:\b[a-zA-Z][a-zA-Z0-9+.\-]*://|\b[wW]{3}\.)\S+?(?=[.,;:!?)\]\"']*(?:\s|$))"
)
_BOUNDARY = re.compile(r"[.!?]+[\"')\]]*\s+(?=[\"'(\[]?[A-Z])")
_DOTTED_ACRONYM = re.compile(r"(?:[A-Za-z]\.){2,}$")
_TOKEN = re.compile(r"[^\W_]+(?:'[^\W_]+)*|\S")


class ManifestError(ValueError):
    """Raised when the corpus manifest or a document it references is unusable."""


class ResourceFormatError(ValueError):
    """Raised when a bundled or user-supplied resource table is malformed."""


class GovStatus(str, Enum):
    INCUMBENT = "incumbent"
    OPPOSITION = "opposition"

    @property
    def indicator(self) -> int:
        """Binary encoding used in correlations: incumbent=1, opposition=0."""
        return 1 if self is GovStatus.INCUMBENT else 0


@dataclass(frozen=True)
class ManifestEntry:
    party: str
    year: int
    gov_status: GovStatus
    path: Path


@dataclass(frozen=True)
class CorpusManifest:
    entries: Tuple[ManifestEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def parties(self) -> List[str]:
        """Parties in first-seen order."""
        return list(dict.fromkeys(e.party for e in self.entries))


@dataclass(frozen=True)
class DocumentRecord:
    party: str
    year: int
    gov_status: GovStatus
    sentences: Tuple[str, ...]

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)

    @property
    def text(self) -> str:
        """Sentences merged back into a single text."""
        return " ".join(self.sentences)


# ----------------------------------------------------------------------
# Manifest
# ----------------------------------------------------------------------


def load_manifest(path: PathLike) -> CorpusManifest:
    """
    Read and validate a JSON corpus manifest.

    Relative text paths are resolved against the manifest's directory.

    Raises
    ------
    ManifestError
        Missing or unparsable file, malformed entry, unknown keys, unknown
        gov_status, duplicate (party, year), non-increasing years within a
        party, missing text file, or an empty entry list.
    """
    path = Path(path)
    if not path.is_file():
        raise ManifestError(f"manifest not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot parse manifest {path}: {exc}") from exc

    if not isinstance(raw, list):
        raise ManifestError(f"{path}: top level must be an array of entries")
    if not raw:
        raise ManifestError(f"{path}: empty manifest")

    entries: List[ManifestEntry] = []
    seen: set = set()
    last_year: Dict[str, int] = {}
    for i, item in enumerate(raw):
        entry = _parse_entry(item, i, path)
        key = (entry.party, entry.year)
        if key in seen:
            raise ManifestError(
                f"{path}: entry {i}: duplicate entry for ({entry.party}, {entry.year})"
            )
        seen.add(key)
        if entry.party in last_year and entry.year <= last_year[entry.party]:
            raise ManifestError(
                f"{path}: entry {i}: years for party '{entry.party}' must be strictly increasing"
            )
        last_year[entry.party] = entry.year
        if not entry.path.is_file():
            raise ManifestError(f"{path}: entry {i}: text file not found: {entry.path}")
        entries.append(entry)

    logger.info("Loaded manifest %s with %d entries", path, len(entries))
    return CorpusManifest(entries=tuple(entries))


def _parse_entry(item: object, index: int, manifest_path: Path) -> ManifestEntry:
    where = f"{manifest_path}: entry {index}"
    if not isinstance(item, dict):
        raise ManifestError(f"{where}: expected an object")
    unknown = set(item) - MANIFEST_KEYS
    if unknown:
        raise ManifestError(f"{where}: unknown keys {sorted(unknown)}")
    missing = MANIFEST_KEYS - set(item)
    if missing:
        raise ManifestError(f"{where}: missing keys {sorted(missing)}")

    party, year, status, text_path = item["party"], item["year"], item["gov_status"], item["path"]
    if not isinstance(party, str) or not party.strip():
        raise ManifestError(f"{where}: party must be a non-empty string")
    if isinstance(year, bool) or not isinstance(year, int):
        raise ManifestError(f"{where}: year must be an integer")
    try:
        gov_status = GovStatus(status)
    except ValueError:
        raise ManifestError(
            f"{where}: unknown gov_status {status!r} (expected 'incumbent' or 'opposition')"
        ) from None
    if not isinstance(text_path, str) or not text_path:
        raise ManifestError(f"{where}: path must be a non-empty string")

    resolved = Path(text_path)
    if not resolved.is_absolute():
        resolved = manifest_path.parent / resolved
    return ManifestEntry(party=party.strip(), year=year, gov_status=gov_status, path=resolved)


# ----------------------------------------------------------------------
# Resource tables
# ----------------------------------------------------------------------


def _data_lines(path: Path) -> Iterable[Tuple[int, str]]:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ResourceFormatError(f"cannot read resource {path}: {exc}") from exc
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        yield lineno, line


def load_abbreviations(path: Optional[PathLike] = None) -> FrozenSet[str]:
    """One lowercase abbreviation (with its trailing period) per line."""
    if path is None:
        return _default_abbreviations()
    return _read_abbreviations(Path(path))


def load_lemma_table(path: Optional[PathLike] = None) -> Mapping[str, str]:
    """Tab-separated ``inflected<TAB>lemma`` rows."""
    if path is None:
        return _default_lemma_table()
    return _read_lemma_table(Path(path))


def load_unicode_map(path: Optional[PathLike] = None) -> Mapping[str, str]:
    """Tab-separated ``U+XXXX<TAB>replacement`` rows, replacement backslash-escaped."""
    if path is None:
        return _default_unicode_map()
    return _read_unicode_map(Path(path))


def _read_abbreviations(path: Path) -> FrozenSet[str]:
    entries = set()
    for lineno, line in _data_lines(path):
        entry = line.strip().lower()
        if not entry.endswith("."):
            raise ResourceFormatError(f"{path}:{lineno}: abbreviation must end with '.'")
        entries.add(entry)
    logger.info("Loaded %d abbreviations from %s", len(entries), path)
    return frozenset(entries)


def _read_lemma_table(path: Path) -> Dict[str, str]:
    table: Dict[str, str] = {}
    for lineno, line in _data_lines(path):
        parts = line.strip().split("\t")
        if len(parts) != 2 or not parts[0] or not parts[1]:
            raise ResourceFormatError(f"{path}:{lineno}: expected 'inflected<TAB>lemma'")
        inflected, lemma = parts[0].lower(), parts[1].lower()
        if inflected in table and table[inflected] != lemma:
            raise ResourceFormatError(f"{path}:{lineno}: conflicting lemma for '{inflected}'")
        table[inflected] = lemma
    logger.info("Loaded %d lemma table rows from %s", len(table), path)
    return table


# only \xHH, \uXXXX and \\ are escapes; other characters, non-ASCII included, are literal
_ESCAPE = re.compile(r"\\(?:x([0-9A-Fa-f]{2})|u([0-9A-Fa-f]{4})|(\\)|(.?))")


def _unescape(match: "re.Match[str]") -> str:
    if match.group(4) is not None:
        raise ValueError(repr(match.group(0)))
    if match.group(3):
        return "\\"
    return chr(int(match.group(1) or match.group(2), 16))


def _read_unicode_map(path: Path) -> Dict[str, str]:
    mapping: Dict[str, str] = {}
    for lineno, line in _data_lines(path):
        code, sep, replacement = line.partition("\t")
        if not sep or not re.fullmatch(r"U\+[0-9A-Fa-f]{4,6}", code.strip()):
            raise ResourceFormatError(f"{path}:{lineno}: expected 'U+XXXX<TAB>replacement'")
        try:
            decoded = _ESCAPE.sub(_unescape, replacement)
        except ValueError as exc:
            raise ResourceFormatError(f"{path}:{lineno}: bad escape {exc} in replacement") from None
        mapping[chr(int(code.strip()[2:], 16))] = decoded
    logger.info("Loaded %d unicode replacements from %s", len(mapping), path)
    return mapping


@lru_cache(maxsize=None)
def _default_abbreviations() -> FrozenSet[str]:
    return _read_abbreviations(resource_path("abbreviations.txt"))


@lru_cache(maxsize=None)
def _default_lemma_table() -> Dict[str, str]:
    return _read_lemma_table(resource_path("lemmas.tsv"))


@lru_cache(maxsize=None)
def _default_unicode_map() -> Dict[str, str]:
    return _read_unicode_map(resource_path("unicode_map.tsv"))


# ----------------------------------------------------------------------
# Cleaning and segmentation
# ----------------------------------------------------------------------


def clean_text(raw: str, unicode_map: Optional[Mapping[str, str]] = None) -> str:
    """
    Normalise raw manifesto text.

    Typographic characters are mapped to ASCII, newline runs become single
    spaces, ``scheme://`` and ``www.`` URLs are removed, whitespace runs are
    collapsed and the result is trimmed. Idempotent.
    """
    table = str.maketrans(dict(unicode_map if unicode_map is not None else load_unicode_map()))
    text = raw.translate(table)
    text = _NEWLINES.sub(" ", text)
    text = _URL.sub("", text)
    text = _SPACES.sub(" ", text)
    return text.strip()


def split_sentences(text: str, abbreviations: Optional[Collection[str]] = None) -> List[str]:
    """
    Split cleaned text into sentences.

    A boundary follows ``.``, ``!`` or ``?`` (plus any closing quotes or
    brackets) when whitespace and an uppercase letter come next, unless the
    word ending at the period is a listed abbreviation or a dotted acronym.
    """
    if not text.strip():
        return []
    abbrevs = abbreviations if abbreviations is not None else load_abbreviations()

    sentences: List[str] = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        if _is_abbreviation(text[start : match.start() + 1], abbrevs):
            continue
        sentence = text[start : match.end()].strip()
        if sentence:
            sentences.append(sentence)
        start = match.end()
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _is_abbreviation(segment: str, abbreviations: Collection[str]) -> bool:
    if not segment.endswith("."):
        return False
    words = segment.split()
    if not words:
        return False
    last = words[-1].lstrip("\"'([")
    return last.lower() in abbreviations or bool(_DOTTED_ACRONYM.search(last))


def tokenize(sentence: str) -> List[str]:
    """
    Split a cleaned sentence into tokens.

    Words are maximal letter/digit runs, keeping internal apostrophes
    ("don't"); every other non-space character is its own token. Case is
    preserved.
    """
    return _TOKEN.findall(sentence)


def is_word(token: str) -> bool:
    """True for tokens carrying at least one letter or digit."""
    return any(ch.isalnum() for ch in token)


# ----------------------------------------------------------------------
# Lemmatisation
# ----------------------------------------------------------------------

_VOWELS = set("aeiou")
_KEEP_DOUBLE = set("lsfz")


class Lemmatizer:
    """
    Lookup-table lemmatiser with suffix-rule fallback.

    The table is consulted first. Otherwise candidates from the plural
    (-ies, -es, -s) and verb (-ing, -ed) rules are tried in order; when a
    ``vocabulary`` is given only a known candidate is accepted, otherwise
    the first shape-valid candidate wins. Identity is the last resort.

    Without a vocabulary the rules only look at word shape: a word ending in
    -s, -ed or -ing that is not an inflection gets clipped unless the table
    has an identity row for it. The bundled table covers the common ones
    ("always", "perhaps", "during"); pass a vocabulary where precision
    matters.
    """

    def __init__(
        self,
        table: Optional[Mapping[str, str]] = None,
        vocabulary: Optional[Collection[str]] = None,
    ) -> None:
        self._table: Dict[str, str] = dict(table if table is not None else load_lemma_table())
        self._vocabulary: Optional[FrozenSet[str]] = (
            frozenset(vocabulary) | frozenset(self._table.values())
            if vocabulary is not None
            else None
        )

    def lemmatize(self, token: str) -> str:
        word = token.lower()
        if word in self._table:
            return self._table[word]
        if not word.isalpha():
            return word
        if self._vocabulary is not None and word in self._vocabulary:
            return word
        for candidate in self._candidates(word):
            if self._vocabulary is None or candidate in self._vocabulary:
                return candidate
        return word

    @staticmethod
    def _candidates(word: str) -> List[str]:
        candidates: List[str] = []
        if word.endswith("ies") and len(word) > 4:
            candidates.append(word[:-3] + "y")
        elif re.search(r"(?:ss|x|zz|ch|sh)es$", word):
            candidates += [word[:-2], word[:-1]]
        elif word.endswith("es") and len(word) > 3:
            candidates += [word[:-1], word[:-2]]
        elif word.endswith("s") and len(word) > 3 and not re.search(r"(?:ss|us|is)$", word):
            candidates.append(word[:-1])
        for suffix in ("ing", "ed"):
            if word.endswith(suffix):
                stem = word[: -len(suffix)]
                if len(stem) < 3 or not _VOWELS.intersection(stem):
                    continue
                if len(stem) > 3 and stem[-1] == stem[-2] and stem[-1] not in _VOWELS | _KEEP_DOUBLE:
                    candidates.append(stem[:-1])
                candidates.append(stem)
                candidates.append(stem + "e")
        return candidates


@lru_cache(maxsize=None)
def _default_lemmatizer() -> Lemmatizer:
    return Lemmatizer()


def lemmatize(token: str) -> str:
    """Lemmatise one lowercase token with the bundled table and suffix rules."""
    return _default_lemmatizer().lemmatize(token)


def normalize_for_affect(sentence: str, lemmatizer: Optional[Lemmatizer] = None) -> List[str]:
    """
    Tokenise, drop punctuation, lowercase and lemmatise a sentence.

    Internal apostrophes are removed ("don't" -> "dont") so every lemma is
    alphanumeric. Order is preserved.
    """
    lem = lemmatizer or _default_lemmatizer()
    lemmas: List[str] = []
    for token in tokenize(sentence):
        word = token.replace("'", "").lower()
        if not word or not word.isalnum():
            continue
        lemmas.append(lem.lemmatize(word))
    return lemmas


# ----------------------------------------------------------------------
# Documents
# ----------------------------------------------------------------------


def load_document(
    entry: ManifestEntry,
    unicode_map: Optional[Mapping[str, str]] = None,
    abbreviations: Optional[Collection[str]] = None,
) -> DocumentRecord:
    """Read, clean and segment the text file behind a manifest entry."""
    try:
        raw = entry.path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ManifestError(f"cannot read {entry.path}: {exc}") from exc

    sentences = split_sentences(clean_text(raw, unicode_map), abbreviations)
    if not sentences:
        raise ManifestError(f"{entry.path}: no sentences after cleaning")
    logger.info(
        "Loaded %s %d from %s: %d sentences", entry.party, entry.year, entry.path, len(sentences)
    )
    return DocumentRecord(
        party=entry.party,
        year=entry.year,
        gov_status=entry.gov_status,
        sentences=tuple(sentences),
    )
