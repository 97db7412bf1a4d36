"""
AffectPipeline: Unified Facade
==============================
Single entry-point that wires the corpus loader, the valence scorer, the
affect analyzer, analytics and the report writer together.

Typical integration::

    from manifesto_affect import AffectPipeline, RunConfig, load_manifest

    config = RunConfig.build(manifest="corpus/manifest.json", out="report")
    pipeline = AffectPipeline.from_config(config)

    results = pipeline.run(load_manifest(config.manifest_path), parallelism=4)
    rows = pipeline.rows(results)
    pipeline.write(rows, config.output_dir)
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Collection, Iterable, List, Mapping, Optional, Sequence, Tuple

from .affect import AffectAnalyzer, AffectProfile, load_affect_lexicon
from .analytics import ElectionRow, build_rows
from .config import RunConfig
from .corpus import (
    CorpusManifest,
    DocumentRecord,
    GovStatus,
    ManifestEntry,
    load_abbreviations,
    load_document,
    load_unicode_map,
)
from .report import TABLE_FORMATS, write_report
from .valence import SentimentCounts, ValenceScorer, load_valence_lexicon

logger = logging.getLogger(__name__)


class DocumentProcessingError(RuntimeError):
    """Raised when one manifesto fails to analyse; the message names party, year and path."""


@dataclass(frozen=True)
class DocumentResult:
    party: str
    year: int
    gov_status: GovStatus
    sentences: int
    counts: SentimentCounts
    affect: AffectProfile


class AffectPipeline:
    """
    Unified facade over the analysis engines.

    Parameters
    ----------
    scorer : ValenceScorer
        Sentence valence scorer, boundary mode already chosen.
    analyzer : AffectAnalyzer
        Affect profiler with its lexicon-aware lemmatiser.
    unicode_map, abbreviations : optional
        Cleaning and segmentation tables; the bundled ones when omitted.
    """

    def __init__(
        self,
        scorer: ValenceScorer,
        analyzer: AffectAnalyzer,
        unicode_map: Optional[Mapping[str, str]] = None,
        abbreviations: Optional[Collection[str]] = None,
    ) -> None:
        self._scorer = scorer
        self._analyzer = analyzer
        # materialised here so worker processes receive them with the pipeline
        self._unicode_map = dict(unicode_map if unicode_map is not None else load_unicode_map())
        self._abbreviations = frozenset(
            abbreviations if abbreviations is not None else load_abbreviations()
        )

    @classmethod
    def from_config(cls, config: RunConfig) -> "AffectPipeline":
        valence_lexicon = load_valence_lexicon(config.valence_lexicon_path, keep_last=not config.strict_lexicon)
        affect_lexicon = load_affect_lexicon(config.affect_lexicon_path)
        return cls(
            scorer=ValenceScorer(
                valence_lexicon,
                constants=config.valence_constants(),
                boundary_mode=config.boundary_mode,
            ),
            analyzer=AffectAnalyzer(affect_lexicon),
        )

    # ------------------------------------------------------------------
    # Public API
    # ------------------------------------------------------------------

    def analyze_record(self, doc: DocumentRecord) -> DocumentResult:
        """Score and profile an already segmented document."""
        counts = self._scorer.analyze_document_sentiment(doc)
        affect = self._analyzer.profile_document(doc)
        return DocumentResult(
            party=doc.party,
            year=doc.year,
            gov_status=doc.gov_status,
            sentences=doc.sentence_count,
            counts=counts,
            affect=affect,
        )

    def analyze_document(self, entry: ManifestEntry) -> DocumentResult:
        """
        Load, clean, segment, score and profile one manifesto.

        Raises
        ------
        DocumentProcessingError
            Wrapping whatever went wrong, with the document named.
        """
        try:
            doc = load_document(entry, self._unicode_map, self._abbreviations)
            return self.analyze_record(doc)
        except Exception as exc:
            raise DocumentProcessingError(
                f"{entry.party} {entry.year} ({entry.path}): {exc}"
            ) from exc

    def run(self, manifest: CorpusManifest, parallelism: int = 1) -> List[DocumentResult]:
        """
        Analyse every manifest entry; results come back in manifest order.

        With ``parallelism > 1`` documents fan out to a process pool whose
        workers receive this pipeline once, through the pool initializer.
        """
        if parallelism < 1:
            raise ValueError(f"parallelism must be positive, got {parallelism}")
        entries: Tuple[ManifestEntry, ...] = manifest.entries
        workers = min(parallelism, len(entries))
        logger.info("Analysing %d documents with %d worker(s)", len(entries), max(workers, 1))
        if workers <= 1:
            return [self.analyze_document(entry) for entry in entries]

        with ProcessPoolExecutor(
            max_workers=workers,
            initializer=_init_worker,
            initargs=(self,),
        ) as pool:
            return list(pool.map(_analyze_in_worker, entries))

    def rows(self, results: Iterable[DocumentResult]) -> List[ElectionRow]:
        return build_rows(results)

    def write(
        self,
        rows: Sequence[ElectionRow],
        out_dir: Path,
        formats: Sequence[str] = TABLE_FORMATS,
    ) -> List[Path]:
        return write_report(rows, out_dir, formats)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def scorer(self) -> ValenceScorer:
        return self._scorer

    @property
    def analyzer(self) -> AffectAnalyzer:
        return self._analyzer


# ----------------------------------------------------------------------
# Worker-side state
# ----------------------------------------------------------------------

_worker_pipeline: Optional[AffectPipeline] = None


def _init_worker(pipeline: AffectPipeline) -> None:
    global _worker_pipeline
    _worker_pipeline = pipeline


def _analyze_in_worker(entry: ManifestEntry) -> DocumentResult:
    if _worker_pipeline is None:
        raise RuntimeError("worker pipeline not initialised")
    return _worker_pipeline.analyze_document(entry)
