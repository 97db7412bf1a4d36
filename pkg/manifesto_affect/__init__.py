"""
manifesto-affect
================
Sentence valence scoring, word-emotion affect profiling, election-level
sentiment shares and status correlations for party manifestos.
"""

__version__ = "1.0.0"

from .affect import AffectAnalyzer, AffectProfile, load_affect_lexicon
from .analytics import ElectionRow, build_rows, correlation_matrix
from .config import RunConfig
from .corpus import load_manifest
from .pipeline import AffectPipeline, DocumentResult
from .valence import ValenceScorer, load_valence_lexicon

__all__ = [
    "AffectAnalyzer",
    "AffectPipeline",
    "AffectProfile",
    "DocumentResult",
    "ElectionRow",
    "RunConfig",
    "ValenceScorer",
    "build_rows",
    "correlation_matrix",
    "load_affect_lexicon",
    "load_manifest",
    "load_valence_lexicon",
]
