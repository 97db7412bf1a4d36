"""
Analytics
=========
Per-election sentiment shares and inter-election changes, longitudinal
per-party series, and correlation statistics between government status,
sentiment shares and affect frequencies.

Shares are percentages rounded half-up to 3 decimals and changes are
differences of those rounded shares, rounded half-up to 2 decimals, so the
numbers in every emitted table can be recomputed from the table itself.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Dict, Iterable, List, Mapping, Optional, Protocol, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from .affect import AFFECT_CATEGORIES, AFFECT_GROUPS, AffectProfile
from .corpus import GovStatus
from .valence import SentimentCounts

logger = logging.getLogger(__name__)

SHARE_VARIABLES: Tuple[str, ...] = ("pos_share", "neg_share", "neut_share")
CORRELATION_VARIABLES: Tuple[str, ...] = ("gov_status",) + AFFECT_CATEGORIES

_SHARE_QUANTUM = Decimal("0.001")
_CHANGE_QUANTUM = Decimal("0.01")
_SHARE_SUM_TOLERANCE = 0.01


class AnalyticsError(ValueError):
    """Raised when a statistic is undefined for its input."""


class ScoredDocument(Protocol):
    party: str
    year: int
    gov_status: GovStatus
    sentences: int
    counts: SentimentCounts
    affect: AffectProfile


@dataclass(frozen=True)
class ElectionRow:
    party: str
    year: int
    gov_status: GovStatus
    sentences: int
    pos_share: float
    neg_share: float
    neut_share: float
    pos_change: float = 0.0
    neg_change: float = 0.0
    affect: AffectProfile = field(default_factory=AffectProfile.empty)

    def __post_init__(self) -> None:
        total = self.pos_share + self.neg_share + self.neut_share
        if abs(total - 100.0) > _SHARE_SUM_TOLERANCE:
            raise AnalyticsError(
                f"{self.party} {self.year}: shares sum to {total:.3f}, expected 100"
            )

    def value(self, variable: str) -> float:
        """Look up a correlation variable by name."""
        if variable == "gov_status":
            return float(self.gov_status.indicator)
        if variable in SHARE_VARIABLES or variable in ("pos_change", "neg_change"):
            return float(getattr(self, variable))
        if variable in AFFECT_CATEGORIES:
            return self.affect[variable]
        raise AnalyticsError(f"unknown variable '{variable}'")


# ----------------------------------------------------------------------
# Shares and changes
# ----------------------------------------------------------------------


def sentiment_shares(
    counts: Union[SentimentCounts, Sequence[int]],
) -> Tuple[float, float, float]:
    """
    Percentage of positive, negative and neutral sentences.

    Parameters
    ----------
    counts:
        ``SentimentCounts`` or a ``(pos, neg, neu)`` triple.

    Returns
    -------
    tuple
        ``(pos_share, neg_share, neut_share)`` rounded half-up to 3 decimals.

    Raises
    ------
    AnalyticsError
        If the counts are negative or sum to zero.
    """
    triple = counts.as_tuple() if isinstance(counts, SentimentCounts) else tuple(counts)
    if len(triple) != 3:
        raise AnalyticsError(f"expected (pos, neg, neu) counts, got {triple!r}")
    if any(c < 0 for c in triple):
        raise AnalyticsError(f"negative sentence count in {triple!r}")
    total = sum(triple)
    if total == 0:
        raise AnalyticsError("cannot compute shares of zero sentences")
    hundred = Decimal(100)
    pos, neg, neu = (
        float((hundred * Decimal(c) / Decimal(total)).quantize(_SHARE_QUANTUM, ROUND_HALF_UP))
        for c in triple
    )
    return pos, neg, neu


def share_change(series: Sequence[float]) -> List[float]:
    """Percentage-point change from the previous election; 0.0 for the first."""
    if not series:
        raise AnalyticsError("share_change needs at least one share")
    values = [Decimal(repr(float(s))) for s in series]
    deltas = [0.0]
    for previous, current in zip(values, values[1:]):
        deltas.append(float((current - previous).quantize(_CHANGE_QUANTUM, ROUND_HALF_UP)))
    return deltas


def build_rows(results: Iterable[ScoredDocument]) -> List[ElectionRow]:
    """
    Turn per-document results into table rows.

    Parties keep their first-seen order, years ascend within a party, and
    changes are taken against the party's previous election.
    """
    by_party: Dict[str, List[ScoredDocument]] = {}
    for result in results:
        by_party.setdefault(result.party, []).append(result)
    if not by_party:
        raise AnalyticsError("no documents to tabulate")

    rows: List[ElectionRow] = []
    for party, docs in by_party.items():
        docs = sorted(docs, key=lambda d: d.year)
        shares = [sentiment_shares(d.counts) for d in docs]
        pos_changes = share_change([s[0] for s in shares])
        neg_changes = share_change([s[1] for s in shares])
        for doc, (pos, neg, neu), pos_chg, neg_chg in zip(docs, shares, pos_changes, neg_changes):
            if doc.counts.total != doc.sentences:
                raise AnalyticsError(
                    f"{party} {doc.year}: {doc.counts.total} labels for {doc.sentences} sentences"
                )
            rows.append(
                ElectionRow(
                    party=party,
                    year=doc.year,
                    gov_status=doc.gov_status,
                    sentences=doc.sentences,
                    pos_share=pos,
                    neg_share=neg,
                    neut_share=neu,
                    pos_change=pos_chg,
                    neg_change=neg_chg,
                    affect=doc.affect,
                )
            )
    logger.info("Built %d election rows for %d parties", len(rows), len(by_party))
    return rows


# ----------------------------------------------------------------------
# Series
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class PartySeries:
    """Year-ascending series for one party."""

    party: str
    years: Tuple[int, ...]
    gov_status: Tuple[GovStatus, ...]
    shares: Mapping[str, Tuple[float, ...]]
    changes: Mapping[str, Tuple[float, ...]]
    affect: Mapping[str, Tuple[float, ...]]
    groups: Mapping[str, Tuple[str, ...]] = field(default_factory=lambda: dict(AFFECT_GROUPS))

    def group(self, name: str) -> Dict[str, Tuple[float, ...]]:
        """Affect series for the members of a group, in group order."""
        try:
            members = self.groups[name]
        except KeyError:
            raise AnalyticsError(f"unknown affect group '{name}'") from None
        return {c: self.affect[c] for c in members}


def build_series(rows: Sequence[ElectionRow]) -> Dict[str, PartySeries]:
    if not rows:
        raise AnalyticsError("no rows to build series from")
    grouped: Dict[str, List[ElectionRow]] = {}
    for row in rows:
        grouped.setdefault(row.party, []).append(row)

    series: Dict[str, PartySeries] = {}
    for party, party_rows in grouped.items():
        party_rows = sorted(party_rows, key=lambda r: r.year)
        series[party] = PartySeries(
            party=party,
            years=tuple(r.year for r in party_rows),
            gov_status=tuple(r.gov_status for r in party_rows),
            shares={v: tuple(getattr(r, v) for r in party_rows) for v in SHARE_VARIABLES},
            changes={
                v: tuple(getattr(r, v) for r in party_rows) for v in ("pos_change", "neg_change")
            },
            affect={c: tuple(r.affect[c] for r in party_rows) for c in AFFECT_CATEGORIES},
        )
    return series


# ----------------------------------------------------------------------
# Correlation
# ----------------------------------------------------------------------


def _as_pair(x: Sequence[float], y: Sequence[float]) -> Tuple[np.ndarray, np.ndarray]:
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.ndim != 1 or ys.ndim != 1:
        raise AnalyticsError("expected one-dimensional vectors")
    if xs.size != ys.size:
        raise AnalyticsError(f"length mismatch: {xs.size} vs {ys.size}")
    if xs.size < 2:
        raise AnalyticsError("need at least two observations")
    if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
        raise AnalyticsError("vectors must be finite")
    return xs, ys


def sample_covariance(x: Sequence[float], y: Sequence[float]) -> float:
    """Covariance with n-1 normalisation."""
    xs, ys = _as_pair(x, y)
    return float(np.cov(xs, ys, ddof=1)[0, 1])


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """
    Sample Pearson product-moment correlation.

    Raises
    ------
    AnalyticsError
        On length mismatch, fewer than two observations, non-finite values
        or a constant vector (r is undefined).
    """
    xs, ys = _as_pair(x, y)
    if np.all(xs == xs[0]) or np.all(ys == ys[0]):
        raise AnalyticsError("correlation is undefined for a constant vector")
    r = float(stats.pearsonr(xs, ys)[0])
    return min(1.0, max(-1.0, r))


def spearman(x: Sequence[float], y: Sequence[float]) -> float:
    """Rank correlation, ties given their average rank."""
    xs, ys = _as_pair(x, y)
    return pearson(stats.rankdata(xs), stats.rankdata(ys))


@dataclass(frozen=True)
class CorrelationMatrix:
    variables: Tuple[str, ...]
    cells: Tuple[Tuple[float, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.variables)
        if len(self.cells) != n or any(len(row) != n for row in self.cells):
            raise AnalyticsError("correlation matrix must be square over its variables")

    def cell(self, a: str, b: str) -> float:
        return self.cells[self.variables.index(a)][self.variables.index(b)]

    def as_array(self) -> np.ndarray:
        return np.array(self.cells, dtype=float)


def correlation_matrix(
    rows: Sequence[ElectionRow],
    include_shares: bool = False,
) -> CorrelationMatrix:
    """
    Pearson r between every pair of variables, both parties pooled.

    The status indicator comes first, then the three sentiment shares when
    ``include_shares`` is set, then the ten affect frequencies.
    """
    if len(rows) < 3:
        raise AnalyticsError(f"need at least 3 rows for a correlation matrix, got {len(rows)}")
    if len({r.gov_status for r in rows}) < 2:
        raise AnalyticsError("rows must include both incumbent and opposition manifestos")

    variables = CORRELATION_VARIABLES
    if include_shares:
        variables = ("gov_status",) + SHARE_VARIABLES + AFFECT_CATEGORIES
    columns = {v: [r.value(v) for r in rows] for v in variables}

    n = len(variables)
    cells = [[1.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            try:
                r = pearson(columns[variables[i]], columns[variables[j]])
            except AnalyticsError as exc:
                raise AnalyticsError(f"{variables[i]} vs {variables[j]}: {exc}") from exc
            cells[i][j] = cells[j][i] = r
    logger.debug("Correlation matrix over %d rows and %d variables", len(rows), n)
    return CorrelationMatrix(variables=tuple(variables), cells=tuple(tuple(row) for row in cells))


def cross_method_agreement(rows: Sequence[ElectionRow]) -> float:
    """Spearman correlation between positive sentence share and positive affect frequency."""
    return spearman([r.pos_share for r in rows], [r.affect["positive"] for r in rows])


@dataclass(frozen=True)
class StatusContrast:
    variable: str
    incumbent_mean: float
    opposition_mean: float

    @property
    def difference(self) -> float:
        return self.incumbent_mean - self.opposition_mean


def status_contrast(
    rows: Sequence[ElectionRow],
    variables: Optional[Sequence[str]] = None,
) -> List[StatusContrast]:
    """Mean of each variable for incumbent versus opposition manifestos."""
    incumbents = [r for r in rows if r.gov_status is GovStatus.INCUMBENT]
    opposition = [r for r in rows if r.gov_status is GovStatus.OPPOSITION]
    if not incumbents or not opposition:
        raise AnalyticsError("status contrast needs both incumbent and opposition rows")
    names = tuple(variables) if variables is not None else SHARE_VARIABLES + AFFECT_CATEGORIES
    return [
        StatusContrast(
            variable=name,
            incumbent_mean=float(np.mean([r.value(name) for r in incumbents])),
            opposition_mean=float(np.mean([r.value(name) for r in opposition])),
        )
        for name in names
    ]


def category_leaders(rows: Sequence[ElectionRow], category: str) -> Dict[int, Optional[str]]:
    """For each election year, the party with the highest value of ``category``; None on a tie."""
    by_year: Dict[int, List[ElectionRow]] = {}
    for row in rows:
        by_year.setdefault(row.year, []).append(row)
    leaders: Dict[int, Optional[str]] = {}
    for year in sorted(by_year):
        scored = [(r.value(category), r.party) for r in by_year[year]]
        best = max(v for v, _ in scored)
        top = [party for v, party in scored if math.isclose(v, best, rel_tol=0.0, abs_tol=1e-12)]
        leaders[year] = top[0] if len(top) == 1 else None
    return leaders
