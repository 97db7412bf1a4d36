"""
Published sentiment tables for the 2001-2019 UK general election manifestos
of Labour and the Conservatives, embedded as a regression fixture.

Each row carries the sentence count, government status and the printed
shares and changes. Label counts can be reconstructed exactly from the
shares, which lets the table arithmetic be re-run end to end.
"""

from __future__ import annotations

from typing import List, NamedTuple

from .affect import AffectProfile
from .analytics import ElectionRow
from .corpus import GovStatus
from .pipeline import DocumentResult
from .valence import SentimentCounts

_INC = GovStatus.INCUMBENT
_OPP = GovStatus.OPPOSITION


class PublishedRow(NamedTuple):
    party: str
    year: int
    sentences: int
    gov_status: GovStatus
    pos_share: float
    pos_change: float
    neg_share: float
    neg_change: float
    neut_share: float


PUBLISHED_ROWS: List[PublishedRow] = [
    PublishedRow("labour", 2001, 977, _INC, 62.641, 0.0, 16.07, 0.0, 21.29),
    PublishedRow("labour", 2005, 801, _INC, 63.92, 1.28, 19.725, 3.7, 16.355),
    PublishedRow("labour", 2010, 1313, _INC, 66.565, 2.64, 16.375, -3.4, 17.06),
    PublishedRow("labour", 2015, 865, _OPP, 60.231, -6.33, 22.89, 6.5, 16.879),
    PublishedRow("labour", 2017, 1136, _OPP, 53.257, -6.97, 24.032, 1.1, 22.711),
    PublishedRow("labour", 2019, 1192, _OPP, 50.336, -2.92, 30.369, 6.3, 19.295),
    PublishedRow("conservative", 2001, 680, _OPP, 48.382, 0.0, 25.735, 0.0, 25.882),
    PublishedRow("conservative", 2005, 415, _OPP, 53.012, 4.63, 20.241, -5.5, 26.747),
    PublishedRow("conservative", 2010, 494, _OPP, 58.3, 5.29, 22.065, 1.8, 19.636),
    PublishedRow("conservative", 2015, 283, _INC, 75.618, 17.32, 13.428, -8.6, 10.954),
    PublishedRow("conservative", 2017, 1275, _INC, 70.667, -4.95, 13.961, 0.5, 15.373),
    PublishedRow("conservative", 2019, 974, _INC, 64.682, -5.98, 15.811, 1.8, 19.507),
]


def published_election_rows() -> List[ElectionRow]:
    """The fixture as printed; affect profiles are empty."""
    return [
        ElectionRow(
            party=r.party,
            year=r.year,
            gov_status=r.gov_status,
            sentences=r.sentences,
            pos_share=r.pos_share,
            neg_share=r.neg_share,
            neut_share=r.neut_share,
            pos_change=r.pos_change,
            neg_change=r.neg_change,
        )
        for r in PUBLISHED_ROWS
    ]


def reconstruct_counts(row: PublishedRow) -> SentimentCounts:
    """Integer label counts behind a row's shares; neutral takes the remainder."""
    positive = round(row.pos_share * row.sentences / 100)
    negative = round(row.neg_share * row.sentences / 100)
    return SentimentCounts(positive=positive, negative=negative, neutral=row.sentences - positive - negative)


def reconstructed_results() -> List[DocumentResult]:
    """Document results rebuilt from the fixture, ready for ``build_rows``."""
    return [
        DocumentResult(
            party=r.party,
            year=r.year,
            gov_status=r.gov_status,
            sentences=r.sentences,
            counts=reconstruct_counts(r),
            affect=AffectProfile.empty(),
        )
        for r in PUBLISHED_ROWS
    ]
