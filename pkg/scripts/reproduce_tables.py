#!/usr/bin/env python3
"""Rebuild the published Labour/Conservative sentiment tables from the fixture.

Label counts are reconstructed from each printed row, pushed back through
the share and change arithmetic, and printed next to the published values
together with the status/share point-biserial correlations.
"""

from __future__ import annotations

import sys
from pathlib import Path

# Make script runnable from repo root without requiring package install.
REPO_ROOT = Path(__file__).resolve().parents[1]
if str(REPO_ROOT) not in sys.path:
    sys.path.insert(0, str(REPO_ROOT))

from manifesto_affect.analytics import build_rows, pearson
from manifesto_affect.published import PUBLISHED_ROWS, reconstruct_counts, reconstructed_results
from manifesto_affect.report import emit_table


def print_recomputed() -> None:
    print("=== RECOMPUTED TABLES ===")
    rows = build_rows(reconstructed_results())
    published = {(r.party, r.year): r for r in PUBLISHED_ROWS}
    for row in rows:
        ref = published[(row.party, row.year)]
        counts = reconstruct_counts(ref)
        print(
            f"{row.party} {row.year} counts={counts.as_tuple()} "
            f"pos={row.pos_share:.3f} (published {ref.pos_share:.3f}) "
            f"pos_chg={row.pos_change:.2f} (published {ref.pos_change:.2f}) "
            f"neg={row.neg_share:.3f} (published {ref.neg_share:.3f}) "
            f"neg_chg={row.neg_change:.2f} (published {ref.neg_change:.1f})"
        )
    print()
    print(emit_table(rows, "csv").decode("utf-8"), end="")


def print_correlations() -> None:
    print("\n=== STATUS CORRELATIONS ===")
    status = [r.gov_status.indicator for r in PUBLISHED_ROWS]
    for name in ("pos_share", "neg_share", "neut_share"):
        r = pearson([getattr(row, name) for row in PUBLISHED_ROWS], status)
        print(f"corr({name}, gov_status) = {r:+.3f}")


def main() -> None:
    print_recomputed()
    print_correlations()


if __name__ == "__main__":
    main()
