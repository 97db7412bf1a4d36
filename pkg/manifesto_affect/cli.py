"""
Command-line entry point.

    manifesto-affect analyze --manifest corpus/manifest.json --out report
    manifesto-affect score "We will build a stronger economy."
    manifesto-affect affect "A hopeful, happy and safe country."

Exit status is 0 on success, 1 for input or configuration errors and 2 for
processing errors. ``--config FILE`` supplies defaults for any flag; flags
given on the command line win.
"""

from __future__ import annotations

import logging
import shutil
import sys
import tempfile
from pathlib import Path
from typing import List, Optional

import click

from . import __version__
from .affect import AFFECT_CATEGORIES, AffectAnalyzer, AffectLexiconError, load_affect_lexicon
from .analytics import AnalyticsError, ElectionRow
from .config import ConfigError, RunConfig, load_config_file
from .corpus import ManifestError, ResourceFormatError, clean_text, load_manifest, split_sentences
from .pipeline import AffectPipeline, DocumentProcessingError
from .report import ReportError
from .valence import BoundaryMode, LexiconError, ValenceScorer, load_valence_lexicon

logger = logging.getLogger(__name__)

_INPUT_ERRORS = (ConfigError, ManifestError, ResourceFormatError, LexiconError, AffectLexiconError)
_PROCESSING_ERRORS = (DocumentProcessingError, AnalyticsError, ReportError, OSError)

_BOUNDARY_CHOICE = click.Choice([m.value for m in BoundaryMode])
_PATH = click.Path(dir_okay=False, path_type=Path)


class InputError(click.ClickException):
    exit_code = 1


class ProcessingError(click.ClickException):
    exit_code = 2


class _AffectGroup(click.Group):
    """Click usage errors (bad flag values, missing options) are input errors too."""

    def make_context(self, info_name, args, parent=None, **extra):
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as exc:
            exc.exit_code = InputError.exit_code
            raise

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except click.UsageError as exc:
            exc.exit_code = InputError.exit_code
            raise


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )


def _config_defaults(path: Path) -> dict:
    """Config file values keyed by click parameter name, for every subcommand."""
    data = load_config_file(path)
    if "format" in data:
        data["table_format"] = data.pop("format")
    return {name: dict(data) for name in ("analyze", "score", "affect")}


@click.group(cls=_AffectGroup)
@click.version_option(version=__version__, prog_name="manifesto-affect")
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level to stderr.")
@click.option(
    "--config",
    "config_file",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    help="JSON file with defaults for any flag.",
)
@click.pass_context
def main(ctx: click.Context, verbose: bool, config_file: Optional[Path]) -> None:
    """Emotion analytics for party manifestos."""
    _configure_logging(verbose)
    if config_file is not None:
        try:
            ctx.default_map = _config_defaults(config_file)
        except ConfigError as exc:
            raise InputError(str(exc)) from exc


_BOUNDARY_OPTION = click.option(
    "--boundary-mode",
    type=_BOUNDARY_CHOICE,
    default=None,
    help="Label boundary handling; the constants table decides when omitted.",
)
_CONSTANTS_OPTION = click.option(
    "--valence-constants", type=_PATH, help="Heuristic constants table; bundled table if omitted."
)
_STRICT_OPTION = click.option(
    "--strict-lexicon",
    is_flag=True,
    default=False,
    help="Fail on a token the valence lexicon repeats instead of keeping its last value.",
)


@main.command()
@click.option("--manifest", type=_PATH, required=True, help="Corpus manifest (JSON).")
@click.option("--valence-lexicon", type=_PATH, help="Valence lexicon; bundled excerpt if omitted.")
@_CONSTANTS_OPTION
@click.option("--affect-lexicon", type=_PATH, help="Affect lexicon; bundled excerpt if omitted.")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), required=True, help="Output directory.")
@_BOUNDARY_OPTION
@_STRICT_OPTION
@click.option("--parallelism", type=click.IntRange(min=1), default=1, show_default=True)
@click.option(
    "--format",
    "table_format",
    type=click.Choice(["csv", "json"]),
    default=None,
    help="Summary table format; both when omitted.",
)
def analyze(
    manifest: Path,
    valence_lexicon: Optional[Path],
    valence_constants: Optional[Path],
    affect_lexicon: Optional[Path],
    out: Path,
    boundary_mode: Optional[str],
    strict_lexicon: bool,
    parallelism: int,
    table_format: Optional[str],
) -> None:
    """Run the full pipeline and write tables and charts under --out."""
    try:
        config = RunConfig.build(
            manifest=manifest,
            valence_lexicon=valence_lexicon,
            affect_lexicon=affect_lexicon,
            out=out,
            boundary_mode=boundary_mode,
            parallelism=parallelism,
            table_format=table_format,
            valence_constants=valence_constants,
            strict_lexicon=strict_lexicon,
        )
        config.check_inputs(require_manifest=True)
        corpus = load_manifest(config.manifest_path)
        pipeline = AffectPipeline.from_config(config)
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc

    out_dir = config.output_dir or out.resolve()
    out_dir.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=f".{out_dir.name}-", dir=out_dir.parent))
    try:
        results = pipeline.run(corpus, parallelism=config.parallelism)
        rows = pipeline.rows(results)
        pipeline.write(rows, staging, config.table_formats)
        _publish(staging, out_dir)
    except _PROCESSING_ERRORS as exc:
        raise ProcessingError(str(exc)) from exc
    finally:
        shutil.rmtree(staging, ignore_errors=True)

    for line in _summary_lines(rows):
        click.echo(line)


def _publish(staging: Path, out_dir: Path) -> None:
    """Move the finished tree into place, replacing earlier tables and charts."""
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in ("tables", "charts"):
        target = out_dir / name
        if target.exists():
            shutil.rmtree(target)
        shutil.move(str(staging / name), str(target))


def _summary_lines(rows: List[ElectionRow]) -> List[str]:
    return [
        f"{r.party} {r.year}: {r.sentences} sentences, "
        f"pos {r.pos_share:.3f}% neg {r.neg_share:.3f}% neut {r.neut_share:.3f}%"
        for r in rows
    ]


@main.command()
@click.argument("sentence")
@click.option("--valence-lexicon", type=_PATH, help="Valence lexicon; bundled excerpt if omitted.")
@_CONSTANTS_OPTION
@_BOUNDARY_OPTION
@_STRICT_OPTION
@click.option("--breakdown", is_flag=True, help="Also print the neg/neu/pos proportions.")
def score(
    sentence: str,
    valence_lexicon: Optional[Path],
    valence_constants: Optional[Path],
    boundary_mode: Optional[str],
    strict_lexicon: bool,
    breakdown: bool,
) -> None:
    """Print the compound score and label of one sentence."""
    try:
        config = RunConfig.build(
            valence_lexicon=valence_lexicon,
            boundary_mode=boundary_mode,
            valence_constants=valence_constants,
            strict_lexicon=strict_lexicon,
        )
        config.check_inputs()
        scorer = ValenceScorer(
            load_valence_lexicon(config.valence_lexicon_path, keep_last=not config.strict_lexicon),
            constants=config.valence_constants(),
            boundary_mode=config.boundary_mode,
        )
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc

    result = scorer.compound_score(clean_text(sentence))
    click.echo(f"{result.compound:.4f} {result.label.value}")
    if breakdown:
        p = scorer.polarity_scores(clean_text(sentence))
        click.echo(f"neg={p.neg:.3f} neu={p.neu:.3f} pos={p.pos:.3f}")


@main.command()
@click.argument("text")
@click.option("--affect-lexicon", type=_PATH, help="Affect lexicon; bundled excerpt if omitted.")
def affect(text: str, affect_lexicon: Optional[Path]) -> None:
    """Print the affect-frequency profile of a piece of text."""
    try:
        config = RunConfig.build(affect_lexicon=affect_lexicon)
        config.check_inputs()
        analyzer = AffectAnalyzer(load_affect_lexicon(config.affect_lexicon_path))
    except _INPUT_ERRORS as exc:
        raise InputError(str(exc)) from exc

    profile = analyzer.profile_sentences(split_sentences(clean_text(text)))
    for category in AFFECT_CATEGORIES:
        click.echo(f"{category}\t{profile[category]:.4f}")
    click.echo(f"total_hits\t{profile.total_hits}")


if __name__ == "__main__":
    main()
