"""
Run configuration: paths, boundary mode, worker count and table formats,
plus the optional JSON config file whose values act as flag defaults.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

from .resources import resource_path
from .valence import BoundaryMode, ValenceConstants, load_valence_constants

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

DEFAULT_VALENCE_LEXICON = "valence_lexicon_excerpt.txt"
DEFAULT_AFFECT_LEXICON = "affect_lexicon_excerpt.txt"

# JSON config key -> expected type
CONFIG_KEYS: Dict[str, type] = {
    "manifest": str,
    "valence_lexicon": str,
    "valence_constants": str,
    "affect_lexicon": str,
    "out": str,
    "boundary_mode": str,
    "strict_lexicon": bool,
    "parallelism": int,
    "format": str,
}
_PATH_KEYS = ("manifest", "valence_lexicon", "valence_constants", "affect_lexicon", "out")


class ConfigError(ValueError):
    """Raised for an unreadable config file or unusable run settings."""


@dataclass(frozen=True)
class RunConfig:
    """
    Settings for one run.

    ``boundary_mode`` of None defers to the ``inclusive_boundaries`` entry of
    the valence constants table. With ``strict_lexicon`` unset a token that
    the valence lexicon repeats keeps its last value instead of failing.
    """

    manifest_path: Optional[Path] = None
    valence_lexicon_path: Path = resource_path(DEFAULT_VALENCE_LEXICON)
    valence_constants_path: Optional[Path] = None
    affect_lexicon_path: Path = resource_path(DEFAULT_AFFECT_LEXICON)
    output_dir: Optional[Path] = None
    boundary_mode: Optional[BoundaryMode] = None
    strict_lexicon: bool = False
    parallelism: int = 1
    table_formats: Tuple[str, ...] = ("csv", "json")

    @classmethod
    def build(
        cls,
        manifest: Optional[PathLike] = None,
        valence_lexicon: Optional[PathLike] = None,
        affect_lexicon: Optional[PathLike] = None,
        out: Optional[PathLike] = None,
        boundary_mode: Union[str, BoundaryMode, None] = None,
        parallelism: int = 1,
        table_format: Optional[str] = None,
        valence_constants: Optional[PathLike] = None,
        strict_lexicon: bool = False,
    ) -> "RunConfig":
        """Build from flag-style values; omitted lexicons fall back to the bundled excerpts."""
        try:
            mode = BoundaryMode(boundary_mode) if boundary_mode is not None else None
        except ValueError:
            raise ConfigError(f"unknown boundary mode '{boundary_mode}'") from None
        if table_format is None:
            formats: Tuple[str, ...] = ("csv", "json")
        elif table_format in ("csv", "json"):
            formats = (table_format,)
        else:
            raise ConfigError(f"unknown table format '{table_format}'")
        if isinstance(parallelism, bool) or not isinstance(parallelism, int) or parallelism < 1:
            raise ConfigError(f"parallelism must be a positive integer, got {parallelism!r}")
        return cls(
            manifest_path=_resolve(manifest),
            valence_lexicon_path=_resolve(valence_lexicon) or resource_path(DEFAULT_VALENCE_LEXICON),
            valence_constants_path=_resolve(valence_constants),
            affect_lexicon_path=_resolve(affect_lexicon) or resource_path(DEFAULT_AFFECT_LEXICON),
            output_dir=_resolve(out),
            boundary_mode=mode,
            strict_lexicon=bool(strict_lexicon),
            parallelism=parallelism,
            table_formats=formats,
        )

    def check_inputs(self, require_manifest: bool = False) -> None:
        """Every input path must exist and be readable before any work starts."""
        inputs = {
            "valence lexicon": self.valence_lexicon_path,
            "affect lexicon": self.affect_lexicon_path,
        }
        if self.valence_constants_path is not None:
            inputs["valence constants"] = self.valence_constants_path
        if require_manifest:
            if self.manifest_path is None:
                raise ConfigError("a corpus manifest is required (--manifest)")
            inputs["manifest"] = self.manifest_path
        for label, path in inputs.items():
            if not path.is_file():
                raise ConfigError(f"{label} not found: {path}")
            try:
                with path.open("rb"):
                    pass
            except OSError as exc:
                raise ConfigError(f"{label} is not readable: {path} ({exc})") from exc

    def valence_constants(self) -> ValenceConstants:
        """The constants table named by the config, or the bundled one."""
        return load_valence_constants(self.valence_constants_path)


def _resolve(path: Optional[PathLike]) -> Optional[Path]:
    return Path(path).expanduser().resolve() if path is not None else None


def load_config_file(path: PathLike) -> Dict[str, Any]:
    """
    Read a JSON config object whose keys mirror the long flag names.

    Relative paths inside the file are resolved against the file's directory.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config must be a JSON object")

    unknown = sorted(set(data) - set(CONFIG_KEYS))
    if unknown:
        raise ConfigError(f"{path}: unknown config keys {unknown}")
    for key, value in data.items():
        expected = CONFIG_KEYS[key]
        # bool is an int subclass; reject it for parallelism
        if not isinstance(value, expected) or (expected is int and isinstance(value, bool)):
            raise ConfigError(f"{path}: '{key}' must be a {expected.__name__}")

    for key in _PATH_KEYS:
        if key in data:
            candidate = Path(data[key]).expanduser()
            if not candidate.is_absolute():
                candidate = path.parent / candidate
            data[key] = str(candidate)
    logger.info("Loaded config file %s (%s)", path, ", ".join(sorted(data)) or "empty")
    return data
