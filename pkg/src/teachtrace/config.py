"""One configuration object for every tunable in the pipeline.

Defaults live on the per-module parameter dataclasses; this module
stacks overrides on top (config file, then the manifest's config block,
then command-line ``--set section.key=value`` pairs) and rejects unknown
keys instead of ignoring them. The effective configuration is embedded
in the summary document so a result can always be traced to the numbers
that produced it.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from .actions import HandWaveParams, SlideChangeParams
from .scoring import FeatureSpec, StyleNorms
from .speech.pitch import PitchParams
from .speech.quality import QualityParams
from .speech.rate import RateParams
from .speech.vad import VadParams
from .speech.windows import WindowParams
from .tracking import TrackerParams


class ConfigError(ValueError):
    """Unknown key, wrong type, or malformed override."""


DEFAULT_FEATURES: tuple[FeatureSpec, ...] = (
    FeatureSpec("loudness_stability", "target", target=0.0, tol=6.0),
    FeatureSpec("intonation", "target", target=1.0, tol=1.0),
    FeatureSpec("clarity", "higher_better", lo=0.0, hi=1.0),
    FeatureSpec("speaking_rate", "target", target=140.0, tol=40.0),
    FeatureSpec("speech_fraction", "higher_better", lo=0.0, hi=0.8),
)


@dataclass(frozen=True)
class AnalysisConfig:
    tracker: TrackerParams = TrackerParams()
    hand_wave: HandWaveParams = HandWaveParams()
    slide_change: SlideChangeParams = SlideChangeParams()
    vad: VadParams = VadParams()
    pitch: PitchParams = PitchParams()
    quality: QualityParams = QualityParams()
    rate: RateParams = RateParams()
    windows: WindowParams = WindowParams()
    norms: StyleNorms = StyleNorms()
    heatmap_rows: int = 12
    heatmap_cols: int = 20
    features: tuple[FeatureSpec, ...] = DEFAULT_FEATURES


_SECTION_TYPES = {
    "tracker": TrackerParams,
    "hand_wave": HandWaveParams,
    "slide_change": SlideChangeParams,
    "vad": VadParams,
    "pitch": PitchParams,
    "quality": QualityParams,
    "rate": RateParams,
    "windows": WindowParams,
    "norms": StyleNorms,
}
_SCALAR_KEYS = {"heatmap_rows", "heatmap_cols"}


def apply_overrides(config: AnalysisConfig, overrides: dict[str, Any]) -> AnalysisConfig:
    """Return a new config with the nested override mapping applied."""
    updates: dict[str, Any] = {}
    for section, value in overrides.items():
        if section in _SCALAR_KEYS:
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise ConfigError(f"{section} must be a positive integer, got {value!r}")
            updates[section] = value
            continue
        if section == "features":
            updates[section] = _parse_features(value)
            continue
        cls = _SECTION_TYPES.get(section)
        if cls is None:
            raise ConfigError(f"unknown config section '{section}'")
        if not isinstance(value, dict):
            raise ConfigError(f"config section '{section}' must be an object")
        current = getattr(config, section)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(value) - known
        if unknown:
            raise ConfigError(f"unknown keys in '{section}': {sorted(unknown)}")
        coerced = {k: _coerce(section, k, current, v) for k, v in value.items()}
        try:
            updates[section] = dataclasses.replace(current, **coerced)
        except ValueError as exc:
            raise ConfigError(f"invalid value in '{section}': {exc}") from exc
    return dataclasses.replace(config, **updates)


def _coerce(section: str, key: str, current: Any, value: Any) -> Any:
    old = getattr(current, key)
    if isinstance(old, bool):
        if not isinstance(value, bool):
            raise ConfigError(f"{section}.{key} must be a boolean")
        return value
    if isinstance(old, int) and not isinstance(old, bool):
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value != int(value):
            raise ConfigError(f"{section}.{key} must be an integer")
        return int(value)
    if isinstance(old, float):
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{section}.{key} must be a number")
        return float(value)
    if isinstance(old, str):
        if not isinstance(value, str):
            raise ConfigError(f"{section}.{key} must be a string")
        return value
    if isinstance(old, tuple):
        if not isinstance(value, (list, tuple)) or len(value) != len(old):
            raise ConfigError(f"{section}.{key} must be a list of length {len(old)}")
        return tuple(float(v) for v in value)
    raise ConfigError(f"{section}.{key} is not overridable")


def _parse_features(value: Any) -> tuple[FeatureSpec, ...]:
    if not isinstance(value, list) or not value:
        raise ConfigError("features must be a non-empty list")
    specs = []
    for entry in value:
        if not isinstance(entry, dict):
            raise ConfigError("each feature must be an object")
        known = {f.name for f in dataclasses.fields(FeatureSpec)}
        unknown = set(entry) - known
        if unknown:
            raise ConfigError(f"unknown feature keys: {sorted(unknown)}")
        try:
            specs.append(FeatureSpec(**entry))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"bad feature spec: {exc}") from exc
    return tuple(specs)


def parse_set_flags(pairs: list[str]) -> dict[str, Any]:
    """Turn ``section.key=value`` strings into a nested override mapping."""
    overrides: dict[str, Any] = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"--set expects section.key=value, got {pair!r}")
        dotted, raw = pair.split("=", 1)
        parts = dotted.split(".")
        if len(parts) == 1:
            key, = parts
            overrides[key] = _parse_value(raw)
        elif len(parts) == 2:
            section, key = parts
            overrides.setdefault(section, {})[key] = _parse_value(raw)
        else:
            raise ConfigError(f"--set path too deep: {dotted!r}")
    return overrides


def _parse_value(raw: str) -> Any:
    try:
        return json.loads(raw)
    except json.JSONDecodeError:
        return raw


def load_config(
    config_path: Path | str | None = None,
    manifest_overrides: dict | None = None,
    set_flags: list[str] | None = None,
) -> AnalysisConfig:
    """Stack all override layers onto the defaults.

    Order of precedence, lowest first: built-in defaults, config file,
    the manifest's config block, --set flags.
    """
    config = AnalysisConfig()
    if config_path is not None:
        path = Path(config_path)
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path.name}: invalid JSON: {exc.msg}") from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"{path.name}: config must be a JSON object")
        config = apply_overrides(config, doc)
    if manifest_overrides:
        config = apply_overrides(config, manifest_overrides)
    if set_flags:
        config = apply_overrides(config, parse_set_flags(set_flags))
    return config


def config_to_dict(config: AnalysisConfig) -> dict:
    """JSON-ready snapshot of the effective configuration."""
    out: dict[str, Any] = {}
    for section in _SECTION_TYPES:
        out[section] = dataclasses.asdict(getattr(config, section))
    out["heatmap_rows"] = config.heatmap_rows
    out["heatmap_cols"] = config.heatmap_cols
    out["features"] = [dataclasses.asdict(f) for f in config.features]
    for section, body in out.items():
        if isinstance(body, dict):
            for key, value in body.items():
                if isinstance(value, tuple):
                    body[key] = list(value)
    return out
