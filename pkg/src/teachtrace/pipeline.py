"""End-to-end session analysis: inputs in, three artifacts out.

Reads everything the manifest references, runs tracking, event
detection, speech analysis, scoring, and spatial analytics, and writes
`summary.json`, `timeline.json`, and `windows.csv` into the session's
analysis directory. Output is deterministic: sorted keys, no wall-clock
stamps, so re-running on unchanged inputs reproduces identical bytes.
"""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path

import numpy as np

from . import __version__
from .actions import (
    detect_hand_wave,
    detect_slide_change,
    ingest_labeled_actions,
    merge_timeline,
    timeline_to_dict,
)
from .analytics import compile_summary
from .config import AnalysisConfig, config_to_dict
from .ingest import (
    SessionManifest,
    load_audio,
    load_manifest,
    parse_annotation_file,
    parse_detection_stream,
    parse_luma_series,
)
from .scoring import (
    classify_style,
    clarity_from_cpp,
    normalize_feature,
    score_equal_weights,
    score_reciprocal_std_weights,
)
from .speech import (
    aggregate_windows,
    estimate_formants,
    estimate_pitch,
    find_period_markers,
    jitter_shimmer,
    segment_utterances,
    syllable_nuclei,
)
from .speech.windows import WindowFeatures, compute_window
from .tracking import build_teacher_track

ARTIFACTS = ("summary.json", "timeline.json", "windows.csv")


class PipelineError(RuntimeError):
    """Analysis failed after inputs parsed cleanly."""


def analyze_session(
    manifest_path: Path | str,
    config: AnalysisConfig | None = None,
    out_dir: Path | str | None = None,
    dump_tracking: bool = False,
) -> dict[str, Path]:
    """Analyze one session directory; returns the artifact paths."""
    config = config or AnalysisConfig()
    manifest = load_manifest(manifest_path)
    out = Path(out_dir) if out_dir is not None else manifest.root / "analysis"
    out.mkdir(parents=True, exist_ok=True)

    if manifest.detections_path is None:
        raise PipelineError("manifest lists no detections stream; nothing to track")
    frames = parse_detection_stream(manifest.detections_path, manifest.fps)
    dump_path = out / "tracking_dump.jsonl" if dump_tracking else None
    try:
        track, _registry = build_teacher_track(frames, config.tracker, dump_path)
    except ValueError as exc:
        raise PipelineError(str(exc)) from exc

    speech = _analyze_speech(manifest, config)

    manual = []
    if manifest.annotations_path is not None:
        manual = parse_annotation_file(manifest.annotations_path, "manual", manifest.duration)
    model = []
    if manifest.model_actions_path is not None:
        model = parse_annotation_file(manifest.model_actions_path, "model", manifest.duration)

    rule_events = detect_hand_wave(track.times, list(track.poses), config.hand_wave)
    if manifest.screen_luma_path is not None:
        luma_t, luma_v = parse_luma_series(manifest.screen_luma_path)
        rule_events = rule_events + detect_slide_change(luma_t, luma_v, config.slide_change)

    timeline = merge_timeline(
        manifest.session_id,
        ingest_labeled_actions(manual, manifest.label_map),
        ingest_labeled_actions(model, manifest.label_map),
        rule_events,
    )

    style_items = [
        (a.interval, manifest.style_map[a.label])
        for a in manual
        if a.label in manifest.style_map
    ]

    speaking_style = _score_speaking(speech, config)

    windows_doc = {
        "coarse": [w.to_dict() for w in speech["coarse"]],
        "fine": [w.to_dict() for w in speech["fine"]],
    }
    summary = compile_summary(
        session_id=manifest.session_id,
        duration=manifest.duration,
        track=track,
        timeline=timeline,
        zones=manifest.zones,
        utterances=speech["utterances"],
        style_items=style_items,
        speaking_style=speaking_style,
        windows_doc=windows_doc,
        media_available=manifest.media_path is not None,
        provenance={
            "tool": "teachtrace",
            "version": __version__,
            "config": config_to_dict(config),
        },
        heatmap_rows=config.heatmap_rows,
        heatmap_cols=config.heatmap_cols,
    )

    paths = {
        "summary": out / "summary.json",
        "timeline": out / "timeline.json",
        "windows": out / "windows.csv",
    }
    _write_json(paths["summary"], summary)
    _write_json(paths["timeline"], timeline_to_dict(timeline))
    _write_windows_csv(paths["windows"], speech["fine"])
    return paths


def _analyze_speech(manifest: SessionManifest, config: AnalysisConfig) -> dict:
    """Run the audio chain; every piece degrades to empty/None without audio."""
    empty = {
        "utterances": [], "coarse": [], "fine": [],
        "metrics": {
            "speaking_rate_wpm": None, "clarity": None, "monotony": None,
            "loudness_std_db": None, "speech_fraction": None,
            "cpp_db": None, "jitter_pct": None, "shimmer_pct": None,
        },
    }
    if manifest.audio_path is None:
        return empty
    clip = load_audio(manifest.audio_path)
    utterances = segment_utterances(clip, config.vad)
    series = estimate_pitch(clip, config.pitch)
    series = estimate_formants(clip, series, config.quality)
    voiced = series.f0_hz[series.voiced]
    f0_hint = float(np.median(voiced)) if len(voiced) else None
    markers = find_period_markers(clip, utterances, f0_hint, config.quality)
    nuclei = syllable_nuclei(clip, utterances, config.rate)

    common = dict(
        clip=clip, frames=series, utterances=utterances,
        nuclei_times=nuclei, markers=markers,
        params=config.windows, quality_params=config.quality, rate_params=config.rate,
    )
    coarse = aggregate_windows(duration=manifest.duration, level="coarse", **common)
    fine = aggregate_windows(duration=manifest.duration, level="fine", **common)
    session = compute_window(
        0.0, manifest.duration, "coarse", partial=False, closed_end=True, **common,
    )
    jitter, shimmer = jitter_shimmer(markers, config.quality, clip.sample_rate)
    metrics = {
        "speaking_rate_wpm": session.speaking_rate_wpm,
        "clarity": clarity_from_cpp(session.cpp_db),
        "monotony": session.intonation_score,
        "loudness_std_db": session.loudness_std_db,
        "speech_fraction": session.speech_fraction,
        "cpp_db": session.cpp_db,
        "jitter_pct": jitter,
        "shimmer_pct": shimmer,
    }
    return {"utterances": utterances, "coarse": coarse, "fine": fine, "metrics": metrics}


def _feature_value(name: str, metrics: dict) -> float | None:
    """Raw value feeding one scored feature."""
    if name == "loudness_stability":
        return metrics.get("loudness_std_db")
    if name == "intonation":
        return metrics.get("monotony")
    if name == "clarity":
        return metrics.get("clarity")
    if name == "speaking_rate":
        return metrics.get("speaking_rate_wpm")
    if name == "speech_fraction":
        return metrics.get("speech_fraction")
    return metrics.get(name)


def _window_metrics(w: WindowFeatures) -> dict:
    return {
        "loudness_std_db": w.loudness_std_db,
        "monotony": w.intonation_score,
        "clarity": clarity_from_cpp(w.cpp_db),
        "speaking_rate_wpm": w.speaking_rate_wpm,
        "speech_fraction": w.speech_fraction,
    }


def _score_speaking(speech: dict, config: AnalysisConfig) -> dict:
    """Normalized feature scores, EW and RW aggregates, and verdicts."""
    metrics = speech["metrics"]
    feature_scores: dict[str, float] = {}
    sigmas: dict[str, float] = {}
    for spec in config.features:
        raw = _feature_value(spec.name, metrics)
        if raw is None:
            continue
        feature_scores[spec.name] = normalize_feature(raw, spec)
        history = []
        for w in speech["fine"]:
            w_raw = _feature_value(spec.name, _window_metrics(w))
            if w_raw is not None:
                history.append(normalize_feature(w_raw, spec))
        sigmas[spec.name] = float(np.std(history)) if len(history) >= 2 else 0.0

    names = sorted(feature_scores)
    score_block: dict = {
        "feature_scores": feature_scores,
        "ew_score": None,
        "rw_score": None,
        "weights": None,
    }
    if names:
        scores = [feature_scores[n] for n in names]
        score_block["ew_score"] = score_equal_weights(scores)
        stds = [sigmas[n] for n in names]
        if any(s > 0 for s in stds):
            rw, weights = score_reciprocal_std_weights(scores, stds)
            score_block["rw_score"] = rw
            score_block["weights"] = dict(zip(names, weights))

    verdicts = classify_style(
        metrics["speaking_rate_wpm"], metrics["clarity"], metrics["monotony"],
        config.norms,
    )
    return {"metrics": metrics, "verdicts": verdicts, "score": score_block}


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(
        json.dumps(doc, sort_keys=True, indent=2, allow_nan=False) + "\n",
        encoding="utf-8",
    )


def _write_windows_csv(path: Path, fine: list[WindowFeatures]) -> None:
    columns = [f.name for f in dataclasses.fields(WindowFeatures)]
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for w in fine:
            row = w.to_dict()
            writer.writerow(["" if row[c] is None else row[c] for c in columns])
