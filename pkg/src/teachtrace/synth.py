"""Synthetic session generators.

Four scripted scenarios produce complete session directories (manifest,
detection stream, audio, annotations, luma, media bytes) together with a
ground_truth.json sidecar describing what a correct analysis must find.
Everything is a pure function of the scenario name and the seed, so the
same invocation always writes identical bytes; randomness only shapes
audio content and burst schedules, never file layout.

    stationary    one person standing still, a few tone bursts
    crossing      teacher and student swap sides; detector ids swap too
    exit_reentry  teacher leaves by the left edge and comes back
    lecture_audio full 90 s session: speech bursts, labels, slides
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .ingest import write_wav

SCENARIOS = ("stationary", "crossing", "exit_reentry", "lecture_audio")

FPS = 15.0
SAMPLE_RATE = 16_000
NOISE_SIGMA = 1e-4
BOX_W, BOX_H = 0.12, 0.30

ZONES = {
    "board": [[0.0, 0.0], [1.0, 0.0], [1.0, 0.35], [0.0, 0.35]],
    "students": [[0.0, 0.55], [1.0, 0.55], [1.0, 1.0], [0.0, 1.0]],
}
LABEL_MAP = {
    "writing on board": "writing_on_board",
    "pointing at board": "pointing_at_board",
    "gesturing at board": "gesturing_at_board",
}
STYLE_MAP = {"lecturing": "passive", "group work": "active"}


def generate(scenario: str, out_dir: Path | str, seed: int = 0) -> Path:
    """Write one synthetic session; returns the manifest path."""
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r} (choose from {', '.join(SCENARIOS)})")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    build = {
        "stationary": _stationary,
        "crossing": _crossing,
        "exit_reentry": _exit_reentry,
        "lecture_audio": _lecture_audio,
    }[scenario]
    return build(out, seed)


# -- helpers ------------------------------------------------------------------


def _person(det_id: int, cx: float, cy: float) -> dict:
    return {
        "id": det_id,
        "box": [round(cx, 6), round(cy, 6), BOX_W, BOX_H],
        "conf": 0.95,
    }


def _write_jsonl(path: Path, frames: list[dict]) -> None:
    with path.open("w", encoding="utf-8") as fh:
        for frame in frames:
            fh.write(json.dumps(frame, sort_keys=True) + "\n")


def _write_json(path: Path, doc: dict) -> None:
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _write_media(path: Path, seed: int) -> None:
    rng = np.random.default_rng(seed + 99_991)
    path.write_bytes(rng.integers(0, 256, size=16_384, dtype=np.uint8).tobytes())


def _manifest(
    out: Path,
    session_id: str,
    duration: float,
    extra_streams: dict[str, str] | None = None,
) -> None:
    streams = {"detections": "detections.jsonl", "audio": "audio.wav"}
    if extra_streams:
        streams.update(extra_streams)
    _write_json(out / "session.json", {
        "session_id": session_id,
        "fps": FPS,
        "duration": duration,
        "media": "media.mp4",
        "streams": streams,
        "zones": ZONES,
        "label_map": LABEL_MAP,
        "style_map": STYLE_MAP,
    })


SYLLABLE_AM_HZ = 4.0


def _tone_burst(sr: int, duration: float, f0: float, amp: float = 0.3) -> np.ndarray:
    """A voiced-like burst: three harmonics under a short raised-cosine fade.

    A slow amplitude ripple mimics syllable alternation so intensity-based
    rate estimation has dips to find; it starts at full level so burst
    onsets stay sharp.
    """
    n = int(round(duration * sr))
    t = np.arange(n) / sr
    x = (
        0.6 * np.sin(2 * math.pi * f0 * t)
        + 0.25 * np.sin(2 * math.pi * 2 * f0 * t)
        + 0.15 * np.sin(2 * math.pi * 3 * f0 * t)
    )
    x *= 0.7 + 0.3 * np.cos(2 * math.pi * SYLLABLE_AM_HZ * t)
    fade = min(n // 4, int(0.005 * sr))
    if fade > 0:
        ramp = 0.5 * (1.0 - np.cos(np.linspace(0.0, math.pi, fade)))
        x[:fade] *= ramp
        x[-fade:] *= ramp[::-1]
    return amp * x


def _burst_audio(
    duration: float,
    bursts: list[dict],
    seed: int,
) -> np.ndarray:
    rng = np.random.default_rng(seed)
    samples = rng.normal(0.0, NOISE_SIGMA, int(round(duration * SAMPLE_RATE)))
    for burst in bursts:
        lo = int(round(burst["start"] * SAMPLE_RATE))
        tone = _tone_burst(SAMPLE_RATE, burst["end"] - burst["start"], burst["f0"])
        samples[lo:lo + len(tone)] += tone
    return samples


# -- scenarios ----------------------------------------------------------------


def _stationary(out: Path, seed: int) -> Path:
    duration = 20.0
    n_frames = int(duration * FPS)
    frames = [
        {"frame": i, "persons": [_person(1, 0.5, 0.25)]}
        for i in range(n_frames)
    ]
    _write_jsonl(out / "detections.jsonl", frames)

    bursts = [
        {"start": 2.0, "end": 2.5, "f0": 200.0, "short": False},
        {"start": 6.0, "end": 6.6, "f0": 180.0, "short": False},
        {"start": 11.0, "end": 11.4, "f0": 220.0, "short": False},
    ]
    write_wav(out / "audio.wav", _burst_audio(duration, bursts, seed), SAMPLE_RATE)
    _write_media(out / "media.mp4", seed)
    _manifest(out, "stationary", duration)
    _write_json(out / "ground_truth.json", {
        "scenario": "stationary",
        "seed": seed,
        "teacher_ids": [[i, 1] for i in range(n_frames)],
        "anchor": [0.5, 0.4],
        "bursts": bursts,
    })
    return out / "session.json"


def _crossing(out: Path, seed: int) -> Path:
    duration = 12.0
    n_frames = int(duration * FPS)
    swap_frame = n_frames // 2
    frames = []
    teacher_ids = []
    for i in range(n_frames):
        t = i / FPS
        frac = t / duration
        teacher_x = 0.1 + 0.8 * frac
        student_x = 0.9 - 0.8 * frac
        teacher_id = 1 if i < swap_frame else 3
        frames.append({"frame": i, "persons": [
            _person(teacher_id, teacher_x, 0.30),
            _person(2, student_x, 0.40),
        ]})
        teacher_ids.append([i, teacher_id])
    _write_jsonl(out / "detections.jsonl", frames)
    rng = np.random.default_rng(seed)
    write_wav(out / "audio.wav",
              rng.normal(0.0, NOISE_SIGMA, int(duration * SAMPLE_RATE)), SAMPLE_RATE)
    _write_media(out / "media.mp4", seed)
    _manifest(out, "crossing", duration)
    _write_json(out / "ground_truth.json", {
        "scenario": "crossing",
        "seed": seed,
        "teacher_ids": teacher_ids,
        "swap_frame": swap_frame,
    })
    return out / "session.json"


def _exit_reentry(out: Path, seed: int) -> Path:
    duration = 20.0
    exit_time, reentry_time = 5.0, 12.0
    n_frames = int(duration * FPS)
    frames = []
    teacher_ids = []
    for i in range(n_frames):
        t = i / FPS
        persons = [_person(2, 0.7, 0.65)]
        if t <= exit_time:
            # walk from center to the left edge
            frac = t / exit_time
            x = 0.5 - (0.5 - 0.03) * frac
            persons.insert(0, _person(1, x, 0.30))
            teacher_ids.append([i, 1])
        elif t >= reentry_time:
            # come back in with a fresh detector id
            frac = min(1.0, (t - reentry_time) / (duration - reentry_time))
            x = 0.03 + (0.5 - 0.03) * frac
            persons.insert(0, _person(3, x, 0.30))
            teacher_ids.append([i, 3])
        frames.append({"frame": i, "persons": persons})
    _write_jsonl(out / "detections.jsonl", frames)
    rng = np.random.default_rng(seed)
    write_wav(out / "audio.wav",
              rng.normal(0.0, NOISE_SIGMA, int(duration * SAMPLE_RATE)), SAMPLE_RATE)
    _write_media(out / "media.mp4", seed)
    _manifest(out, "exit_reentry", duration)
    _write_json(out / "ground_truth.json", {
        "scenario": "exit_reentry",
        "seed": seed,
        "teacher_ids": teacher_ids,
        "gap": [exit_time, reentry_time],
        "student_id": 2,
    })
    return out / "session.json"


def _lecture_audio(out: Path, seed: int) -> Path:
    duration = 90.0
    rng = np.random.default_rng(seed)

    bursts = []
    cursor = 1.0
    count = 0
    # alternate long (recoverable) and short (must be excluded) bursts,
    # keeping everything clear of the final 10 s of guaranteed quiet
    while True:
        short = count % 3 == 2
        length = float(rng.uniform(0.04, 0.10)) if short else float(rng.uniform(0.2, 0.8))
        if cursor + length > duration - 10.0:
            break
        bursts.append({
            "start": round(cursor, 6),
            "end": round(cursor + length, 6),
            "f0": round(float(rng.uniform(170.0, 260.0)), 3),
            "short": short,
        })
        cursor += length + float(rng.uniform(0.6, 1.2))
        count += 1

    quiet: list[list[float]] = []
    prev_end = 0.0
    for burst in bursts:
        if burst["start"] - prev_end > 0.1:
            quiet.append([round(prev_end + 0.05, 6), round(burst["start"] - 0.05, 6)])
        prev_end = burst["end"]
    quiet.append([round(prev_end + 0.05, 6), duration])

    write_wav(out / "audio.wav", _burst_audio(duration, bursts, seed + 1), SAMPLE_RATE)

    n_frames = int(duration * FPS)
    frames = [
        {"frame": i, "persons": [_person(1, 0.5, 0.15)]}
        for i in range(n_frames)
    ]
    _write_jsonl(out / "detections.jsonl", frames)

    (out / "annotations.tsv").write_text(
        "# manual annotations\n"
        "0\t30\tlecturing\n"
        "30\t60\tgroup work\n"
        "60\t75\twriting on board\n",
        encoding="utf-8",
    )
    (out / "model_actions.tsv").write_text(
        "10\t25\twriting on board\n"
        "40\t50\tpointing at board\n"
        "70\t80\tgesturing at board\n",
        encoding="utf-8",
    )
    luma_lines = ["# t,mean luma"]
    for k in range(int(duration * 2)):
        t = k / 2.0
        value = 0.30 if t < 45.0 else (0.55 if t < 80.0 else 0.80)
        luma_lines.append(f"{t},{value}")
    (out / "screen_luma.csv").write_text("\n".join(luma_lines) + "\n", encoding="utf-8")

    _write_media(out / "media.mp4", seed)
    _manifest(out, "lecture_audio", duration, {
        "annotations": "annotations.tsv",
        "model_actions": "model_actions.tsv",
        "screen_luma": "screen_luma.csv",
    })
    _write_json(out / "ground_truth.json", {
        "scenario": "lecture_audio",
        "seed": seed,
        "bursts": bursts,
        "quiet": quiet,
        "slide_changes": [45.0, 80.0],
    })
    return out / "session.json"
