"""Parsers for everything a session directory contains.

A session is one directory holding a `session.json` manifest plus the
stream files it references: a detection/pose JSONL stream, a PCM WAV
recording, optional annotation TSVs (manual and model), an optional
screen-luma CSV, and optional media for playback. Parsing is strict:
malformed input fails loudly with the file and line, nothing is clamped
or silently dropped.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .core import Box, Interval, Point, Pose, N_JOINTS

# DSP cost is bounded by decimating anything faster than this.
MAX_SAMPLE_RATE = 48_000
MIN_SAMPLE_RATE = 8_000

ANNOTATION_SOURCES = ("manual", "model")


class IngestError(ValueError):
    """Any malformed session input."""


class ManifestError(IngestError):
    """Malformed or incomplete session.json."""


@dataclass(frozen=True)
class PersonDetection:
    """One person in one frame: box, optional pose, detector confidence."""

    detection_id: int
    box: Box
    pose: Pose | None
    confidence: float


@dataclass(frozen=True)
class FrameDetections:
    """All persons detected in a single video frame."""

    frame_index: int
    time: float
    persons: tuple[PersonDetection, ...]


@dataclass(frozen=True)
class AudioClip:
    """Mono audio, samples in [-1, 1]."""

    samples: np.ndarray
    sample_rate: int

    def __post_init__(self) -> None:
        if self.samples.ndim != 1:
            raise IngestError("audio clip must be mono (1-D)")
        if self.sample_rate < MIN_SAMPLE_RATE:
            raise IngestError(f"sample rate {self.sample_rate} below minimum {MIN_SAMPLE_RATE}")

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass(frozen=True)
class Annotation:
    """One labeled time span from a manual or model annotation file."""

    interval: Interval
    label: str
    source: str


@dataclass(frozen=True)
class SessionManifest:
    """Parsed session.json: identity, timing, stream paths, zone geometry."""

    session_id: str
    root: Path
    fps: float
    duration: float
    detections_path: Path | None
    audio_path: Path | None
    annotations_path: Path | None
    model_actions_path: Path | None
    screen_luma_path: Path | None
    media_path: Path | None
    zones: dict[str, tuple[Point, ...]] = field(default_factory=dict)
    label_map: dict[str, str] = field(default_factory=dict)
    style_map: dict[str, str] = field(default_factory=dict)
    config_overrides: dict = field(default_factory=dict)


def parse_detection_stream(path: Path | str, fps: float) -> list[FrameDetections]:
    """Read a JSON-lines detection stream into ordered frames.

    Each line is one frame:
    ``{"frame": int, "persons": [{"id": int, "box": [cx,cy,w,h],
    "kps": [[x,y,c] x 17]?, "conf": float}]}``. Frames must appear in
    strictly increasing order; gaps are allowed and preserved.
    """
    if fps <= 0:
        raise IngestError(f"fps must be positive, got {fps}")
    path = Path(path)
    frames: list[FrameDetections] = []
    last_index = -1
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise IngestError(f"{path.name}: malformed JSON at line {lineno}: {exc.msg}") from exc
            try:
                frame = _parse_frame_record(record, fps)
            except (KeyError, TypeError, ValueError) as exc:
                raise IngestError(f"{path.name}: bad frame record at line {lineno}: {exc}") from exc
            if frame.frame_index <= last_index:
                raise IngestError(f"{path.name}: non-monotonic frame order at line {lineno}")
            last_index = frame.frame_index
            frames.append(frame)
    return frames


def _parse_frame_record(record: dict, fps: float) -> FrameDetections:
    index = record["frame"]
    if not isinstance(index, int) or index < 0:
        raise ValueError(f"frame index must be a non-negative integer, got {index!r}")
    persons = []
    seen_ids = set()
    for entry in record.get("persons", []):
        det_id = entry["id"]
        if not isinstance(det_id, int):
            raise ValueError(f"person id must be an integer, got {det_id!r}")
        if det_id in seen_ids:
            raise ValueError(f"duplicate detection id {det_id} within frame {index}")
        seen_ids.add(det_id)
        cx, cy, w, h = entry["box"]
        box = Box(Point(float(cx), float(cy)), float(w), float(h))
        pose = None
        if entry.get("kps") is not None:
            kps = np.asarray(entry["kps"], dtype=float)
            if kps.shape != (N_JOINTS, 3):
                raise ValueError(f"keypoints must be {N_JOINTS} x 3, got {kps.shape}")
            pose = Pose(kps)
        conf = float(entry.get("conf", 1.0))
        if not 0.0 <= conf <= 1.0:
            raise ValueError(f"confidence outside [0, 1]: {conf}")
        persons.append(PersonDetection(det_id, box, pose, conf))
    return FrameDetections(index, index / fps, tuple(persons))


def load_audio(path: Path | str, max_rate: int = MAX_SAMPLE_RATE) -> AudioClip:
    """Load an uncompressed PCM WAV file as a mono clip in [-1, 1].

    Accepts 16-bit integer or 32-bit float samples, mono or stereo.
    Stereo is downmixed by averaging. Rates above `max_rate` are reduced
    by integer decimation so later DSP stays bounded.
    """
    path = Path(path)
    raw = path.read_bytes()
    fmt, data = _parse_riff(path.name, raw)
    audio_format, n_channels, sample_rate, bits = fmt
    if audio_format == 1:
        if bits != 16:
            raise IngestError(f"{path.name}: unsupported PCM bit depth {bits} (want 16)")
        samples = np.frombuffer(data, dtype="<i2").astype(np.float64) / 32768.0
    elif audio_format == 3:
        if bits != 32:
            raise IngestError(f"{path.name}: unsupported float bit depth {bits} (want 32)")
        samples = np.frombuffer(data, dtype="<f4").astype(np.float64)
    else:
        raise IngestError(
            f"{path.name}: unsupported audio format tag {audio_format} (want PCM=1 or IEEE float=3)"
        )
    if n_channels < 1:
        raise IngestError(f"{path.name}: channel count {n_channels} invalid")
    if n_channels > 1:
        usable = len(samples) - len(samples) % n_channels
        samples = samples[:usable].reshape(-1, n_channels).mean(axis=1)
    if len(samples) == 0:
        raise IngestError(f"{path.name}: no audio samples")
    if sample_rate > max_rate:
        factor = -(-sample_rate // max_rate)
        if sample_rate % factor:
            raise IngestError(
                f"{path.name}: sample rate {sample_rate} not reducible to <= {max_rate} by integer decimation"
            )
        samples = samples[::factor]
        sample_rate //= factor
    return AudioClip(samples, int(sample_rate))


def _parse_riff(name: str, raw: bytes) -> tuple[tuple[int, int, int, int], bytes]:
    """Walk RIFF chunks; return ((format, channels, rate, bits), data bytes)."""
    if len(raw) < 12 or raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise IngestError(f"{name}: not a RIFF/WAVE file")
    pos = 12
    fmt = None
    data = None
    while pos + 8 <= len(raw):
        chunk_id = raw[pos:pos + 4]
        (size,) = struct.unpack_from("<I", raw, pos + 4)
        body = raw[pos + 8:pos + 8 + size]
        if chunk_id == b"fmt ":
            if len(body) < 16:
                raise IngestError(f"{name}: truncated fmt chunk")
            audio_format, n_channels, sample_rate = struct.unpack_from("<HHI", body, 0)
            (bits,) = struct.unpack_from("<H", body, 14)
            fmt = (audio_format, n_channels, sample_rate, bits)
        elif chunk_id == b"data":
            data = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned
    if fmt is None:
        raise IngestError(f"{name}: missing fmt chunk")
    if data is None:
        raise IngestError(f"{name}: missing data chunk")
    return fmt, data


def write_wav(path: Path | str, samples: np.ndarray, sample_rate: int) -> None:
    """Write mono float samples in [-1, 1] as a 16-bit PCM WAV file."""
    clipped = np.clip(np.asarray(samples, dtype=np.float64), -1.0, 1.0)
    pcm = np.round(clipped * 32767.0).astype("<i2")
    data = pcm.tobytes()
    fmt = struct.pack("<HHIIHH", 1, 1, sample_rate, sample_rate * 2, 2, 16)
    payload = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
    payload += b"data" + struct.pack("<I", len(data)) + data
    Path(path).write_bytes(b"RIFF" + struct.pack("<I", len(payload)) + payload)


def parse_annotation_file(
    path: Path | str,
    source: str,
    duration: float | None = None,
) -> list[Annotation]:
    """Read a TSV annotation file: ``start<TAB>end<TAB>label`` per line.

    Lines starting with ``#`` are comments. Labels keep interior
    whitespace (TSV survives labels containing spaces) but are trimmed at
    the ends. Output is sorted by start time.
    """
    if source not in ANNOTATION_SOURCES:
        raise IngestError(f"annotation source must be one of {ANNOTATION_SOURCES}, got {source!r}")
    path = Path(path)
    annotations: list[Annotation] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split("\t", 2)
            if len(parts) != 3:
                raise IngestError(f"{path.name}: expected start<TAB>end<TAB>label (line {lineno})")
            try:
                start, end = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise IngestError(f"{path.name}: non-numeric time (line {lineno})") from exc
            if not (math.isfinite(start) and math.isfinite(end)):
                raise IngestError(f"{path.name}: non-finite time (line {lineno})")
            if end < start:
                raise IngestError(f"{path.name}: end before start (line {lineno})")
            if start < 0:
                raise IngestError(f"{path.name}: negative start time (line {lineno})")
            if duration is not None and end > duration:
                raise IngestError(
                    f"{path.name}: annotation ends at {end} past session duration {duration} (line {lineno})"
                )
            label = parts[2].strip()
            if not label:
                raise IngestError(f"{path.name}: empty label (line {lineno})")
            annotations.append(Annotation(Interval(start, end), label, source))
    annotations.sort(key=lambda a: (a.interval.start, a.interval.end, a.label))
    return annotations


def serialize_annotations(annotations: list[Annotation]) -> str:
    """Render annotations back to the TSV format parse_annotation_file reads."""
    lines = [f"{a.interval.start:g}\t{a.interval.end:g}\t{a.label}" for a in annotations]
    return "".join(line + "\n" for line in lines)


def parse_luma_series(path: Path | str) -> tuple[np.ndarray, np.ndarray]:
    """Read a screen-luminance CSV: ``time,value`` per line, values in [0, 1].

    Returns (times, values) with times strictly increasing.
    """
    path = Path(path)
    times: list[float] = []
    values: list[float] = []
    with path.open("r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split(",")
            if len(parts) != 2:
                raise IngestError(f"{path.name}: expected time,value (line {lineno})")
            try:
                t, v = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise IngestError(f"{path.name}: non-numeric entry (line {lineno})") from exc
            if times and t <= times[-1]:
                raise IngestError(f"{path.name}: non-monotonic time at line {lineno}")
            if not 0.0 <= v <= 1.0:
                raise IngestError(f"{path.name}: luma value outside [0, 1] (line {lineno})")
            times.append(t)
            values.append(v)
    return np.asarray(times), np.asarray(values)


_MANIFEST_KEYS = {
    "session_id", "fps", "duration", "media", "streams",
    "zones", "label_map", "style_map", "config",
}
_STREAM_KEYS = {"detections", "audio", "annotations", "model_actions", "screen_luma"}
_STYLE_CLASSES = {"active", "passive"}


def load_manifest(path: Path | str) -> SessionManifest:
    """Load and validate a session.json manifest.

    The manifest is the single entry point for a session directory; all
    stream paths are resolved relative to it and must exist.
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"manifest not found: {path}")
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ManifestError(f"{path.name}: invalid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ManifestError(f"{path.name}: manifest must be a JSON object")
    unknown = set(doc) - _MANIFEST_KEYS
    if unknown:
        raise ManifestError(f"{path.name}: unknown manifest keys: {sorted(unknown)}")
    for key in ("session_id", "fps", "duration"):
        if key not in doc:
            raise ManifestError(f"{path.name}: missing required field '{key}'")
    session_id = doc["session_id"]
    if not isinstance(session_id, str) or not session_id:
        raise ManifestError(f"{path.name}: session_id must be a non-empty string")
    fps = float(doc["fps"])
    if fps <= 0:
        raise ManifestError(f"{path.name}: fps must be positive, got {fps}")
    duration = float(doc["duration"])
    if duration <= 0:
        raise ManifestError(f"{path.name}: duration must be positive, got {duration}")

    root = path.parent
    streams = doc.get("streams", {})
    if not isinstance(streams, dict):
        raise ManifestError(f"{path.name}: streams must be an object")
    unknown_streams = set(streams) - _STREAM_KEYS
    if unknown_streams:
        raise ManifestError(f"{path.name}: unknown stream keys: {sorted(unknown_streams)}")

    def resolve(key: str, value: str | None) -> Path | None:
        if value is None:
            return None
        target = root / value
        if not target.exists():
            raise ManifestError(f"{path.name}: {key} path does not exist: {value}")
        return target

    zones: dict[str, tuple[Point, ...]] = {}
    for name, vertices in doc.get("zones", {}).items():
        if not isinstance(vertices, list) or len(vertices) < 3:
            raise ManifestError(f"{path.name}: zone '{name}' needs at least 3 vertices")
        try:
            zones[name] = tuple(Point(float(x), float(y)) for x, y in vertices)
        except (TypeError, ValueError) as exc:
            raise ManifestError(f"{path.name}: zone '{name}' has a bad vertex: {exc}") from exc

    label_map = doc.get("label_map", {})
    if not isinstance(label_map, dict):
        raise ManifestError(f"{path.name}: label_map must be an object")
    style_map = doc.get("style_map", {})
    if not isinstance(style_map, dict):
        raise ManifestError(f"{path.name}: style_map must be an object")
    for label, cls in style_map.items():
        if cls not in _STYLE_CLASSES:
            raise ManifestError(
                f"{path.name}: style_map['{label}'] must be 'active' or 'passive', got {cls!r}"
            )
    config = doc.get("config", {})
    if not isinstance(config, dict):
        raise ManifestError(f"{path.name}: config must be an object")

    return SessionManifest(
        session_id=session_id,
        root=root,
        fps=fps,
        duration=duration,
        detections_path=resolve("detections", streams.get("detections")),
        audio_path=resolve("audio", streams.get("audio")),
        annotations_path=resolve("annotations", streams.get("annotations")),
        model_actions_path=resolve("model_actions", streams.get("model_actions")),
        screen_luma_path=resolve("screen_luma", streams.get("screen_luma")),
        media_path=resolve("media", doc.get("media")),
        zones=zones,
        label_map=dict(label_map),
        style_map=dict(style_map),
        config_overrides=config,
    )
