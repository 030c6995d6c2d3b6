"""Spatial analytics and the session summary document.

Everything the dashboard's summary screen shows is computed here: the
occupancy heatmap, zone fractions, the action-proportion donut, the
speak/pause ratio, the teaching-style balance, and the downsampled X-Y
movement series. Time-proportion questions (donut rings, style balance)
are answered by exact interval partitioning: the session is cut at every
event boundary and each elementary span divides its duration equally
among the kinds active on it, so proportions add up to one by
construction instead of by luck.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .actions import EventTimeline
from .core import Interval, Point
from .tracking import TeacherTrack

ZONE_PRIORITY = ("board", "students")
OTHER_ZONE = "other"
NO_ACTION = "none"

# Events shorter than this settle their zone at the midpoint sample.
MIDPOINT_SPLIT_SECONDS = 1.0


@dataclass(frozen=True)
class HeatmapGrid:
    rows: int
    cols: int
    counts: np.ndarray
    total: int


def compute_heatmap(track: TeacherTrack, rows: int = 12, cols: int = 20) -> HeatmapGrid:
    """Count track samples per grid cell; x = 1 or y = 1 lands in the last cell."""
    counts = np.zeros((rows, cols), dtype=int)
    for x, y in track.points:
        c = min(cols - 1, int(x * cols))
        r = min(rows - 1, int(y * rows))
        counts[r, c] += 1
    return HeatmapGrid(rows, cols, counts, int(counts.sum()))


def point_in_polygon(x: float, y: float, vertices: tuple[Point, ...]) -> bool:
    """Ray-cast containment with a closed boundary (edges count as inside)."""
    n = len(vertices)
    inside = False
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        if _on_segment(x, y, a, b):
            return True
        if (a.y > y) != (b.y > y):
            x_cross = a.x + (b.x - a.x) * (y - a.y) / (b.y - a.y)
            if x < x_cross:
                inside = not inside
    return inside


def _on_segment(x: float, y: float, a: Point, b: Point) -> bool:
    cross = (b.x - a.x) * (y - a.y) - (b.y - a.y) * (x - a.x)
    if abs(cross) > 1e-12:
        return False
    return min(a.x, b.x) - 1e-12 <= x <= max(a.x, b.x) + 1e-12 and \
        min(a.y, b.y) - 1e-12 <= y <= max(a.y, b.y) + 1e-12


def zone_occupancy(
    track: TeacherTrack,
    zones: dict[str, tuple[Point, ...]],
) -> dict[str, float | None]:
    """Fraction of active samples inside each zone; overlap is allowed."""
    total = len(track)
    out: dict[str, float | None] = {}
    for name, vertices in zones.items():
        if total == 0:
            out[name] = None
            continue
        hits = sum(
            1 for x, y in track.points if point_in_polygon(x, y, vertices)
        )
        out[name] = hits / total
    return out


def trace_window(track: TeacherTrack, now: float, span: float = 60.0) -> list[tuple[float, float, float]]:
    """Samples with time in (now - span, now], original order preserved."""
    return [
        (float(t), float(x), float(y))
        for t, (x, y) in zip(track.times, track.points)
        if now - span < t <= now
    ]


def _zone_category(x: float, y: float, zones: dict[str, tuple[Point, ...]]) -> str:
    for name in ZONE_PRIORITY:
        vertices = zones.get(name)
        if vertices and point_in_polygon(x, y, vertices):
            return name
    return OTHER_ZONE


def partition_intervals(
    items: list[tuple[Interval, str]],
    duration: float,
) -> list[tuple[float, float, frozenset[str]]]:
    """Cut [0, duration] at every interval boundary.

    Each returned span carries the set of keys active on it; spans with
    an empty set are uncovered time. Zero-length inputs vanish here.
    """
    bounds = {0.0, duration}
    for interval, _ in items:
        bounds.add(min(interval.start, duration))
        bounds.add(min(interval.end, duration))
    edges = sorted(bounds)
    spans = []
    for lo, hi in zip(edges, edges[1:]):
        if hi - lo <= 0.0:
            continue
        # cutting at every boundary means an interval either covers a
        # span completely or misses its interior entirely
        active = frozenset(
            key for interval, key in items
            if interval.start <= lo and interval.end >= hi
        )
        spans.append((lo, hi, active))
    return spans


def action_proportions(
    timeline: EventTimeline,
    track: TeacherTrack,
    zones: dict[str, tuple[Point, ...]],
    duration: float,
) -> dict:
    """Donut data: outer ring per action kind, inner ring split by zone.

    Time where several kinds overlap divides equally among them, so the
    outer ring plus the `none` remainder always sums to one. Zero-length
    events (slide changes) carry no time and no ring share.
    """
    items = [(e.interval, e.kind) for e in timeline.events if e.interval.duration > 0.0]
    spans = partition_intervals(items, duration)

    outer: dict[str, float] = {}
    inner: dict[str, dict[str, float]] = {}
    for lo, hi, active in spans:
        length = hi - lo
        if not active:
            outer[NO_ACTION] = outer.get(NO_ACTION, 0.0) + length
            continue
        share = length / len(active)
        zone_split = _span_zone_split(lo, hi, track, zones)
        for kind in active:
            outer[kind] = outer.get(kind, 0.0) + share
            ring = inner.setdefault(kind, {})
            for zone, frac in zone_split.items():
                ring[zone] = ring.get(zone, 0.0) + share * frac

    if duration > 0:
        outer = {k: v / duration for k, v in outer.items()}
        inner = {
            kind: {zone: v / duration for zone, v in ring.items()}
            for kind, ring in inner.items()
        }
    outer.setdefault(NO_ACTION, 0.0)
    return {"outer": outer, "inner": inner}


def _span_zone_split(
    lo: float,
    hi: float,
    track: TeacherTrack,
    zones: dict[str, tuple[Point, ...]],
) -> dict[str, float]:
    """How a time span's duration divides among zone categories.

    Short spans take the zone of the sample nearest their midpoint;
    longer spans split by the zone votes of all their samples.
    """
    if len(track) == 0:
        return {OTHER_ZONE: 1.0}
    if hi - lo < MIDPOINT_SPLIT_SECONDS:
        mid = (lo + hi) / 2.0
        idx = int(np.argmin(np.abs(track.times - mid)))
        x, y = track.points[idx]
        return {_zone_category(float(x), float(y), zones): 1.0}
    mask = (track.times >= lo) & (track.times <= hi)
    indices = np.nonzero(mask)[0]
    if len(indices) == 0:
        mid = (lo + hi) / 2.0
        idx = int(np.argmin(np.abs(track.times - mid)))
        indices = np.asarray([idx])
    votes: dict[str, int] = {}
    for i in indices:
        x, y = track.points[i]
        cat = _zone_category(float(x), float(y), zones)
        votes[cat] = votes.get(cat, 0) + 1
    total = sum(votes.values())
    return {cat: n / total for cat, n in votes.items()}


def speak_pause_ratio(utterances: list[Interval], duration: float) -> dict:
    """Speech vs pause time; a pause-free session flags the ratio infinite."""
    speech = sum(u.duration for u in utterances)
    pause = max(0.0, duration - speech)
    if pause == 0.0:
        return {
            "speech_seconds": speech,
            "pause_seconds": 0.0,
            "ratio": None,
            "infinite": speech > 0.0,
        }
    return {
        "speech_seconds": speech,
        "pause_seconds": pause,
        "ratio": speech / pause,
        "infinite": False,
    }


def teaching_style_balance(
    annotations_by_class: list[tuple[Interval, str]],
    duration: float,
) -> dict:
    """Active vs passive fraction of the manually annotated time.

    Input pairs are (interval, "active" | "passive"), already mapped from
    labels. Overlap inside a class is union time; time annotated as both
    classes splits evenly. No mapped annotations -> both unavailable.
    """
    if not annotations_by_class:
        return {"active_fraction": None, "passive_fraction": None, "available": False}
    spans = partition_intervals(annotations_by_class, duration)
    active = 0.0
    passive = 0.0
    for lo, hi, keys in spans:
        if not keys:
            continue
        share = (hi - lo) / len(keys)
        if "active" in keys:
            active += share
        if "passive" in keys:
            passive += share
    covered = active + passive
    if covered <= 0.0:
        return {"active_fraction": None, "passive_fraction": None, "available": False}
    return {
        "active_fraction": active / covered,
        "passive_fraction": passive / covered,
        "available": True,
    }


def downsample_xy(track: TeacherTrack, duration: float, tick: float = 0.5) -> list[dict]:
    """X-Y panel series: the sample nearest each half-second tick.

    At most two samples per second regardless of frame rate; each sample
    appears once even when it is the nearest to several ticks.
    """
    if len(track) == 0:
        return []
    ticks = np.arange(0.0, duration + 1e-9, tick)
    chosen: list[int] = []
    for t in ticks:
        idx = int(np.argmin(np.abs(track.times - t)))
        if not chosen or chosen[-1] != idx:
            chosen.append(idx)
    return [
        {"t": float(track.times[i]), "x": float(track.points[i][0]), "y": float(track.points[i][1])}
        for i in chosen
    ]


def compile_summary(
    session_id: str,
    duration: float,
    track: TeacherTrack | None,
    timeline: EventTimeline | None,
    zones: dict[str, tuple[Point, ...]],
    utterances: list[Interval],
    style_items: list[tuple[Interval, str]],
    speaking_style: dict,
    windows_doc: dict,
    media_available: bool,
    provenance: dict,
    heatmap_rows: int = 12,
    heatmap_cols: int = 20,
) -> dict:
    """Assemble the complete per-session summary document.

    The mandatory backbone is the teacher track and the timeline; speech
    metrics may be partially unavailable and stay None. The result is a
    plain JSON-serializable dict with no NaN or infinity anywhere.
    """
    if track is None:
        raise ValueError("summary cannot be compiled: teacher track missing")
    if timeline is None:
        raise ValueError("summary cannot be compiled: event timeline missing")

    heatmap = compute_heatmap(track, heatmap_rows, heatmap_cols)
    occupancy = zone_occupancy(track, zones)
    return {
        "session_id": session_id,
        "duration": duration,
        "media_available": media_available,
        "provenance": provenance,
        "action_proportions": action_proportions(timeline, track, zones, duration),
        "zone_occupancy": occupancy,
        "teaching_style": teaching_style_balance(style_items, duration),
        "speaking_style": speaking_style,
        "speak_pause_ratio": speak_pause_ratio(utterances, duration),
        "heatmap": {
            "rows": heatmap.rows,
            "cols": heatmap.cols,
            "counts": heatmap.counts.tolist(),
            "total": heatmap.total,
        },
        "xy_series": downsample_xy(track, duration),
        "track": {
            "track_id": track.track_id,
            "samples": [
                [float(t), float(x), float(y)]
                for t, (x, y) in zip(track.times, track.points)
            ],
            "gaps": [[g.start, g.end] for g in track.gaps],
        },
        "windows": windows_doc,
    }
