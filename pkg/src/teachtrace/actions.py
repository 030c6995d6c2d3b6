"""Action events and the unified timeline.

Events come from three places: rule detectors over the teacher's pose
series (hand waving) and the screen-luma series (slide changes), plus
externally produced labels (manual annotations and model output files).
All of them end up in one sorted timeline, serialized as
``{"session_id": s, "events": [{"kind", "start", "end", "confidence",
"source"}]}``. Instantaneous events (slide changes) carry zero-length
intervals; unknown labels pass through with the label as the kind.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Interval, Pose, LEFT_SHOULDER, RIGHT_SHOULDER, LEFT_WRIST, RIGHT_WRIST
from .ingest import Annotation

KNOWN_KINDS = (
    "writing_on_board",
    "pointing_at_board",
    "gesturing_at_board",
    "hand_gesture",
    "slide_change",
)
EVENT_SOURCES = ("manual", "model", "rule")

# Same-kind same-source events closer than this are one event.
MERGE_GAP = 0.5


@dataclass(frozen=True)
class ActionEvent:
    """One typed, time-stamped teaching action."""

    kind: str
    interval: Interval
    confidence: float
    source: str

    def __post_init__(self) -> None:
        if not self.kind:
            raise ValueError("event kind must be non-empty")
        if self.source not in EVENT_SOURCES:
            raise ValueError(f"event source must be one of {EVENT_SOURCES}, got {self.source!r}")
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence outside [0, 1]: {self.confidence}")


@dataclass(frozen=True)
class EventTimeline:
    """All events of a session, sorted by start time."""

    session_id: str
    events: tuple[ActionEvent, ...]


@dataclass(frozen=True)
class HandWaveParams:
    window: float = 1.5
    min_reversals: int = 2
    visibility: float = 0.3


@dataclass(frozen=True)
class SlideChangeParams:
    threshold: float = 0.08
    debounce: float = 2.0


def detect_hand_wave(
    times: np.ndarray,
    poses: list[Pose | None],
    params: HandWaveParams | None = None,
) -> list[ActionEvent]:
    """Find hand-wave gestures in the teacher's pose series.

    A window of `params.window` seconds qualifies when either wrist is
    above its shoulder and that wrist's horizontal velocity reverses sign
    at least `params.min_reversals` times inside the window. Overlapping
    qualifying windows merge into one event spanning their union.
    """
    params = params or HandWaveParams()
    times = np.asarray(times, dtype=float)
    if len(times) < 3:
        return []

    sides = ((LEFT_WRIST, LEFT_SHOULDER), (RIGHT_WRIST, RIGHT_SHOULDER))
    reversal_times = sorted(
        t
        for wrist, shoulder in sides
        for t in _wrist_reversals(times, poses, wrist, shoulder, params.visibility)
    )
    if len(reversal_times) < params.min_reversals:
        return []
    reversals = np.asarray(reversal_times)

    # Window ending at each sample time; count reversals in (t - W, t].
    qualifying = []
    for t in times:
        lo = np.searchsorted(reversals, t - params.window, side="right")
        hi = np.searchsorted(reversals, t, side="right")
        if hi - lo >= params.min_reversals:
            qualifying.append(float(t))
    if not qualifying:
        return []

    origin = float(times[0])
    events: list[ActionEvent] = []
    run_start = qualifying[0]
    prev = qualifying[0]
    for t in qualifying[1:]:
        if t - prev > params.window:
            events.append(_wave_event(run_start, prev, origin, params.window))
            run_start = t
        prev = t
    events.append(_wave_event(run_start, prev, origin, params.window))
    return events


def _wave_event(first: float, last: float, origin: float, window: float) -> ActionEvent:
    return ActionEvent(
        kind="hand_gesture",
        interval=Interval(max(origin, first - window), last),
        confidence=1.0,
        source="rule",
    )


def _wrist_reversals(
    times: np.ndarray,
    poses: list[Pose | None],
    wrist: int,
    shoulder: int,
    visibility: float,
) -> list[float]:
    """Times where one wrist's horizontal velocity changes sign while raised."""
    reversals: list[float] = []
    prev_sign = 0
    prev_x: float | None = None
    for t, pose in zip(times, poses):
        if pose is None or not (pose.usable(wrist, visibility) and pose.usable(shoulder, visibility)):
            prev_sign = 0
            prev_x = None
            continue
        x = pose.points[wrist, 0]
        raised = pose.points[wrist, 1] < pose.points[shoulder, 1]
        if prev_x is not None:
            dx = x - prev_x
            sign = 0 if abs(dx) < 1e-9 else (1 if dx > 0 else -1)
            if sign != 0:
                if prev_sign != 0 and sign != prev_sign and raised:
                    reversals.append(float(t))
                prev_sign = sign
        prev_x = x
    return reversals


def detect_slide_change(
    times: np.ndarray,
    values: np.ndarray,
    params: SlideChangeParams | None = None,
) -> list[ActionEvent]:
    """Find slide transitions in a mean-luminance series of the screen zone.

    A jump larger than the threshold between consecutive samples emits a
    zero-length event, debounced so events sit at least `debounce`
    seconds apart.
    """
    params = params or SlideChangeParams()
    times = np.asarray(times, dtype=float)
    values = np.asarray(values, dtype=float)
    events: list[ActionEvent] = []
    last_event = -np.inf
    for i in range(1, len(values)):
        if abs(values[i] - values[i - 1]) > params.threshold:
            t = float(times[i])
            if t - last_event >= params.debounce:
                events.append(ActionEvent("slide_change", Interval(t, t), 1.0, "rule"))
                last_event = t
    return events


def ingest_labeled_actions(
    annotations: list[Annotation],
    label_map: dict[str, str],
) -> list[ActionEvent]:
    """Turn annotation records into events, mapping labels to kinds.

    Labels missing from the map pass through unchanged as custom kinds,
    so they still show up on the timeline and in proportions.
    """
    events = []
    for ann in annotations:
        kind = label_map.get(ann.label, ann.label)
        events.append(ActionEvent(kind, ann.interval, 1.0, ann.source))
    return events


def merge_timeline(session_id: str, *event_lists: list[ActionEvent]) -> EventTimeline:
    """Combine events from all sources into one sorted timeline.

    Same-kind same-source events whose intervals overlap or abut within
    MERGE_GAP coalesce into one (union interval, max confidence).
    Cross-source duplicates stay: sources are distinguishable on purpose.
    """
    by_group: dict[tuple[str, str], list[ActionEvent]] = {}
    for events in event_lists:
        for event in events:
            by_group.setdefault((event.kind, event.source), []).append(event)

    merged: list[ActionEvent] = []
    for (kind, source), group in by_group.items():
        group.sort(key=lambda e: (e.interval.start, e.interval.end))
        current = group[0]
        for event in group[1:]:
            if event.interval.start - current.interval.end <= MERGE_GAP:
                current = ActionEvent(
                    kind,
                    Interval(current.interval.start, max(current.interval.end, event.interval.end)),
                    max(current.confidence, event.confidence),
                    source,
                )
            else:
                merged.append(current)
                current = event
        merged.append(current)

    merged.sort(key=lambda e: (e.interval.start, e.interval.end, e.kind, e.source))
    return EventTimeline(session_id, tuple(merged))


def timeline_to_dict(timeline: EventTimeline) -> dict:
    return {
        "session_id": timeline.session_id,
        "events": [
            {
                "kind": e.kind,
                "start": e.interval.start,
                "end": e.interval.end,
                "confidence": e.confidence,
                "source": e.source,
            }
            for e in timeline.events
        ],
    }


def timeline_from_dict(doc: dict) -> EventTimeline:
    events = tuple(
        ActionEvent(
            e["kind"],
            Interval(float(e["start"]), float(e["end"])),
            float(e["confidence"]),
            e["source"],
        )
        for e in doc["events"]
    )
    return EventTimeline(doc["session_id"], events)
