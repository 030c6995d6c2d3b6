"""Teacher tracking over detection streams.

The teacher is picked in the first populated frame by foot-anchor
position, then followed with an appearance-free association step: IoU of
the last seen box plus a motion-gated anchor distance, solved as an
optimal bipartite assignment per frame. Two heuristics keep the track on
the teacher: a registry of detection ids ever confirmed as students
(the teacher is never re-assigned to one of those when an alternative
exists) and an exit detector that releases the track when the teacher
leaves via a frame edge and re-acquires on edge re-entry.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import Box, Interval, Point, Pose, foot_anchor, iou
from .ingest import FrameDetections, PersonDetection

# Gated pairs get this cost so the solver avoids them unless forced;
# forced pairs are filtered out after solving.
INF_COST = 1e9

# Deterministic tie-break: lower detection ids win equal-cost contests.
_TIE_EPS = 1e-9

TEACHER_SELECT_MODES = ("top_y", "bottom_y")


@dataclass(frozen=True)
class TrackerParams:
    """Tunables of the association and exit heuristics."""

    history_size: int = 90
    gate_radius: float = 0.15
    max_cost: float = 0.7
    exit_seconds: float = 5.0
    edge_margin: float = 0.05
    stale_seconds: float = 10.0
    teacher_select: str = "top_y"
    visibility: float = 0.3

    def __post_init__(self) -> None:
        if self.teacher_select not in TEACHER_SELECT_MODES:
            raise ValueError(f"teacher_select must be one of {TEACHER_SELECT_MODES}")
        if self.gate_radius <= 0 or self.max_cost <= 0:
            raise ValueError("gate_radius and max_cost must be positive")


class Track:
    """Mutable per-person state while tracking runs."""

    __slots__ = (
        "track_id", "role", "status", "last_box", "last_anchor",
        "last_seen", "history",
    )

    def __init__(
        self,
        track_id: int,
        role: str,
        box: Box,
        anchor: Point,
        now: float,
        history_size: int,
    ) -> None:
        self.track_id = track_id
        self.role = role
        self.status = "active"
        self.last_box = box
        self.last_anchor = anchor
        self.last_seen = now
        self.history: deque[tuple[float, Point]] = deque(maxlen=history_size)
        self.history.append((now, anchor))

    def observe(self, box: Box, anchor: Point, now: float) -> None:
        self.last_box = box
        self.last_anchor = anchor
        self.last_seen = now
        self.history.append((now, anchor))

    def predicted_anchor(self, now: float) -> Point:
        """Constant-velocity extrapolation from the last two positions."""
        if len(self.history) < 2:
            return self.last_anchor
        (t0, p0), (t1, p1) = self.history[-2], self.history[-1]
        if t1 <= t0:
            return self.last_anchor
        dt = now - t1
        vx = (p1.x - p0.x) / (t1 - t0)
        vy = (p1.y - p0.y) / (t1 - t0)
        x = min(1.0, max(0.0, p1.x + vx * dt))
        y = min(1.0, max(0.0, p1.y + vy * dt))
        return Point(x, y)


@dataclass(frozen=True)
class TeacherTrack:
    """The teacher's position samples plus any exit gaps.

    Samples exist only for frames where the teacher was actually matched;
    `gaps` covers the spans where the track was in exited status.
    """

    track_id: int
    times: np.ndarray
    points: np.ndarray
    poses: tuple[Pose | None, ...]
    gaps: tuple[Interval, ...]

    def __len__(self) -> int:
        return len(self.times)


def detection_anchor(person: PersonDetection, visibility: float) -> Point:
    return foot_anchor(person.pose, person.box, visibility)


def select_initial_teacher(
    frame: FrameDetections,
    mode: str = "top_y",
    visibility: float = 0.3,
) -> int:
    """Pick the teacher in the first populated frame by foot anchor.

    top_y takes the anchor nearest the image top (front of the room as
    seen from a rear camera); bottom_y is the mirrored convention. Ties
    fall to the smaller x, then the smaller detection id.
    """
    if not frame.persons:
        raise ValueError("cannot select a teacher from an empty frame")
    sign = 1.0 if mode == "top_y" else -1.0
    best = min(
        frame.persons,
        key=lambda p: (
            sign * detection_anchor(p, visibility).y,
            detection_anchor(p, visibility).x,
            p.detection_id,
        ),
    )
    return best.detection_id


def association_costs(
    tracks: list[Track],
    detections: list[PersonDetection],
    now: float,
    params: TrackerParams,
) -> np.ndarray:
    """Cost matrix, tracks x detections, in [0, 1] before tie-break bias."""
    anchors = [detection_anchor(d, params.visibility) for d in detections]
    cost = np.zeros((len(tracks), len(detections)))
    for i, track in enumerate(tracks):
        pred = track.predicted_anchor(now)
        for j, det in enumerate(detections):
            overlap = iou(track.last_box, det.box)
            dist = pred.distance(anchors[j])
            cost[i, j] = 0.5 * (1.0 - overlap) + 0.5 * min(1.0, dist / params.gate_radius)
    # Equal costs resolve toward the lower detection id.
    ranks = np.argsort(np.argsort([d.detection_id for d in detections]))
    cost += _TIE_EPS * ranks[np.newaxis, :]
    return cost


def solve_assignment(cost: np.ndarray, max_cost: float) -> list[tuple[int, int]]:
    """Minimum-cost one-to-one matching; pairs above max_cost stay unmatched."""
    if cost.size == 0:
        return []
    work = np.where(cost > max_cost, INF_COST, cost)
    rows, cols = linear_sum_assignment(work)
    return [(int(r), int(c)) for r, c in zip(rows, cols) if cost[r, c] <= max_cost]


def _near_edge(p: Point, margin: float) -> bool:
    return p.x <= margin or p.x >= 1.0 - margin or p.y <= margin or p.y >= 1.0 - margin


class TeacherTracker:
    """Sequential per-frame tracker state machine."""

    def __init__(self, params: TrackerParams | None = None) -> None:
        self.params = params or TrackerParams()
        self.teacher: Track | None = None
        self.students: dict[int, Track] = {}
        self.student_registry: set[int] = set()
        self._next_track_id = 0
        self._gap_start: float | None = None
        self._samples: list[tuple[float, Point, Pose | None]] = []
        self._gaps: list[Interval] = []
        self._last_time = 0.0

    # -- per-frame step ----------------------------------------------------

    def step(self, frame: FrameDetections, dump: list | None = None) -> None:
        params = self.params
        now = frame.time
        self._last_time = now
        detections = list(frame.persons)

        if self.teacher is None:
            if not detections:
                return
            self._initialize(frame)
            if dump is not None:
                dump.append(self._dump_record(frame, [], []))
            return

        rows: list[Track] = []
        if self.teacher.status == "active":
            rows.append(self.teacher)
        rows.extend(self.students[k] for k in sorted(self.students))

        matches: list[tuple[int, int]] = []
        if rows and detections:
            cost = association_costs(rows, detections, now, params)
            self._mask_registry_for_teacher(rows, detections, cost)
            matches = solve_assignment(cost, params.max_cost)
        else:
            cost = np.zeros((len(rows), len(detections)))

        matched_rows = {r for r, _ in matches}
        matched_dets = {c for _, c in matches}

        for r, c in matches:
            track = rows[r]
            det = detections[c]
            anchor = detection_anchor(det, params.visibility)
            track.observe(det.box, anchor, now)
            if track.role == "teacher":
                self._samples.append((now, anchor, det.pose))
            else:
                self.student_registry.add(det.detection_id)

        teacher_row = 0 if rows and rows[0].role == "teacher" else None
        if teacher_row is not None and teacher_row not in matched_rows:
            self._check_exit(now)

        leftover = [detections[j] for j in range(len(detections)) if j not in matched_dets]
        leftover.sort(key=lambda d: d.detection_id)
        for det in leftover:
            if self.teacher.status == "exited" and self._try_reacquire(det, now):
                continue
            self._spawn_student(det, now)

        self._prune_students(now)

        if dump is not None:
            dump.append(self._dump_record(frame, rows, [
                (rows[r].track_id, detections[c].detection_id, float(cost[r, c]))
                for r, c in matches
            ]))

    # -- internals ----------------------------------------------------------

    def _initialize(self, frame: FrameDetections) -> None:
        params = self.params
        teacher_id = select_initial_teacher(frame, params.teacher_select, params.visibility)
        for det in frame.persons:
            anchor = detection_anchor(det, params.visibility)
            if det.detection_id == teacher_id:
                self.teacher = Track(
                    self._next_track_id, "teacher", det.box, anchor,
                    frame.time, params.history_size,
                )
                self._next_track_id += 1
                self._samples.append((frame.time, anchor, det.pose))
        for det in frame.persons:
            if det.detection_id != teacher_id:
                self._spawn_student(det, frame.time)

    def _spawn_student(self, det: PersonDetection, now: float) -> None:
        anchor = detection_anchor(det, self.params.visibility)
        track = Track(self._next_track_id, "student", det.box, anchor, now, self.params.history_size)
        self._next_track_id += 1
        self.students[track.track_id] = track
        self.student_registry.add(det.detection_id)

    def _mask_registry_for_teacher(
        self,
        rows: list[Track],
        detections: list[PersonDetection],
        cost: np.ndarray,
    ) -> None:
        """Refuse teacher-to-known-student matches when an alternative exists."""
        if not rows or rows[0].role != "teacher":
            return
        in_registry = [d.detection_id in self.student_registry for d in detections]
        has_alternative = any(
            not reg and cost[0, j] <= self.params.max_cost
            for j, reg in enumerate(in_registry)
        )
        if not has_alternative:
            return
        for j, reg in enumerate(in_registry):
            if reg:
                cost[0, j] = INF_COST

    def _check_exit(self, now: float) -> None:
        teacher = self.teacher
        assert teacher is not None
        unseen = now - teacher.last_seen
        if unseen >= self.params.exit_seconds and _near_edge(teacher.last_anchor, self.params.edge_margin):
            teacher.status = "exited"
            self._gap_start = teacher.last_seen

    def _try_reacquire(self, det: PersonDetection, now: float) -> bool:
        if det.detection_id in self.student_registry:
            return False
        anchor = detection_anchor(det, self.params.visibility)
        if not _near_edge(anchor, self.params.edge_margin):
            return False
        teacher = self.teacher
        assert teacher is not None
        teacher.status = "active"
        teacher.history.clear()
        teacher.observe(det.box, anchor, now)
        if self._gap_start is not None:
            self._gaps.append(Interval(self._gap_start, now))
            self._gap_start = None
        self._samples.append((now, anchor, det.pose))
        return True

    def _prune_students(self, now: float) -> None:
        stale = [
            tid for tid, track in self.students.items()
            if now - track.last_seen > self.params.stale_seconds
        ]
        for tid in stale:
            del self.students[tid]

    def _dump_record(self, frame: FrameDetections, rows: list[Track], matches: list) -> dict:
        return {
            "frame": frame.frame_index,
            "teacher_status": self.teacher.status if self.teacher else "unselected",
            "matches": [{"track": t, "det": d, "cost": c} for t, d, c in matches],
            "students": sorted(self.student_registry),
        }

    # -- results -------------------------------------------------------------

    def finalize(self) -> TeacherTrack:
        if self.teacher is None:
            raise ValueError("teacher never detected")
        gaps = list(self._gaps)
        if self._gap_start is not None:
            gaps.append(Interval(self._gap_start, self._last_time))
        times = np.asarray([t for t, _, _ in self._samples])
        points = np.asarray([[p.x, p.y] for _, p, _ in self._samples]).reshape(-1, 2)
        poses = tuple(pose for _, _, pose in self._samples)
        return TeacherTrack(self.teacher.track_id, times, points, poses, tuple(gaps))


def build_teacher_track(
    frames: list[FrameDetections],
    params: TrackerParams | None = None,
    dump_path: Path | str | None = None,
) -> tuple[TeacherTrack, set[int]]:
    """Run the tracker over a whole detection stream.

    Returns the teacher track and the student detection-id registry.
    Deterministic: identical frames and params give identical output.
    """
    tracker = TeacherTracker(params)
    dump: list | None = [] if dump_path is not None else None
    for frame in frames:
        tracker.step(frame, dump)
    track = tracker.finalize()
    if dump_path is not None and dump is not None:
        with Path(dump_path).open("w", encoding="utf-8") as fh:
            for record in dump:
                fh.write(json.dumps(record, sort_keys=True) + "\n")
    return track, set(tracker.student_registry)
