"""Shared domain types: time intervals, normalized image geometry, poses.

Conventions used by every other module:

* Time is real-valued seconds from session start; frame indices are
  converted at ingest with the stream's declared fps.
* Image coordinates are normalized to the unit square, x growing
  left-to-right and y growing top-to-bottom (image convention).
* A person's position is their *foot anchor*: the midpoint of the usable
  ankle joints, falling back to the bottom-center of the detection box.
  No other anchor convention exists downstream.

All types here are immutable values and safe to share between tasks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# COCO-style joint order used by pose streams.
JOINT_NAMES = (
    "nose",
    "left_eye", "right_eye",
    "left_ear", "right_ear",
    "left_shoulder", "right_shoulder",
    "left_elbow", "right_elbow",
    "left_wrist", "right_wrist",
    "left_hip", "right_hip",
    "left_knee", "right_knee",
    "left_ankle", "right_ankle",
)
N_JOINTS = len(JOINT_NAMES)

NOSE = 0
LEFT_SHOULDER, RIGHT_SHOULDER = 5, 6
LEFT_ELBOW, RIGHT_ELBOW = 7, 8
LEFT_WRIST, RIGHT_WRIST = 9, 10
LEFT_HIP, RIGHT_HIP = 11, 12
LEFT_ANKLE, RIGHT_ANKLE = 15, 16

# Joints with confidence below this are unusable by default.
DEFAULT_VISIBILITY = 0.3


@dataclass(frozen=True)
class Point:
    """A normalized image point; both coordinates must lie in [0, 1]."""

    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("point coordinates must be finite")
        if not (0.0 <= self.x <= 1.0 and 0.0 <= self.y <= 1.0):
            raise ValueError(f"point outside unit square: ({self.x}, {self.y})")

    def distance(self, other: "Point") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)


@dataclass(frozen=True)
class Interval:
    """A closed time interval [start, end] in seconds, start <= end."""

    start: float
    end: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.start) and math.isfinite(self.end)):
            raise ValueError("interval bounds must be finite")
        if self.start < 0.0:
            raise ValueError(f"interval starts before zero: {self.start}")
        if self.end < self.start:
            raise ValueError(f"interval ends before it starts: [{self.start}, {self.end}]")

    @property
    def duration(self) -> float:
        return self.end - self.start

    def intersect(self, other: "Interval") -> "Interval | None":
        """Overlap of two intervals, or None when disjoint.

        Touching endpoints produce a zero-length interval, not None.
        """
        lo = max(self.start, other.start)
        hi = min(self.end, other.end)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def overlaps(self, other: "Interval") -> bool:
        return self.intersect(other) is not None

    def contains(self, t: float) -> bool:
        return self.start <= t <= self.end


@dataclass(frozen=True)
class Box:
    """An axis-aligned detection box: normalized center plus extent.

    Width and height are in (0, 1]; the box extent is clipped to the unit
    square wherever it is used, so the effective area is always positive.
    """

    center: Point
    width: float
    height: float

    def __post_init__(self) -> None:
        if not (0.0 < self.width <= 1.0 and 0.0 < self.height <= 1.0):
            raise ValueError(f"box extent out of (0, 1]: {self.width} x {self.height}")

    def corners(self) -> tuple[float, float, float, float]:
        """(x0, y0, x1, y1) clipped to the unit square."""
        x0 = max(0.0, self.center.x - self.width / 2.0)
        y0 = max(0.0, self.center.y - self.height / 2.0)
        x1 = min(1.0, self.center.x + self.width / 2.0)
        y1 = min(1.0, self.center.y + self.height / 2.0)
        return x0, y0, x1, y1

    def area(self) -> float:
        x0, y0, x1, y1 = self.corners()
        return (x1 - x0) * (y1 - y0)

    def bottom_center(self) -> Point:
        _, _, _, y1 = self.corners()
        return Point(self.center.x, y1)


def iou(a: Box, b: Box) -> float:
    """Intersection-over-union of two clipped boxes, in [0, 1]."""
    ax0, ay0, ax1, ay1 = a.corners()
    bx0, by0, bx1, by1 = b.corners()
    iw = min(ax1, bx1) - max(ax0, bx0)
    ih = min(ay1, by1) - max(ay0, by0)
    if iw <= 0.0 or ih <= 0.0:
        return 0.0
    inter = iw * ih
    union = a.area() + b.area() - inter
    if union <= 0.0:
        return 0.0
    return inter / union


class Pose:
    """Skeleton keypoints for one person: 17 joints as (x, y, confidence).

    Stored as a float array of shape (17, 3). Joints whose confidence is
    below the visibility threshold are unusable. Treat instances as
    immutable; nothing in this package mutates them after construction.
    """

    __slots__ = ("points",)

    def __init__(self, points: np.ndarray) -> None:
        pts = np.asarray(points, dtype=float)
        if pts.shape != (N_JOINTS, 3):
            raise ValueError(f"pose must be ({N_JOINTS}, 3), got {pts.shape}")
        if not np.all(np.isfinite(pts)):
            raise ValueError("pose contains non-finite values")
        if np.any(pts[:, 2] < 0.0) or np.any(pts[:, 2] > 1.0):
            raise ValueError("joint confidence outside [0, 1]")
        self.points = pts

    def usable(self, joint: int, visibility: float = DEFAULT_VISIBILITY) -> bool:
        return bool(self.points[joint, 2] >= visibility)

    def joint(self, joint: int) -> Point:
        x, y = self.points[joint, 0], self.points[joint, 1]
        return Point(min(1.0, max(0.0, x)), min(1.0, max(0.0, y)))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Pose) and np.array_equal(self.points, other.points)

    def __repr__(self) -> str:
        vis = int(np.sum(self.points[:, 2] >= DEFAULT_VISIBILITY))
        return f"Pose({vis}/{N_JOINTS} visible)"


def foot_anchor(
    pose: Pose | None,
    box: Box | None,
    visibility: float = DEFAULT_VISIBILITY,
) -> Point:
    """Ground-contact point of a detected person.

    Midpoint of the usable ankle joints; a single usable ankle is used
    as-is. When both ankles are unusable (or there is no pose) the
    bottom-center of the box is the fallback. The result always lies in
    the unit square.
    """
    if pose is not None:
        ankles = [j for j in (LEFT_ANKLE, RIGHT_ANKLE) if pose.usable(j, visibility)]
        if ankles:
            pts = [pose.joint(j) for j in ankles]
            x = sum(p.x for p in pts) / len(pts)
            y = sum(p.y for p in pts) / len(pts)
            return Point(x, y)
    if box is not None:
        return box.bottom_center()
    raise ValueError("no usable pose ankles and no box to anchor")
