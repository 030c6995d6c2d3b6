"""Classroom session analytics.

Turns multimodal classroom recordings (person detections, audio, optional
screen luma and manual annotations) into a teacher movement track, an
action-event timeline, vocal-dynamics metrics with style scores, spatial
occupancy summaries, and a small read-only review service.
"""

__version__ = "0.1.0"
