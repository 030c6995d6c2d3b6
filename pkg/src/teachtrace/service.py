"""Read-only HTTP service over analyzed session directories.

Serves the session index, per-session summary and timeline slices, and
the raw media file with single-range support, plus optional static
dashboard assets. Analysis happens offline in the CLI; the only state
transition here is an explicit reload that rescans the data directory.
Summary bytes are passed through exactly as they sit on disk so clients
and golden files always agree.
"""

from __future__ import annotations

import json
import mimetypes
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .actions import EventTimeline, timeline_from_dict

_RANGE_RE = re.compile(r"bytes=(\d*)-(\d*)")


class SessionIndexEntry(BaseModel):
    session_id: str
    duration: float
    analyzed: bool
    analyzed_at: float | None
    media_available: bool


class TimelineSlice(BaseModel):
    session_id: str
    from_time: float
    to_time: float
    windows: list[dict]
    track: list[list[float]]
    events: list[dict]


@dataclass
class SessionEntry:
    session_id: str
    root: Path
    duration: float
    media_path: Path | None
    summary_path: Path | None
    analyzed: bool
    analyzed_at: float | None
    timeline: EventTimeline | None
    fine_windows: list[dict] = field(default_factory=list)
    track_samples: list[list[float]] = field(default_factory=list)


class SessionStore:
    """In-memory index of analyzed sessions, rebuilt only on scan."""

    def __init__(self, data_dir: Path) -> None:
        self.data_dir = data_dir
        self._lock = threading.Lock()
        self.sessions: dict[str, SessionEntry] = {}

    def scan(self) -> None:
        with self._lock:
            found: dict[str, SessionEntry] = {}
            if self.data_dir.is_dir():
                for manifest_path in sorted(self.data_dir.glob("*/session.json")):
                    entry = self._load_entry(manifest_path)
                    if entry is not None:
                        found[entry.session_id] = entry
            self.sessions = found

    @staticmethod
    def _load_entry(manifest_path: Path) -> SessionEntry | None:
        root = manifest_path.parent
        try:
            doc = json.loads(manifest_path.read_text(encoding="utf-8"))
            session_id = doc["session_id"]
            duration = float(doc["duration"])
        except (OSError, ValueError, KeyError):
            return None
        media = doc.get("media")
        media_path = root / media if media else None
        if media_path is not None and not media_path.exists():
            media_path = None

        summary_path = root / "analysis" / "summary.json"
        timeline_path = root / "analysis" / "timeline.json"
        analyzed = False
        analyzed_at = None
        timeline = None
        fine: list[dict] = []
        track: list[list[float]] = []
        try:
            summary = json.loads(summary_path.read_text(encoding="utf-8"))
            timeline = timeline_from_dict(json.loads(timeline_path.read_text(encoding="utf-8")))
            fine = summary["windows"]["fine"]
            track = summary["track"]["samples"]
            analyzed = True
            analyzed_at = summary_path.stat().st_mtime
        except (OSError, ValueError, KeyError):
            analyzed = False
            timeline = None
            fine = []
            track = []
        return SessionEntry(
            session_id=session_id,
            root=root,
            duration=duration,
            media_path=media_path,
            summary_path=summary_path if analyzed else None,
            analyzed=analyzed,
            analyzed_at=analyzed_at,
            timeline=timeline,
            fine_windows=fine,
            track_samples=track,
        )


def _error(status: int, message: str, **headers: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message}, headers=headers or None)


def create_app(data_dir: Path | str, static_dir: Path | str | None = None) -> FastAPI:
    """Build the service around one data directory."""
    store = SessionStore(Path(data_dir))
    store.scan()

    app = FastAPI(title="session review service", docs_url=None, redoc_url=None)
    app.state.store = store

    @app.get("/api/sessions")
    def get_sessions() -> list[SessionIndexEntry]:
        return [
            SessionIndexEntry(
                session_id=e.session_id,
                duration=e.duration,
                analyzed=e.analyzed,
                analyzed_at=e.analyzed_at,
                media_available=e.media_path is not None,
            )
            for _, e in sorted(store.sessions.items())
        ]

    @app.get("/api/sessions/{session_id}/summary")
    def get_summary(session_id: str) -> Response:
        entry = store.sessions.get(session_id)
        if entry is None:
            return _error(404, f"unknown session '{session_id}'")
        if not entry.analyzed or entry.summary_path is None:
            return _error(404, f"session '{session_id}' is not analyzed")
        return Response(entry.summary_path.read_bytes(), media_type="application/json")

    @app.get("/api/sessions/{session_id}/timeline")
    def get_timeline(session_id: str, request: Request) -> Response:
        entry = store.sessions.get(session_id)
        if entry is None:
            return _error(404, f"unknown session '{session_id}'")
        if not entry.analyzed or entry.timeline is None:
            return _error(404, f"session '{session_id}' is not analyzed")
        try:
            from_time = float(request.query_params.get("from", 0.0))
            to_time = float(request.query_params.get("to", entry.duration))
        except ValueError:
            return _error(400, "from/to must be numbers")
        if from_time < 0 or not from_time < to_time:
            return _error(400, f"need 0 <= from < to, got from={from_time} to={to_time}")
        to_time = min(to_time, entry.duration)
        if not from_time < to_time:
            return _error(400, f"window starts past the session end ({entry.duration})")

        windows = [
            w for w in entry.fine_windows
            if w["start"] < to_time and w["end"] > from_time
        ]
        track = [s for s in entry.track_samples if from_time <= s[0] <= to_time]
        events = [
            e for e in (entry.timeline.events if entry.timeline else [])
            if e.interval.start <= to_time and e.interval.end >= from_time
        ]
        payload = TimelineSlice(
            session_id=session_id,
            from_time=from_time,
            to_time=to_time,
            windows=windows,
            track=track,
            events=[
                {
                    "kind": e.kind,
                    "start": e.interval.start,
                    "end": e.interval.end,
                    "confidence": e.confidence,
                    "source": e.source,
                }
                for e in events
            ],
        )
        return JSONResponse(payload.model_dump())

    @app.get("/api/sessions/{session_id}/media")
    def get_media(session_id: str, request: Request) -> Response:
        entry = store.sessions.get(session_id)
        if entry is None:
            return _error(404, f"unknown session '{session_id}'")
        if entry.media_path is None:
            return _error(404, f"session '{session_id}' has no media")
        return _serve_media(entry.media_path, request.headers.get("range"))

    @app.post("/api/reload")
    def reload() -> dict:
        store.scan()
        return {"sessions": len(store.sessions)}

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="static")

    return app


def _serve_media(path: Path, range_header: str | None) -> Response:
    size = path.stat().st_size
    media_type = mimetypes.guess_type(path.name)[0] or "application/octet-stream"
    base_headers = {"Accept-Ranges": "bytes"}

    if range_header is None:
        return Response(path.read_bytes(), media_type=media_type, headers=base_headers)

    m = _RANGE_RE.fullmatch(range_header.strip())
    unsatisfiable = _error(416, "unsatisfiable range", **{
        "Content-Range": f"bytes */{size}", "Accept-Ranges": "bytes",
    })
    if m is None:
        # covers malformed headers and multipart ranges alike
        return unsatisfiable
    start_s, end_s = m.groups()
    if start_s == "" and end_s == "":
        return unsatisfiable
    if start_s == "":
        # suffix form: last N bytes
        n = int(end_s)
        if n == 0 or size == 0:
            return unsatisfiable
        start = max(0, size - n)
        end = size - 1
    else:
        start = int(start_s)
        if start >= size:
            return unsatisfiable
        end = int(end_s) if end_s else size - 1
        if end < start:
            return unsatisfiable
        end = min(end, size - 1)

    with path.open("rb") as fh:
        fh.seek(start)
        chunk = fh.read(end - start + 1)
    headers = {
        "Accept-Ranges": "bytes",
        "Content-Range": f"bytes {start}-{end}/{size}",
    }
    return Response(chunk, status_code=206, media_type=media_type, headers=headers)
