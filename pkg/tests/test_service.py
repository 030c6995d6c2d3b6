import hashlib
import json

import pytest
from fastapi.testclient import TestClient

from teachtrace import synth
from teachtrace.pipeline import analyze_session
from teachtrace.service import create_app


@pytest.fixture(scope="module")
def data_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("data")
    synth.generate("lecture_audio", root / "lecture_audio", seed=3)
    analyze_session(root / "lecture_audio" / "session.json")
    synth.generate("stationary", root / "stationary", seed=3)  # left unanalyzed
    return root


@pytest.fixture(scope="module")
def client(data_dir):
    return TestClient(create_app(data_dir))


def dir_fingerprint(root):
    out = []
    for path in sorted(root.rglob("*")):
        if path.is_file():
            out.append((str(path.relative_to(root)), hashlib.sha256(path.read_bytes()).hexdigest()))
    return out


class TestIndex:
    def test_lists_sessions_sorted(self, client):
        resp = client.get("/api/sessions")
        assert resp.status_code == 200
        body = resp.json()
        assert [e["session_id"] for e in body] == ["lecture_audio", "stationary"]

    def test_analyzed_flags(self, client):
        body = {e["session_id"]: e for e in client.get("/api/sessions").json()}
        assert body["lecture_audio"]["analyzed"] is True
        assert body["lecture_audio"]["analyzed_at"] is not None
        assert body["stationary"]["analyzed"] is False
        assert body["stationary"]["analyzed_at"] is None
        assert body["lecture_audio"]["media_available"] is True


class TestSummary:
    def test_bytes_passthrough(self, client, data_dir):
        resp = client.get("/api/sessions/lecture_audio/summary")
        assert resp.status_code == 200
        on_disk = (data_dir / "lecture_audio" / "analysis" / "summary.json").read_bytes()
        assert resp.content == on_disk

    def test_unanalyzed_404(self, client):
        resp = client.get("/api/sessions/stationary/summary")
        assert resp.status_code == 404
        assert "not analyzed" in resp.json()["error"]

    def test_unknown_session_404(self, client):
        assert client.get("/api/sessions/ghost/summary").status_code == 404


class TestTimeline:
    def load_artifacts(self, data_dir):
        analysis = data_dir / "lecture_audio" / "analysis"
        summary = json.loads((analysis / "summary.json").read_text())
        timeline = json.loads((analysis / "timeline.json").read_text())
        return summary, timeline

    def test_default_span_is_whole_session(self, client, data_dir):
        summary, timeline = self.load_artifacts(data_dir)
        body = client.get("/api/sessions/lecture_audio/timeline").json()
        assert body["from_time"] == 0.0
        assert body["to_time"] == summary["duration"]
        assert len(body["windows"]) == len(summary["windows"]["fine"])
        assert len(body["track"]) == len(summary["track"]["samples"])
        assert len(body["events"]) == len(timeline["events"])

    def test_slice_matches_interval_filters(self, client, data_dir):
        summary, timeline = self.load_artifacts(data_dir)
        lo, hi = 20.0, 55.0
        body = client.get(f"/api/sessions/lecture_audio/timeline?from={lo}&to={hi}").json()

        want_windows = [
            w for w in summary["windows"]["fine"]
            if w["start"] < hi and w["end"] > lo
        ]
        want_track = [s for s in summary["track"]["samples"] if lo <= s[0] <= hi]
        want_events = [
            e for e in timeline["events"]
            if e["start"] <= hi and e["end"] >= lo
        ]
        assert body["windows"] == want_windows
        assert [tuple(s) for s in body["track"]] == [tuple(s) for s in want_track]
        assert body["events"] == want_events

    def test_to_clamped_to_duration(self, client, data_dir):
        summary, _ = self.load_artifacts(data_dir)
        body = client.get("/api/sessions/lecture_audio/timeline?from=0&to=100000").json()
        assert body["to_time"] == summary["duration"]

    def test_bad_params_400(self, client):
        base = "/api/sessions/lecture_audio/timeline"
        assert client.get(f"{base}?from=-1").status_code == 400
        assert client.get(f"{base}?from=10&to=10").status_code == 400
        assert client.get(f"{base}?from=10&to=5").status_code == 400
        assert client.get(f"{base}?from=abc").status_code == 400

    def test_from_past_end_400(self, client):
        resp = client.get("/api/sessions/lecture_audio/timeline?from=200&to=300")
        assert resp.status_code == 400

    def test_unanalyzed_404(self, client):
        assert client.get("/api/sessions/stationary/timeline").status_code == 404


class TestMedia:
    def media_bytes(self, data_dir):
        return (data_dir / "lecture_audio" / "media.mp4").read_bytes()

    def test_full_body(self, client, data_dir):
        resp = client.get("/api/sessions/lecture_audio/media")
        assert resp.status_code == 200
        assert resp.headers["accept-ranges"] == "bytes"
        assert resp.content == self.media_bytes(data_dir)

    def test_bounded_range(self, client, data_dir):
        blob = self.media_bytes(data_dir)
        resp = client.get("/api/sessions/lecture_audio/media", headers={"Range": "bytes=0-99"})
        assert resp.status_code == 206
        assert resp.content == blob[:100]
        assert resp.headers["content-range"] == f"bytes 0-99/{len(blob)}"

    def test_open_range(self, client, data_dir):
        blob = self.media_bytes(data_dir)
        resp = client.get("/api/sessions/lecture_audio/media", headers={"Range": "bytes=100-"})
        assert resp.status_code == 206
        assert resp.content == blob[100:]
        assert resp.headers["content-range"] == f"bytes 100-{len(blob) - 1}/{len(blob)}"

    def test_suffix_range(self, client, data_dir):
        blob = self.media_bytes(data_dir)
        resp = client.get("/api/sessions/lecture_audio/media", headers={"Range": "bytes=-50"})
        assert resp.status_code == 206
        assert resp.content == blob[-50:]

    def test_end_clamped(self, client, data_dir):
        blob = self.media_bytes(data_dir)
        resp = client.get(
            "/api/sessions/lecture_audio/media",
            headers={"Range": f"bytes=10-{len(blob) * 2}"},
        )
        assert resp.status_code == 206
        assert resp.content == blob[10:]

    def test_start_past_end_416(self, client, data_dir):
        blob = self.media_bytes(data_dir)
        resp = client.get(
            "/api/sessions/lecture_audio/media",
            headers={"Range": f"bytes={len(blob)}-"},
        )
        assert resp.status_code == 416
        assert resp.headers["content-range"] == f"bytes */{len(blob)}"

    def test_malformed_and_multipart_416(self, client):
        for header in ("bytes=abc", "bytes=0-1,5-9", "bytes=-", "octets=0-5", "bytes=-0"):
            resp = client.get(
                "/api/sessions/lecture_audio/media", headers={"Range": header},
            )
            assert resp.status_code == 416, header

    def test_inverted_range_416(self, client):
        resp = client.get("/api/sessions/lecture_audio/media", headers={"Range": "bytes=50-10"})
        assert resp.status_code == 416

    def test_no_media_404(self, client, data_dir):
        # stationary session has media; drop it from a copy via manifest edit
        resp = client.get("/api/sessions/ghost/media")
        assert resp.status_code == 404


class TestReloadAndSafety:
    def test_requests_leave_data_untouched(self, data_dir):
        client = TestClient(create_app(data_dir))
        before = dir_fingerprint(data_dir)
        client.get("/api/sessions")
        client.get("/api/sessions/lecture_audio/summary")
        client.get("/api/sessions/lecture_audio/timeline?from=5&to=50")
        client.get("/api/sessions/lecture_audio/media", headers={"Range": "bytes=0-99"})
        client.post("/api/reload")
        assert dir_fingerprint(data_dir) == before

    def test_reload_picks_up_new_session(self, tmp_path):
        synth.generate("stationary", tmp_path / "stationary", seed=1)
        client = TestClient(create_app(tmp_path))
        assert len(client.get("/api/sessions").json()) == 1
        synth.generate("crossing", tmp_path / "crossing", seed=1)
        assert len(client.get("/api/sessions").json()) == 1
        assert client.post("/api/reload").json() == {"sessions": 2}
        ids = [e["session_id"] for e in client.get("/api/sessions").json()]
        assert ids == ["crossing", "stationary"]

    def test_corrupt_summary_reads_as_unanalyzed(self, tmp_path):
        synth.generate("stationary", tmp_path / "stationary", seed=1)
        analyze_session(tmp_path / "stationary" / "session.json")
        (tmp_path / "stationary" / "analysis" / "summary.json").write_text("{broken")
        client = TestClient(create_app(tmp_path))
        entry = client.get("/api/sessions").json()[0]
        assert entry["analyzed"] is False
        assert client.get("/api/sessions/stationary/summary").status_code == 404

    def test_missing_media_file_flagged_unavailable(self, tmp_path):
        synth.generate("stationary", tmp_path / "stationary", seed=1)
        (tmp_path / "stationary" / "media.mp4").unlink()
        client = TestClient(create_app(tmp_path))
        entry = client.get("/api/sessions").json()[0]
        assert entry["media_available"] is False
        assert client.get("/api/sessions/stationary/media").status_code == 404


class TestStaticMount:
    def test_serves_dashboard_assets(self, data_dir, tmp_path):
        static = tmp_path / "static"
        static.mkdir()
        (static / "index.html").write_text("<h1>review</h1>")
        client = TestClient(create_app(data_dir, static))
        resp = client.get("/")
        assert resp.status_code == 200
        assert "review" in resp.text
        # api routes still win over the mount
        assert client.get("/api/sessions").status_code == 200
