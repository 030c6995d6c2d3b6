import csv
import json

import pytest

from teachtrace import synth
from teachtrace.cli import main
from teachtrace.config import (
    AnalysisConfig,
    ConfigError,
    apply_overrides,
    load_config,
    parse_set_flags,
)
from teachtrace.pipeline import analyze_session


@pytest.fixture(scope="module")
def stationary_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("sessions") / "stationary"
    synth.generate("stationary", d, seed=3)
    return d


@pytest.fixture(scope="module")
def lecture_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("sessions") / "lecture"
    synth.generate("lecture_audio", d, seed=3)
    return d


class TestConfig:
    def test_defaults(self):
        config = load_config()
        assert config.heatmap_rows == 12
        assert config.vad.threshold_db == 9.0

    def test_set_flags_parse(self):
        overrides = parse_set_flags(["vad.threshold_db=12", "heatmap_rows=6"])
        assert overrides == {"vad": {"threshold_db": 12}, "heatmap_rows": 6}

    def test_set_flag_needs_equals(self):
        with pytest.raises(ConfigError, match="section.key=value"):
            parse_set_flags(["vad.threshold_db"])

    def test_set_flag_path_depth(self):
        with pytest.raises(ConfigError, match="too deep"):
            parse_set_flags(["a.b.c=1"])

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError):
            apply_overrides(AnalysisConfig(), {"sonar": {"ping": 1}})

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            apply_overrides(AnalysisConfig(), {"vad": {"pings": 1}})

    def test_file_then_flags_precedence(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"heatmap_rows": 4, "heatmap_cols": 7}))
        config = load_config(cfg, None, ["heatmap_rows=9"])
        assert config.heatmap_rows == 9
        assert config.heatmap_cols == 7

    def test_missing_config_file(self, tmp_path):
        with pytest.raises(ConfigError, match="not found"):
            load_config(tmp_path / "nope.json")

    def test_invalid_config_json(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text("{broken")
        with pytest.raises(ConfigError, match="invalid JSON"):
            load_config(cfg)


class TestAnalyzeCommand:
    def test_artifacts_written(self, lecture_dir, capsys):
        assert main(["analyze", str(lecture_dir)]) == 0
        out = capsys.readouterr().out
        for name in ("summary", "timeline", "windows"):
            assert f"{name}: " in out
        analysis = lecture_dir / "analysis"
        assert (analysis / "summary.json").exists()
        assert (analysis / "timeline.json").exists()
        assert (analysis / "windows.csv").exists()

    def test_missing_manifest_exits_2(self, tmp_path, capsys):
        assert main(["analyze", str(tmp_path)]) == 2
        assert "session.json" in capsys.readouterr().err

    def test_broken_manifest_exits_3(self, tmp_path, capsys):
        (tmp_path / "session.json").write_text("{not json")
        assert main(["analyze", str(tmp_path)]) == 3

    def test_bad_override_exits_3(self, stationary_dir, capsys):
        assert main(["analyze", str(stationary_dir), "--set", "vad.pings=1"]) == 3

    def test_no_detections_stream_exits_4(self, tmp_path, capsys):
        doc = {"session_id": "x", "fps": 10.0, "duration": 5.0, "streams": {}}
        (tmp_path / "session.json").write_text(json.dumps(doc))
        assert main(["analyze", str(tmp_path)]) == 4
        assert "detections" in capsys.readouterr().err

    def test_custom_out_dir(self, stationary_dir, tmp_path, capsys):
        out = tmp_path / "artifacts"
        assert main(["analyze", str(stationary_dir), "--out", str(out)]) == 0
        assert (out / "summary.json").exists()

    def test_dump_tracking_flag(self, stationary_dir, tmp_path, capsys):
        out = tmp_path / "dumped"
        code = main(["analyze", str(stationary_dir), "--out", str(out), "--dump-tracking"])
        assert code == 0
        dump = out / "tracking_dump.jsonl"
        assert dump.exists()
        first = json.loads(dump.read_text().splitlines()[0])
        assert "frame" in first

    def test_rerun_is_byte_identical(self, lecture_dir, tmp_path, capsys):
        a = tmp_path / "a"
        b = tmp_path / "b"
        assert main(["analyze", str(lecture_dir), "--out", str(a)]) == 0
        assert main(["analyze", str(lecture_dir), "--out", str(b)]) == 0
        for name in ("summary.json", "timeline.json", "windows.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes(), name

    def test_set_override_changes_output(self, stationary_dir, tmp_path, capsys):
        out = tmp_path / "small"
        code = main([
            "analyze", str(stationary_dir), "--out", str(out),
            "--set", "heatmap_rows=6", "--set", "heatmap_cols=8",
        ])
        assert code == 0
        summary = json.loads((out / "summary.json").read_text())
        assert summary["heatmap"]["rows"] == 6
        assert summary["heatmap"]["cols"] == 8
        assert summary["provenance"]["config"]["heatmap_rows"] == 6


class TestWindowsCsv:
    def test_header_and_blank_cells(self, stationary_dir, tmp_path, capsys):
        # 5 s fine windows leave [15, 20] with no speech at all
        out = tmp_path / "csvtest"
        code = main([
            "analyze", str(stationary_dir), "--out", str(out),
            "--set", "windows.fine_seconds=5",
        ])
        assert code == 0
        with open(out / "windows.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert rows[0]["start"] == "0.0"
        assert {"start", "end", "level", "partial", "cpp_db", "speaking_rate_wpm"} <= set(rows[0])
        silent = rows[-1]
        assert float(silent["start"]) == 15.0
        assert silent["pitch_mean_semitones"] == ""
        assert silent["cpp_db"] == ""
        assert silent["speech_fraction"] == "0.0"


class TestSynthCommand:
    def test_generates_session(self, tmp_path, capsys):
        out = tmp_path / "gen"
        assert main(["synth", "stationary", "--out", str(out), "--seed", "2"]) == 0
        assert "manifest: " in capsys.readouterr().out
        assert (out / "session.json").exists()

    def test_unknown_scenario_rejected_by_parser(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["synth", "webinar", "--out", str(tmp_path)])
        assert exc.value.code == 2


class TestValidateCommand:
    def test_clean_session(self, lecture_dir, capsys):
        assert main(["validate", str(lecture_dir)]) == 0
        assert "clean" in capsys.readouterr().out

    def test_missing_manifest(self, tmp_path, capsys):
        assert main(["validate", str(tmp_path)]) == 1

    def test_unloadable_manifest_prints_fail(self, tmp_path, capsys):
        (tmp_path / "session.json").write_text(json.dumps({"session_id": "x"}))
        assert main(["validate", str(tmp_path)]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_corrupt_stream_counts_violations(self, tmp_path, capsys):
        synth.generate("stationary", tmp_path, seed=1)
        with open(tmp_path / "detections.jsonl", "a") as fh:
            fh.write('{"frame": 0, "persons": []}\n')
        assert main(["validate", str(tmp_path)]) == 1
        out = capsys.readouterr().out
        assert "FAIL" in out
        assert "1 violation(s)" in out

    def test_shared_zone_edge_warns_but_passes(self, tmp_path, capsys):
        synth.generate("stationary", tmp_path, seed=1)
        doc = json.loads((tmp_path / "session.json").read_text())
        doc["zones"] = {
            "board": [[0.0, 0.0], [1.0, 0.0], [1.0, 0.5], [0.0, 0.5]],
            "students": [[0.0, 0.5], [1.0, 0.5], [1.0, 1.0], [0.0, 1.0]],
        }
        (tmp_path / "session.json").write_text(json.dumps(doc))
        assert main(["validate", str(tmp_path)]) == 0
        out = capsys.readouterr().out
        assert "WARN" in out and "share an edge" in out


class TestServeCommand:
    def test_requires_data_dir(self, capsys, monkeypatch):
        monkeypatch.delenv("CI_DATA", raising=False)
        assert main(["serve"]) == 2
        assert "--data" in capsys.readouterr().err


class TestAnalyzeSessionApi:
    def test_returns_artifact_paths(self, stationary_dir, tmp_path):
        paths = analyze_session(stationary_dir / "session.json", out_dir=tmp_path / "api")
        assert set(paths) == {"summary", "timeline", "windows"}
        for p in paths.values():
            assert p.exists()

    def test_summary_track_matches_detections(self, stationary_dir, tmp_path):
        paths = analyze_session(stationary_dir / "session.json", out_dir=tmp_path / "api2")
        summary = json.loads(paths["summary"].read_text())
        gt = json.loads((stationary_dir / "ground_truth.json").read_text())
        ax, ay = gt["anchor"]
        xs = [x for _, x, _ in summary["track"]["samples"]]
        ys = [y for _, _, y in summary["track"]["samples"]]
        assert max(abs(x - ax) for x in xs) < 0.05
        assert max(abs(y - ay) for y in ys) < 0.05
