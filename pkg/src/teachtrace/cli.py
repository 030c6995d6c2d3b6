"""Command-line entry points.

    teachtrace analyze  <session_dir>   run the full pipeline, write artifacts
    teachtrace synth    <scenario>      generate a synthetic session
    teachtrace validate <session_dir>   lint inputs without analyzing
    teachtrace serve                    start the review service

Exit codes for analyze: 0 success, 2 missing manifest, 3 input parse
error, 4 pipeline failure. validate exits 1 when it finds violations.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .config import ConfigError, load_config
from .ingest import (
    IngestError,
    ManifestError,
    load_manifest,
    parse_annotation_file,
    parse_detection_stream,
    parse_luma_series,
)
from .pipeline import PipelineError, analyze_session
from .synth import SCENARIOS, generate


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    return args.handler(args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="teachtrace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze a session directory")
    analyze.add_argument("session_dir", type=Path)
    analyze.add_argument("--config", type=Path, default=None, help="JSON config file")
    analyze.add_argument("--set", dest="overrides", action="append", default=[],
                         metavar="SECTION.KEY=VALUE", help="override one config value")
    analyze.add_argument("--out", type=Path, default=None, help="artifact directory")
    analyze.add_argument("--dump-tracking", action="store_true",
                         help="write per-frame assignment dump")
    analyze.set_defaults(handler=_run_analyze)

    synth = sub.add_parser("synth", help="generate a synthetic session")
    synth.add_argument("scenario", choices=SCENARIOS)
    synth.add_argument("--out", type=Path, required=True)
    synth.add_argument("--seed", type=int, default=0)
    synth.set_defaults(handler=_run_synth)

    validate = sub.add_parser("validate", help="lint session inputs")
    validate.add_argument("session_dir", type=Path)
    validate.set_defaults(handler=_run_validate)

    serve = sub.add_parser("serve", help="start the review service")
    serve.add_argument("--data", type=Path, default=_env_path("CI_DATA"),
                       help="directory of session directories")
    serve.add_argument("--port", type=int, default=int(os.environ.get("CI_PORT", "8765")))
    serve.add_argument("--host", default=os.environ.get("CI_HOST", "127.0.0.1"))
    serve.add_argument("--static", type=Path, default=_env_path("CI_STATIC"),
                       help="static dashboard assets to serve at /")
    serve.set_defaults(handler=_run_serve)

    return parser


def _env_path(name: str) -> Path | None:
    value = os.environ.get(name)
    return Path(value) if value else None


def _run_analyze(args: argparse.Namespace) -> int:
    manifest_path = args.session_dir / "session.json"
    if not manifest_path.exists():
        print(f"error: no session.json in {args.session_dir}", file=sys.stderr)
        return 2
    try:
        manifest = load_manifest(manifest_path)
        config = load_config(args.config, manifest.config_overrides, args.overrides)
    except (ManifestError, IngestError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    try:
        paths = analyze_session(
            manifest_path, config, out_dir=args.out, dump_tracking=args.dump_tracking,
        )
    except (ManifestError, IngestError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (PipelineError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    for name, path in paths.items():
        print(f"{name}: {path}")
    return 0


def _run_synth(args: argparse.Namespace) -> int:
    manifest = generate(args.scenario, args.out, args.seed)
    print(f"manifest: {manifest}")
    return 0


def _run_validate(args: argparse.Namespace) -> int:
    findings: list[str] = []
    warnings: list[str] = []
    manifest_path = args.session_dir / "session.json"
    if not manifest_path.exists():
        print(f"error: no session.json in {args.session_dir}", file=sys.stderr)
        return 1
    try:
        manifest = load_manifest(manifest_path)
    except (ManifestError, IngestError) as exc:
        print(f"FAIL {exc}")
        return 1

    if manifest.detections_path is not None:
        try:
            parse_detection_stream(manifest.detections_path, manifest.fps)
        except IngestError as exc:
            findings.append(str(exc))
    for source, path in (("manual", manifest.annotations_path),
                         ("model", manifest.model_actions_path)):
        if path is not None:
            try:
                parse_annotation_file(path, source, manifest.duration)
            except IngestError as exc:
                findings.append(str(exc))
    if manifest.screen_luma_path is not None:
        try:
            parse_luma_series(manifest.screen_luma_path)
        except IngestError as exc:
            findings.append(str(exc))

    warnings.extend(_shared_zone_edges(manifest.zones))

    for message in warnings:
        print(f"WARN {message}")
    for message in findings:
        print(f"FAIL {message}")
    if findings:
        print(f"{len(findings)} violation(s)")
        return 1
    print("clean")
    return 0


def _shared_zone_edges(zones: dict) -> list[str]:
    """Zones sharing an edge make the closed-boundary rule double-count."""
    edges: dict[tuple, str] = {}
    warnings = []
    for name, vertices in zones.items():
        n = len(vertices)
        for i in range(n):
            a, b = vertices[i], vertices[(i + 1) % n]
            key = tuple(sorted([(round(a.x, 9), round(a.y, 9)), (round(b.x, 9), round(b.y, 9))]))
            other = edges.get(key)
            if other is not None and other != name:
                warnings.append(f"zones '{other}' and '{name}' share an edge")
            edges[key] = name
    return warnings


def _run_serve(args: argparse.Namespace) -> int:
    if args.data is None:
        print("error: --data (or CI_DATA) is required", file=sys.stderr)
        return 2
    import uvicorn

    from .service import create_app

    app = create_app(args.data, args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    sys.exit(main())
