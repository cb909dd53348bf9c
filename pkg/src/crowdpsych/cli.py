"""Command-line interface: ``analyze`` a tracking folder or ``synth`` a scenario."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .config import (
    ALL_DIMENSIONS,
    KIND_CHART,
    KIND_OVERLAY,
    KIND_TEXT,
    AnalysisConfig,
)
from .errors import (
    ConfigError,
    CrowdPsychError,
    EmptyDatasetError,
    InvalidSpecError,
    MissingTrackingFileError,
    RegistryError,
    TrackingFormatError,
)
from .pipeline import run_pipeline
from .report import write_reports
from .synth import KINDS, ScenarioSpec, write_scenario

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CONFIG_ERROR = 2
EXIT_INTERNAL_ERROR = 3

_KIND_ALIASES = {
    "txt": KIND_TEXT,
    "text": KIND_TEXT,
    "chart": KIND_CHART,
    "overlay": KIND_OVERLAY,
}

log = logging.getLogger(__name__)


def _parse_dimensions(raw: str) -> frozenset[str]:
    parts = [part.strip() for part in raw.split(",") if part.strip()]
    unknown = [part for part in parts if part not in ALL_DIMENSIONS]
    if unknown:
        raise ConfigError(
            f"unknown dimensions {', '.join(unknown)}; valid values are I, II, III, IV"
        )
    return frozenset(parts)


def _parse_kinds(raw: str) -> frozenset[str]:
    parts = [part.strip() for part in raw.split(",") if part.strip()]
    unknown = [part for part in parts if part not in _KIND_ALIASES]
    if unknown:
        raise ConfigError(
            f"unknown output kinds {', '.join(unknown)}; valid values are txt, chart, overlay"
        )
    return frozenset(_KIND_ALIASES[part] for part in parts)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="crowdpsych",
        description=(
            "Pedestrian trajectory analytics: physical, social, personal/emotional "
            "and cultural layers from plain-text tracking files."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser("analyze", help="analyze a tracked video folder")
    analyze.add_argument("--input-dir", type=Path, required=True)
    analyze.add_argument("--output-dir", type=Path, required=True)
    analyze.add_argument("--video-name", required=True)
    analyze.add_argument("--fps", type=float, required=True)
    analyze.add_argument("--pixels-per-meter", type=float, required=True)
    analyze.add_argument(
        "--dims",
        default=",".join(ALL_DIMENSIONS),
        help="comma-separated subset of I,II,III,IV (default: all)",
    )
    analyze.add_argument(
        "--every",
        type=int,
        default=1,
        metavar="N",
        help="write per-frame rows every N frames",
    )
    analyze.add_argument("--all-features", action="store_true")
    analyze.add_argument(
        "--output",
        default="txt",
        help="comma-separated output kinds out of txt,chart,overlay",
    )
    analyze.add_argument("--use-correction", action="store_true")
    analyze.add_argument("--items", type=Path, default=None, metavar="FILE")
    analyze.add_argument("--net", type=Path, default=None, metavar="FILE")
    analyze.add_argument("--seed", type=int, default=7)
    analyze.add_argument("--workers", type=int, default=1)

    synth = sub.add_parser("synth", help="generate a synthetic scenario")
    synth.add_argument("--kind", required=True, choices=KINDS)
    synth.add_argument("--out", type=Path, required=True)
    synth.add_argument("--groups", type=int, default=0)
    synth.add_argument("--per-group", type=int, default=0)
    synth.add_argument("--loners", type=int, default=0)
    synth.add_argument("--base-speed", type=float, default=1.2)
    synth.add_argument("--noise", type=float, default=0.0)
    synth.add_argument("--frames", type=int, default=50)
    synth.add_argument("--fps", type=float, default=25.0)
    synth.add_argument("--seed", type=int, default=7)
    return parser


def _run_analyze(args: argparse.Namespace) -> int:
    config = AnalysisConfig(
        input_dir=args.input_dir,
        output_dir=args.output_dir,
        video_name=args.video_name,
        fps=args.fps,
        pixels_per_meter=args.pixels_per_meter,
        dimensions=_parse_dimensions(args.dims),
        output_every_n=args.every,
        all_features=args.all_features,
        output_kinds=_parse_kinds(args.output),
        use_correction=args.use_correction,
        items_file=args.items,
        net_file=args.net,
        seed=args.seed,
        workers=args.workers,
    )
    config.validate()
    summary = run_pipeline(config)
    paths = write_reports(summary, config)
    print(
        f"{summary.video_name}: {summary.frame_count} frames, "
        f"{summary.pedestrian_count} pedestrians, {summary.group_count} groups"
    )
    for path in paths:
        print(f"wrote {path}")
    return EXIT_OK


def _run_synth(args: argparse.Namespace) -> int:
    spec = ScenarioSpec(
        kind=args.kind,
        group_count=args.groups,
        per_group=args.per_group,
        loner_count=args.loners,
        base_speed=args.base_speed,
        position_noise=args.noise,
        frames=args.frames,
        fps=args.fps,
        seed=args.seed,
    )
    tracking_path, truth_path = write_scenario(spec, args.out)
    print(f"wrote {tracking_path}")
    print(f"wrote {truth_path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "analyze":
            return _run_analyze(args)
        return _run_synth(args)
    except (ConfigError, InvalidSpecError, RegistryError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (
        MissingTrackingFileError,
        TrackingFormatError,
        EmptyDatasetError,
        OSError,
    ) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except KeyboardInterrupt:
        print("interrupted; partial files were cleaned up", file=sys.stderr)
        return EXIT_INTERNAL_ERROR
    except CrowdPsychError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
