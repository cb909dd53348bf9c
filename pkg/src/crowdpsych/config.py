"""Run configuration shared by the CLI and the analysis pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError

DIM_PHYSICAL = "I"
DIM_SOCIAL = "II"
DIM_PERSONAL_EMOTIONAL = "III"
DIM_CULTURAL = "IV"
ALL_DIMENSIONS: tuple[str, ...] = (
    DIM_PHYSICAL,
    DIM_SOCIAL,
    DIM_PERSONAL_EMOTIONAL,
    DIM_CULTURAL,
)

KIND_TEXT = "text"
KIND_CHART = "chart"
KIND_OVERLAY = "overlay"
ALL_OUTPUT_KINDS: tuple[str, ...] = (KIND_TEXT, KIND_CHART, KIND_OVERLAY)

TRACKING_FILENAME = "tracking.txt"
CORRECTION_FILENAME = "tracking_correction.txt"


@dataclass(frozen=True)
class AnalysisConfig:
    """Everything one analysis run needs, mirroring the CLI flags.

    Positions in the input file are pixel coordinates; ``pixels_per_meter``
    converts them to meters and ``fps`` converts per-frame speeds to m/s.
    ``dimensions`` selects which report layers are written: I physical,
    II social, III personal/emotional, IV cultural.
    """

    input_dir: Path
    output_dir: Path
    video_name: str
    fps: float
    pixels_per_meter: float
    dimensions: frozenset[str] = frozenset(ALL_DIMENSIONS)
    output_every_n: int = 1
    all_features: bool = False
    output_kinds: frozenset[str] = frozenset({KIND_TEXT})
    use_correction: bool = False
    items_file: Path | None = None
    net_file: Path | None = None
    seed: int = 7
    workers: int = 1

    def validate(self) -> None:
        if not self.video_name:
            raise ConfigError("video name must not be empty")
        if not self.dimensions:
            raise ConfigError("select at least one dimension out of I, II, III, IV")
        unknown = set(self.dimensions) - set(ALL_DIMENSIONS)
        if unknown:
            raise ConfigError(f"unknown dimensions: {', '.join(sorted(unknown))}")
        if not self.fps > 0:
            raise ConfigError("fps must be strictly positive")
        if not self.pixels_per_meter > 0:
            raise ConfigError("pixels-per-meter must be strictly positive")
        if self.output_every_n < 1:
            raise ConfigError("output frequency must be at least 1 frame")
        unknown_kinds = set(self.output_kinds) - set(ALL_OUTPUT_KINDS)
        if unknown_kinds:
            raise ConfigError(f"unknown output kinds: {', '.join(sorted(unknown_kinds))}")
        if not self.output_kinds and not self.all_features:
            raise ConfigError("nothing to write: pick output kinds or the all-features table")
        if self.workers < 1:
            raise ConfigError("workers must be at least 1")
