"""Reader and writer for the plain-text pedestrian tracking format.

A tracking file holds one block per pedestrian: a ``P-<id>`` header
followed by whitespace-separated ``<frame> <x> <y>`` triples, one per
observed frame. Coordinates are pixel positions in the source video and
frames are non-negative integers. Example::

    P-0
    0 100.0 200.0
    1 104.0 200.0
    P-1
    0 320.0 80.0

Whitespace is free-form, so the same stream may arrive on a single line.
Tracks with fewer than two points cannot yield motion and are dropped
with a logged diagnostic.
"""
from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass
from pathlib import Path

from .config import CORRECTION_FILENAME, TRACKING_FILENAME, AnalysisConfig
from .errors import (
    AlreadyMetersError,
    DuplicateFrameInTrackError,
    DuplicateIdError,
    MalformedHeaderError,
    MalformedTupleError,
    MissingTrackingFileError,
    NonPositiveScaleError,
)

log = logging.getLogger(__name__)

UNIT_PIXELS = "pixels"
UNIT_METERS = "meters"

_HEADER_RE = re.compile(r"^P-(\d+)$")
_FRAME_IMAGE_RE = re.compile(r"^\d{6}\.jpg$")


@dataclass(frozen=True)
class TrackPoint:
    frame: int
    x: float
    y: float


@dataclass(frozen=True)
class PedestrianTrack:
    id: int
    points: tuple[TrackPoint, ...]

    @property
    def first_frame(self) -> int:
        return self.points[0].frame

    @property
    def last_frame(self) -> int:
        return self.points[-1].frame


@dataclass(frozen=True)
class TrackingDataset:
    """All tracks of one video, keyed by pedestrian id."""

    tracks: dict[int, PedestrianTrack]
    unit: str = UNIT_PIXELS
    corrected: bool = False

    @property
    def frame_count(self) -> int:
        """One past the highest observed frame; 0 for an empty dataset."""
        if not self.tracks:
            return 0
        return 1 + max(t.last_frame for t in self.tracks.values())

    @property
    def pedestrian_ids(self) -> list[int]:
        return sorted(self.tracks)


def _parse_number(token: str, what: str, ped_id: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MalformedTupleError(
            f"track P-{ped_id}: expected {what}, got {token!r}"
        ) from None
    if not math.isfinite(value):
        raise MalformedTupleError(f"track P-{ped_id}: non-finite {what} {token!r}")
    return value


def parse_tracking(text: str, corrected: bool = False) -> TrackingDataset:
    """Parse tracking text into a pixel-space dataset.

    Raises the specific format error for bad headers, malformed or
    incomplete triples, repeated pedestrian ids and repeated frames
    within a track. Points are sorted by frame; tracks shorter than two
    points are dropped with a warning.
    """
    tokens = text.split()
    raw: dict[int, list[TrackPoint]] = {}
    current: list[TrackPoint] | None = None
    current_id = -1
    i = 0
    n = len(tokens)
    while i < n:
        tok = tokens[i]
        header = _HEADER_RE.match(tok)
        if header is not None:
            ped_id = int(header.group(1))
            if ped_id in raw:
                raise DuplicateIdError(f"pedestrian id {ped_id} appears twice")
            raw[ped_id] = []
            current = raw[ped_id]
            current_id = ped_id
            i += 1
            continue
        if current is None or tok.startswith("P-"):
            raise MalformedHeaderError(
                f"expected pedestrian header 'P-<id>', got {tok!r}"
            )
        triple = tokens[i : i + 3]
        if len(triple) < 3 or any(t.startswith("P-") for t in triple):
            raise MalformedTupleError(
                f"track P-{current_id}: incomplete triple {' '.join(triple)!r}"
            )
        frame_value = _parse_number(triple[0], "frame number", current_id)
        if frame_value < 0 or not frame_value.is_integer():
            raise MalformedTupleError(
                f"track P-{current_id}: frame must be a non-negative integer,"
                f" got {triple[0]!r}"
            )
        x = _parse_number(triple[1], "x coordinate", current_id)
        y = _parse_number(triple[2], "y coordinate", current_id)
        current.append(TrackPoint(int(frame_value), x, y))
        i += 3

    tracks: dict[int, PedestrianTrack] = {}
    for ped_id, points in raw.items():
        seen: set[int] = set()
        for p in points:
            if p.frame in seen:
                raise DuplicateFrameInTrackError(
                    f"track P-{ped_id}: frame {p.frame} listed twice"
                )
            seen.add(p.frame)
        if len(points) < 2:
            log.warning(
                "dropping track P-%d: %d point(s), need at least 2",
                ped_id,
                len(points),
            )
            continue
        ordered = tuple(sorted(points, key=lambda p: p.frame))
        tracks[ped_id] = PedestrianTrack(ped_id, ordered)
    return TrackingDataset(tracks=tracks, unit=UNIT_PIXELS, corrected=corrected)


def write_tracking(dataset: TrackingDataset) -> str:
    """Render a dataset back to tracking text, coordinates with 6 decimals."""
    lines: list[str] = []
    for ped_id in sorted(dataset.tracks):
        lines.append(f"P-{ped_id}")
        for p in dataset.tracks[ped_id].points:
            lines.append(f"{p.frame} {p.x:.6f} {p.y:.6f}")
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def to_world_coords(dataset: TrackingDataset, pixels_per_meter: float) -> TrackingDataset:
    """Return a new dataset with coordinates converted from pixels to meters."""
    if dataset.unit == UNIT_METERS:
        raise AlreadyMetersError("dataset is already in meters")
    if not pixels_per_meter > 0:
        raise NonPositiveScaleError(
            f"pixels-per-meter must be positive, got {pixels_per_meter}"
        )
    converted = {
        ped_id: PedestrianTrack(
            ped_id,
            tuple(
                TrackPoint(p.frame, p.x / pixels_per_meter, p.y / pixels_per_meter)
                for p in track.points
            ),
        )
        for ped_id, track in dataset.tracks.items()
    }
    return TrackingDataset(tracks=converted, unit=UNIT_METERS, corrected=dataset.corrected)


def datasets_equal(
    a: TrackingDataset,
    b: TrackingDataset,
    rel_tol: float = 1e-6,
    abs_tol: float = 1e-6,
) -> bool:
    """Structural equality up to coordinate formatting precision."""
    if sorted(a.tracks) != sorted(b.tracks):
        return False
    for ped_id, track in a.tracks.items():
        other = b.tracks[ped_id]
        if len(track.points) != len(other.points):
            return False
        for p, q in zip(track.points, other.points):
            if p.frame != q.frame:
                return False
            if not math.isclose(p.x, q.x, rel_tol=rel_tol, abs_tol=abs_tol):
                return False
            if not math.isclose(p.y, q.y, rel_tol=rel_tol, abs_tol=abs_tol):
                return False
    return True


def count_frame_images(input_dir: Path) -> int:
    """Count six-digit ``.jpg`` frame files; names are never decoded further."""
    if not input_dir.is_dir():
        return 0
    return sum(1 for p in input_dir.iterdir() if _FRAME_IMAGE_RE.match(p.name))


def read_input_pixels(config: AnalysisConfig) -> TrackingDataset:
    """Load the configured tracking file without unit conversion."""
    name = CORRECTION_FILENAME if config.use_correction else TRACKING_FILENAME
    path = config.input_dir / name
    if not path.is_file():
        raise MissingTrackingFileError(f"tracking file not found: {path}")
    dataset = parse_tracking(
        path.read_text(encoding="utf-8"), corrected=config.use_correction
    )
    image_count = count_frame_images(config.input_dir)
    if image_count and dataset.frame_count > image_count:
        log.warning(
            "tracking spans %d frames but only %d frame images are present",
            dataset.frame_count,
            image_count,
        )
    return dataset


def resolve_input(config: AnalysisConfig) -> TrackingDataset:
    """Load the configured tracking file and convert it to meters."""
    return to_world_coords(read_input_pixels(config), config.pixels_per_meter)
