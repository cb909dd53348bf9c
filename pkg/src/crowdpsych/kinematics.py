"""Per-frame motion descriptors and per-pedestrian averages.

Speeds are expressed in meters per frame (with an m/s twin scaled by the
video frame rate), headings in degrees against the +x axis in [0, 360),
and angular variation as the absolute wrapped heading change in
[0, 180]. Every observed frame of a track yields one sample; the first
sample borrows speed and heading from the first displacement so that
tables indexed by presence have no holes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import EmptySamplesError, TrackTooShortError
from .tracking import PedestrianTrack

MIN_MOVE_M = 0.01
"""Displacements below this carry the previous heading over."""

MIN_ANGVAR_DEG = 0.1
"""Lower clamp for angular variation wherever it ends up in a divisor."""

REFERENCE_HEADING_DEG = 0.0


@dataclass(frozen=True)
class KinematicSample:
    frame: int
    x: float
    y: float
    speed: float
    speed_mps: float
    heading: float
    angular_variation: float


@dataclass(frozen=True)
class SocialAverages:
    """Per-pedestrian means of the frame-level social features."""

    collectivity: float
    mean_distance_to_others: float
    mean_neighbor_count: float
    socialization: float | None = None


@dataclass(frozen=True)
class FeatureVector:
    """Whole-track descriptor used by the personality and report layers.

    ``socialization`` and ``isolation`` stay ``None`` until the
    classifier has run; they always satisfy isolation + socialization = 1
    once present because isolation is derived as the complement.
    """

    pedestrian_id: int
    mean_x: float
    mean_y: float
    mean_speed: float
    mean_speed_mps: float
    mean_angular_variation: float
    path_length: float
    net_displacement: float
    speed_std_dev: float
    heading_std_dev: float
    collectivity: float | None = None
    mean_distance_to_others: float | None = None
    mean_neighbor_count: float | None = None
    socialization: float | None = None
    isolation: float | None = None


def wrap_heading_deg(angle: float) -> float:
    """Fold any angle in degrees into [0, 360)."""
    wrapped = math.fmod(angle, 360.0)
    if wrapped < 0:
        wrapped += 360.0
    # adding 360 to a tiny negative remainder rounds up to exactly 360,
    # which must fold back to keep the range half open
    return 0.0 if wrapped == 360.0 else wrapped


def heading_difference_deg(a: float, b: float) -> float:
    """Smallest absolute difference between two headings, in [0, 180]."""
    d = abs(a - b) % 360.0
    return 360.0 - d if d > 180.0 else d


def per_frame_kinematics(track: PedestrianTrack, fps: float) -> list[KinematicSample]:
    """One sample per observed frame of the track.

    Sample k >= 1 describes the displacement from point k-1 to point k,
    with speeds normalized by the frame gap. Sample 0 sits on the first
    observed frame and repeats the first displacement's speed and
    heading; its angular variation is zero, as is sample 1's, since turns
    only exist from the second displacement on.
    """
    points = track.points
    if len(points) < 2:
        raise TrackTooShortError(
            f"track {track.id} has {len(points)} point(s); kinematics need at least 2"
        )
    seg_speed: list[float] = []
    seg_heading: list[float] = []
    prev_heading = REFERENCE_HEADING_DEG
    for a, b in zip(points, points[1:]):
        dx = b.x - a.x
        dy = b.y - a.y
        gap = b.frame - a.frame
        dist = math.hypot(dx, dy)
        if dist < MIN_MOVE_M:
            heading = prev_heading
        else:
            heading = wrap_heading_deg(math.degrees(math.atan2(dy, dx)))
        seg_speed.append(dist / gap)
        seg_heading.append(heading)
        prev_heading = heading

    samples = [
        KinematicSample(
            frame=points[0].frame,
            x=points[0].x,
            y=points[0].y,
            speed=seg_speed[0],
            speed_mps=seg_speed[0] * fps,
            heading=seg_heading[0],
            angular_variation=0.0,
        )
    ]
    for k, point in enumerate(points[1:]):
        if k == 0:
            angvar = 0.0
        else:
            angvar = heading_difference_deg(seg_heading[k], seg_heading[k - 1])
        samples.append(
            KinematicSample(
                frame=point.frame,
                x=point.x,
                y=point.y,
                speed=seg_speed[k],
                speed_mps=seg_speed[k] * fps,
                heading=seg_heading[k],
                angular_variation=angvar,
            )
        )
    return samples


def _population_std(values: list[float]) -> float:
    n = len(values)
    if n < 2:
        return 0.0
    mean = math.fsum(values) / n
    return math.sqrt(math.fsum((v - mean) ** 2 for v in values) / n)


def _heading_dispersion_deg(headings_deg: list[float]) -> float:
    """Angular deviation sqrt(2 (1 - R)) of the headings, in degrees.

    R is the length of the mean unit vector, so the value is 0 for a
    fixed direction and grows to about 81 degrees for fully opposed
    directions, with no singularities.
    """
    n = len(headings_deg)
    cos_sum = math.fsum(math.cos(math.radians(h)) for h in headings_deg)
    sin_sum = math.fsum(math.sin(math.radians(h)) for h in headings_deg)
    r = math.hypot(cos_sum / n, sin_sum / n)
    r = min(r, 1.0)
    return math.degrees(math.sqrt(max(0.0, 2.0 * (1.0 - r))))


def summarize_track(
    pedestrian_id: int,
    samples: list[KinematicSample],
    social: SocialAverages | None = None,
) -> FeatureVector:
    """Collapse per-frame samples (plus social means, when present) into
    one FeatureVector.

    The mean angular variation averages genuine turn angles only, i.e.
    the heading changes between consecutive displacements; the first two
    samples carry structural zeros and are excluded so that a polyline
    of equal turns averages to exactly that turn angle.
    """
    if not samples:
        raise EmptySamplesError(f"pedestrian {pedestrian_id}: no samples to summarize")
    n = len(samples)
    mean_x = math.fsum(s.x for s in samples) / n
    mean_y = math.fsum(s.y for s in samples) / n
    mean_speed = math.fsum(s.speed for s in samples) / n
    turns = [s.angular_variation for s in samples[2:]]
    mean_angvar = math.fsum(turns) / len(turns) if turns else 0.0
    path_length = math.fsum(
        math.hypot(b.x - a.x, b.y - a.y) for a, b in zip(samples, samples[1:])
    )
    net_displacement = math.hypot(
        samples[-1].x - samples[0].x, samples[-1].y - samples[0].y
    )
    socialization = social.socialization if social is not None else None
    isolation = None if socialization is None else 1.0 - socialization
    return FeatureVector(
        pedestrian_id=pedestrian_id,
        mean_x=mean_x,
        mean_y=mean_y,
        mean_speed=mean_speed,
        mean_speed_mps=math.fsum(s.speed_mps for s in samples) / n,
        mean_angular_variation=mean_angvar,
        path_length=path_length,
        net_displacement=net_displacement,
        speed_std_dev=_population_std([s.speed for s in samples]),
        heading_std_dev=_heading_dispersion_deg([s.heading for s in samples]),
        collectivity=social.collectivity if social is not None else None,
        mean_distance_to_others=social.mean_distance_to_others if social is not None else None,
        mean_neighbor_count=social.mean_neighbor_count if social is not None else None,
        socialization=socialization,
        isolation=isolation,
    )
