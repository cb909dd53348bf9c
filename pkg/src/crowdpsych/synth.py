"""Deterministic synthetic scenarios with known group structure.

Three scenario kinds cover the interesting regimes: ``groupedWalk``
marches compact groups (plus optional loners) along parallel lanes,
``loneWalkers`` sends well-separated pedestrians outward on diverging
headings, and ``corridor`` walks a ring of pedestrians around a closed
loop at a density-dependent speed. The construction itself is the
ground truth: expected partition, mean speeds and headings are emitted
next to the tracks.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InvalidSpecError
from .tracking import (
    UNIT_METERS,
    PedestrianTrack,
    TrackingDataset,
    TrackPoint,
    write_tracking,
)

KIND_GROUPED_WALK = "groupedWalk"
KIND_LONE_WALKERS = "loneWalkers"
KIND_CORRIDOR = "corridor"
KINDS = (KIND_GROUPED_WALK, KIND_LONE_WALKERS, KIND_CORRIDOR)

LANE_SPACING_M = 20.0
MEMBER_RING_RADIUS_M = 0.4
LONER_MIN_SEPARATION_M = 8.0
CORRIDOR_SPACING_M = 1.0
JAM_DENSITY_PED_PER_M = 5.4

TRACKING_FILENAME = "tracking.txt"
GROUND_TRUTH_FILENAME = "ground_truth.csv"


@dataclass(frozen=True)
class ScenarioSpec:
    kind: str
    group_count: int = 0
    per_group: int = 0
    loner_count: int = 0
    base_speed: float = 1.2
    position_noise: float = 0.0
    frames: int = 50
    fps: float = 25.0
    seed: int = 7

    @property
    def pedestrian_count(self) -> int:
        return self.group_count * self.per_group + self.loner_count

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise InvalidSpecError(f"unknown scenario kind {self.kind!r}")
        if self.frames < 2:
            raise InvalidSpecError("scenarios need at least 2 frames")
        if not self.fps > 0:
            raise InvalidSpecError("fps must be strictly positive")
        if not self.base_speed > 0:
            raise InvalidSpecError("base speed must be strictly positive")
        if self.position_noise < 0:
            raise InvalidSpecError("position noise must not be negative")
        if self.group_count < 0 or self.per_group < 0 or self.loner_count < 0:
            raise InvalidSpecError("pedestrian counts must not be negative")
        if self.group_count > 0 and self.per_group < 2:
            raise InvalidSpecError("groups need at least 2 members each")
        if self.pedestrian_count < 1:
            raise InvalidSpecError("the scenario must contain at least one pedestrian")


@dataclass(frozen=True)
class GroundTruth:
    """Expected analysis outcome, straight from the construction."""

    groups: tuple[frozenset[int], ...]
    loner_ids: frozenset[int]
    mean_speed_mps: dict[int, float]
    heading_deg: dict[int, float]


def _disc_offset(rng: np.random.Generator, radius: float) -> tuple[float, float]:
    if radius == 0.0:
        return 0.0, 0.0
    r = radius * math.sqrt(rng.uniform())
    angle = rng.uniform(0.0, 2.0 * math.pi)
    return r * math.cos(angle), r * math.sin(angle)


def _linear_track(
    ped_id: int,
    start: tuple[float, float],
    direction_deg: float,
    step: float,
    frames: int,
) -> PedestrianTrack:
    dx = step * math.cos(math.radians(direction_deg))
    dy = step * math.sin(math.radians(direction_deg))
    points = tuple(
        TrackPoint(t, start[0] + dx * t, start[1] + dy * t) for t in range(frames)
    )
    return PedestrianTrack(ped_id, points)


def _grouped_walk(spec: ScenarioSpec, rng: np.random.Generator):
    """Compact groups marching +x on separate lanes, loners below them.

    Members sit on a ring of radius 0.4 m around the lane center, so the
    largest member distance is 0.8 m plus twice the position noise;
    detection with default parameters recovers the partition whenever
    the noise stays at or below 0.1 m.
    """
    step = spec.base_speed / spec.fps
    tracks: dict[int, PedestrianTrack] = {}
    truth_groups: list[frozenset[int]] = []
    speeds: dict[int, float] = {}
    headings: dict[int, float] = {}
    ped_id = 0
    for g in range(spec.group_count):
        center_y = g * LANE_SPACING_M
        members: list[int] = []
        for m in range(spec.per_group):
            angle = 2.0 * math.pi * m / spec.per_group
            ox, oy = _disc_offset(rng, spec.position_noise)
            start = (
                MEMBER_RING_RADIUS_M * math.cos(angle) + ox,
                center_y + MEMBER_RING_RADIUS_M * math.sin(angle) + oy,
            )
            tracks[ped_id] = _linear_track(ped_id, start, 0.0, step, spec.frames)
            speeds[ped_id] = spec.base_speed
            headings[ped_id] = 0.0
            members.append(ped_id)
            ped_id += 1
        truth_groups.append(frozenset(members))
    loners: list[int] = []
    for i in range(spec.loner_count):
        ox, oy = _disc_offset(rng, spec.position_noise)
        start = (ox, -(i + 1) * LANE_SPACING_M + oy)
        tracks[ped_id] = _linear_track(ped_id, start, 270.0, step, spec.frames)
        speeds[ped_id] = spec.base_speed
        headings[ped_id] = 270.0
        loners.append(ped_id)
        ped_id += 1
    truth = GroundTruth(
        groups=tuple(truth_groups),
        loner_ids=frozenset(loners),
        mean_speed_mps=speeds,
        heading_deg=headings,
    )
    return tracks, truth


def _lone_walkers(spec: ScenarioSpec, rng: np.random.Generator):
    """Pedestrians on a ring walking radially outward, never converging."""
    n = spec.pedestrian_count
    step = spec.base_speed / spec.fps
    separation = LONER_MIN_SEPARATION_M + 2.0 * spec.position_noise
    if n > 1:
        radius = separation / (2.0 * math.sin(math.pi / n))
    else:
        radius = 0.0
    tracks: dict[int, PedestrianTrack] = {}
    speeds: dict[int, float] = {}
    headings: dict[int, float] = {}
    for i in range(n):
        angle = 2.0 * math.pi * i / n
        ox, oy = _disc_offset(rng, spec.position_noise)
        start = (radius * math.cos(angle) + ox, radius * math.sin(angle) + oy)
        direction = math.degrees(angle) % 360.0
        tracks[i] = _linear_track(i, start, direction, step, spec.frames)
        speeds[i] = spec.base_speed
        headings[i] = direction
    truth = GroundTruth(
        groups=(),
        loner_ids=frozenset(range(n)),
        mean_speed_mps=speeds,
        heading_deg=headings,
    )
    return tracks, truth


def _ring_partition(thetas: list[float], radius: float) -> list[frozenset[int]]:
    """Connected components of the static adjacency on the ring.

    Speeds are identical by construction, so two walkers connect when
    their chord distance and tangent-heading gap clear the default link
    thresholds (1.2 m and 30 degrees).
    """
    n = len(thetas)
    adjacency: dict[int, set[int]] = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            gap = abs(thetas[i] - thetas[j]) % (2.0 * math.pi)
            gap = min(gap, 2.0 * math.pi - gap)
            chord = 2.0 * radius * math.sin(gap / 2.0)
            if chord <= 1.2 and math.degrees(gap) <= 30.0:
                adjacency[i].add(j)
                adjacency[j].add(i)
    components: list[frozenset[int]] = []
    seen: set[int] = set()
    for i in range(n):
        if i in seen:
            continue
        stack = [i]
        members: set[int] = set()
        while stack:
            node = stack.pop()
            if node in members:
                continue
            members.add(node)
            stack.extend(adjacency[node] - members)
        seen |= members
        if len(members) >= 2:
            components.append(frozenset(members))
    return components


def _corridor(spec: ScenarioSpec, rng: np.random.Generator):
    """A closed loop at density-dependent speed, fundamental-diagram style."""
    n = spec.pedestrian_count
    circumference = max(n, 2) * CORRIDOR_SPACING_M
    radius = circumference / (2.0 * math.pi)
    density = n / circumference
    walk_speed = spec.base_speed * max(0.05, 1.0 - density / JAM_DENSITY_PED_PER_M)
    omega = walk_speed / (radius * spec.fps)

    thetas = [
        2.0 * math.pi * i / n + rng.uniform(-spec.position_noise, spec.position_noise) / radius
        for i in range(n)
    ]
    tracks: dict[int, PedestrianTrack] = {}
    speeds: dict[int, float] = {}
    headings: dict[int, float] = {}
    chord_speed = 2.0 * radius * math.sin(omega / 2.0) * spec.fps
    for i in range(n):
        points = tuple(
            TrackPoint(
                t,
                radius * math.cos(thetas[i] + omega * t),
                radius * math.sin(thetas[i] + omega * t),
            )
            for t in range(spec.frames)
        )
        tracks[i] = PedestrianTrack(i, points)
        speeds[i] = chord_speed
        mid_theta = thetas[i] + omega * (spec.frames - 1) / 2.0
        headings[i] = math.degrees(mid_theta + math.pi / 2.0) % 360.0
    components = _ring_partition(thetas, radius)
    grouped = {ped for members in components for ped in members}
    truth = GroundTruth(
        groups=tuple(components),
        loner_ids=frozenset(range(n)) - grouped,
        mean_speed_mps=speeds,
        heading_deg=headings,
    )
    return tracks, truth


def generate(spec: ScenarioSpec) -> tuple[TrackingDataset, GroundTruth]:
    """Build the scenario; coordinates are meters, same seed, same tracks."""
    spec.validate()
    rng = np.random.default_rng(spec.seed)
    if spec.kind == KIND_GROUPED_WALK:
        tracks, truth = _grouped_walk(spec, rng)
    elif spec.kind == KIND_LONE_WALKERS:
        tracks, truth = _lone_walkers(spec, rng)
    else:
        tracks, truth = _corridor(spec, rng)
    dataset = TrackingDataset(tracks=tracks, unit=UNIT_METERS, corrected=False)
    return dataset, truth


def write_scenario(spec: ScenarioSpec, out_dir: Path) -> tuple[Path, Path]:
    """Write ``tracking.txt`` and ``ground_truth.csv`` into ``out_dir``.

    The tracking file stores meter coordinates, so downstream analysis
    should read it with a pixels-per-meter scale of 1.
    """
    dataset, truth = generate(spec)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    tracking_path = out_dir / TRACKING_FILENAME
    tracking_path.write_text(write_tracking(dataset), encoding="utf-8")

    group_of: dict[int, int] = {}
    for index, members in enumerate(sorted(truth.groups, key=min)):
        for ped in members:
            group_of[ped] = index
    truth_path = out_dir / GROUND_TRUTH_FILENAME
    with truth_path.open("w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(["pedestrian_id", "group_id", "mean_speed_mps", "heading_deg"])
        for ped_id in sorted(dataset.tracks):
            writer.writerow(
                [
                    ped_id,
                    group_of.get(ped_id, -1),
                    f"{truth.mean_speed_mps[ped_id]:.6g}",
                    f"{truth.heading_deg[ped_id]:.6g}",
                ]
            )
    return tracking_path, truth_path
