"""Social-group detection from per-frame proximity and velocity agreement.

Two pedestrians are linked in a frame when they walk close together at a
similar speed and heading; a pair that stays linked for at least half of
its co-present frames belongs together, and groups are the connected
components of that relation with two or more members. Group-level scores
are scaled to [0, 100] so that they can feed the cultural layer
directly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .errors import DegenerateGroupError
from .kinematics import KinematicSample, heading_difference_deg
from .social import SOCIAL_SPACE_M

FAST_WALK_MPS = 2.0
"""Speed that saturates the group speed score."""


@dataclass(frozen=True)
class GroupLinkParams:
    max_distance: float = 1.2
    max_speed_diff: float = 0.5
    max_heading_diff: float = 30.0
    min_persistence: float = 0.5


@dataclass(frozen=True)
class Group:
    id: int
    member_ids: frozenset[int]
    mean_distance: float
    cohesion: float
    mean_area: float
    orientation_score: float
    speed_score: float


@dataclass(frozen=True)
class GroupSet:
    groups: tuple[Group, ...]
    grouped_ids: frozenset[int]
    ungrouped_ids: frozenset[int]


@dataclass(frozen=True)
class GroupStats:
    group_count: int
    grouped_count: int
    ungrouped_count: int
    mean_size: float
    mean_cohesion: float
    mean_area: float
    mean_distance: float


def cohesion_score(mean_distance: float) -> float:
    """100 for a tight group, 0 once members average a social space apart."""
    return 100.0 * max(0.0, 1.0 - mean_distance / SOCIAL_SPACE_M)


def orientation_score(mean_angular_variation: float) -> float:
    """100 for straight-line motion, 0 for full reversals every frame."""
    return 100.0 * (1.0 - min(mean_angular_variation, 180.0) / 180.0)


def speed_score(speed_mps: float) -> float:
    """Speed scaled against a fast walk, saturating at 100."""
    return 100.0 * min(1.0, speed_mps / FAST_WALK_MPS)


def linked(a: KinematicSample, b: KinematicSample, params: GroupLinkParams) -> bool:
    """Frame-level link: close, similar speed (m/s) and similar heading."""
    if math.hypot(a.x - b.x, a.y - b.y) > params.max_distance:
        return False
    if abs(a.speed_mps - b.speed_mps) > params.max_speed_diff:
        return False
    return heading_difference_deg(a.heading, b.heading) <= params.max_heading_diff


def frame_links(
    frame_samples: Mapping[int, KinematicSample], params: GroupLinkParams
) -> set[tuple[int, int]]:
    """All linked id pairs (i < j) among pedestrians present in a frame."""
    ids = sorted(frame_samples)
    return {
        (i, j)
        for i, j in combinations(ids, 2)
        if linked(frame_samples[i], frame_samples[j], params)
    }


def convex_hull_area(points: Iterable[tuple[float, float]]) -> float:
    """Area of the convex hull via monotone chain; 0 below 3 distinct points."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return 0.0

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[tuple[float, float]] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[tuple[float, float]] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return 0.0
    area = 0.0
    for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
        area += x0 * y1 - x1 * y0
    return abs(area) / 2.0


def _frame_index(
    samples_by_ped: Mapping[int, Sequence[KinematicSample]],
) -> dict[int, dict[int, KinematicSample]]:
    frames: dict[int, dict[int, KinematicSample]] = {}
    for ped_id, samples in samples_by_ped.items():
        for sample in samples:
            frames.setdefault(sample.frame, {})[ped_id] = sample
    return frames


def group_metrics(
    group_id: int,
    member_ids: frozenset[int],
    samples_by_ped: Mapping[int, Sequence[KinematicSample]],
) -> Group:
    """Aggregate per-frame distance, hull area, heading change and speed.

    Only frames with at least two members present count; a group without
    any such frame is degenerate.
    """
    member_frames: dict[int, list[KinematicSample]] = {}
    for ped_id in member_ids:
        for sample in samples_by_ped[ped_id]:
            member_frames.setdefault(sample.frame, []).append(sample)

    distances: list[float] = []
    areas: list[float] = []
    angvars: list[float] = []
    speeds: list[float] = []
    for frame in sorted(member_frames):
        present = member_frames[frame]
        if len(present) < 2:
            continue
        pair_dists = [
            math.hypot(a.x - b.x, a.y - b.y) for a, b in combinations(present, 2)
        ]
        distances.append(math.fsum(pair_dists) / len(pair_dists))
        areas.append(convex_hull_area([(s.x, s.y) for s in present]))
        angvars.append(math.fsum(s.angular_variation for s in present) / len(present))
        speeds.append(math.fsum(s.speed_mps for s in present) / len(present))
    if not distances:
        raise DegenerateGroupError(
            f"group {group_id}: members never share a frame"
        )
    mean_distance = math.fsum(distances) / len(distances)
    mean_angvar = math.fsum(angvars) / len(angvars)
    mean_speed = math.fsum(speeds) / len(speeds)
    return Group(
        id=group_id,
        member_ids=member_ids,
        mean_distance=mean_distance,
        cohesion=cohesion_score(mean_distance),
        mean_area=math.fsum(areas) / len(areas),
        orientation_score=orientation_score(mean_angvar),
        speed_score=speed_score(mean_speed),
    )


def detect_groups(
    samples_by_ped: Mapping[int, Sequence[KinematicSample]],
    params: GroupLinkParams | None = None,
) -> GroupSet:
    """Find persistent groups among all tracked pedestrians.

    Group ids are assigned by ascending smallest member id, which makes
    the output order deterministic.
    """
    params = params or GroupLinkParams()
    frames = _frame_index(samples_by_ped)
    copresent: dict[tuple[int, int], int] = {}
    linked_counts: dict[tuple[int, int], int] = {}
    for frame in sorted(frames):
        frame_samples = frames[frame]
        ids = sorted(frame_samples)
        for i, j in combinations(ids, 2):
            key = (i, j)
            copresent[key] = copresent.get(key, 0) + 1
            if linked(frame_samples[i], frame_samples[j], params):
                linked_counts[key] = linked_counts.get(key, 0) + 1

    adjacency: dict[int, set[int]] = {ped_id: set() for ped_id in samples_by_ped}
    for (i, j), shared in copresent.items():
        if linked_counts.get((i, j), 0) >= params.min_persistence * shared:
            adjacency[i].add(j)
            adjacency[j].add(i)

    seen: set[int] = set()
    components: list[frozenset[int]] = []
    for ped_id in sorted(samples_by_ped):
        if ped_id in seen:
            continue
        stack = [ped_id]
        component: set[int] = set()
        while stack:
            node = stack.pop()
            if node in component:
                continue
            component.add(node)
            stack.extend(adjacency[node] - component)
        seen |= component
        if len(component) >= 2:
            components.append(frozenset(component))

    components.sort(key=min)
    groups = tuple(
        group_metrics(idx, members, samples_by_ped)
        for idx, members in enumerate(components)
    )
    grouped = frozenset(ped for g in groups for ped in g.member_ids)
    ungrouped = frozenset(samples_by_ped) - grouped
    return GroupSet(groups=groups, grouped_ids=grouped, ungrouped_ids=ungrouped)


def summarize_groups(group_set: GroupSet) -> GroupStats:
    groups = group_set.groups
    count = len(groups)
    if count == 0:
        return GroupStats(0, 0, len(group_set.ungrouped_ids), 0.0, 0.0, 0.0, 0.0)
    return GroupStats(
        group_count=count,
        grouped_count=len(group_set.grouped_ids),
        ungrouped_count=len(group_set.ungrouped_ids),
        mean_size=math.fsum(len(g.member_ids) for g in groups) / count,
        mean_cohesion=math.fsum(g.cohesion for g in groups) / count,
        mean_area=math.fsum(g.mean_area for g in groups) / count,
        mean_distance=math.fsum(g.mean_distance for g in groups) / count,
    )
