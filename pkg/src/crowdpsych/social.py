"""Pairwise motion similarity and proxemic neighborhood features.

The dissimilarity between two co-present pedestrians combines their
speed gap (meters per frame, capped) with their heading gap (radians,
wrapped to [0, pi]); a Gaussian-style decay turns it into a pair
collectivity term in (0, 1]. Neighborhood features use the classic
proxemic social-space radius of 3.6 m.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import UndefinedHeadingError
from .kinematics import KinematicSample

SOCIAL_SPACE_M = 3.6
"""Radius of the proxemic social space used for neighbor counting."""

FAR_DISTANCE_M = 10.0
"""Mean-distance stand-in for a pedestrian alone in a frame."""

SPEED_WEIGHT = 1.0
ORIENTATION_WEIGHT = 1.0
MAX_SPEED_DIFF = 1.2
"""Cap on the speed gap, in meters per frame."""

DECAY_GAMMA = 1.0
DECAY_BETA = 0.3
MAX_DISSIMILARITY = SPEED_WEIGHT * MAX_SPEED_DIFF + ORIENTATION_WEIGHT * math.pi


def pair_dissimilarity(
    speed_a: float,
    heading_a_deg: float,
    speed_b: float,
    heading_b_deg: float,
) -> float:
    """Weighted sum of the capped speed gap and the wrapped heading gap.

    Ranges over [0, MAX_SPEED_DIFF + pi], about 4.34 with the default
    weights of one.
    """
    for h in (heading_a_deg, heading_b_deg):
        if h is None or not math.isfinite(h):
            raise UndefinedHeadingError("both headings must be defined and finite")
    speed_term = min(abs(speed_a - speed_b), MAX_SPEED_DIFF)
    diff = abs(heading_a_deg - heading_b_deg) % 360.0
    if diff > 180.0:
        diff = 360.0 - diff
    return SPEED_WEIGHT * speed_term + ORIENTATION_WEIGHT * math.radians(diff)


def decay_term(dissimilarity: float) -> float:
    """Pair collectivity term, 1 at zero dissimilarity and decaying fast."""
    return DECAY_GAMMA * math.exp(-DECAY_BETA * dissimilarity * dissimilarity)


def collectivity(sample: KinematicSample, others: Sequence[KinematicSample]) -> float:
    """Mean pair term against every co-present pedestrian; 0 when alone."""
    if not others:
        return 0.0
    terms = [
        decay_term(
            pair_dissimilarity(sample.speed, sample.heading, o.speed, o.heading)
        )
        for o in others
    ]
    return math.fsum(terms) / len(terms)


def neighbor_count(sample: KinematicSample, others: Sequence[KinematicSample]) -> int:
    """How many co-present pedestrians sit within the social space."""
    return sum(
        1
        for o in others
        if math.hypot(o.x - sample.x, o.y - sample.y) <= SOCIAL_SPACE_M
    )


def mean_distance(sample: KinematicSample, others: Sequence[KinematicSample]) -> float:
    """Mean distance to every co-present pedestrian, FAR_DISTANCE_M alone."""
    if not others:
        return FAR_DISTANCE_M
    return math.fsum(
        math.hypot(o.x - sample.x, o.y - sample.y) for o in others
    ) / len(others)


@dataclass(frozen=True)
class FrameSocial:
    collectivity: float
    mean_distance: float
    neighbor_count: int


def frame_social_features(
    frame_samples: Mapping[int, KinematicSample],
) -> dict[int, FrameSocial]:
    """Collectivity, mean distance and neighbor count for one frame.

    Vectorized over all pedestrians present in the frame; agrees with the
    scalar helpers above up to float summation order.
    """
    ids = sorted(frame_samples)
    k = len(ids)
    if k == 0:
        return {}
    if k == 1:
        return {ids[0]: FrameSocial(0.0, FAR_DISTANCE_M, 0)}
    pos = np.array([[frame_samples[i].x, frame_samples[i].y] for i in ids])
    speeds = np.array([frame_samples[i].speed for i in ids])
    headings = np.array([frame_samples[i].heading for i in ids])

    delta = pos[:, None, :] - pos[None, :, :]
    dist = np.hypot(delta[..., 0], delta[..., 1])
    speed_gap = np.minimum(np.abs(speeds[:, None] - speeds[None, :]), MAX_SPEED_DIFF)
    heading_gap = np.abs(headings[:, None] - headings[None, :]) % 360.0
    heading_gap = np.where(heading_gap > 180.0, 360.0 - heading_gap, heading_gap)
    dissimilarity = (
        SPEED_WEIGHT * speed_gap + ORIENTATION_WEIGHT * np.radians(heading_gap)
    )
    terms = DECAY_GAMMA * np.exp(-DECAY_BETA * dissimilarity**2)

    # the diagonal contributes a term of exactly 1 and a distance of 0
    phi = (terms.sum(axis=1) - 1.0) / (k - 1)
    dbar = dist.sum(axis=1) / (k - 1)
    neighbors = (dist <= SOCIAL_SPACE_M).sum(axis=1) - 1
    return {
        ped_id: FrameSocial(float(phi[j]), float(dbar[j]), int(neighbors[j]))
        for j, ped_id in enumerate(ids)
    }
