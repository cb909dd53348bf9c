"""Video-level cultural dimension estimates from group structure.

All seven values live on a 0..100 scale. Collectivism is the share of
grouped pedestrians and individualism its exact complement; power
distance grows with the mean within-group distance; long-term
orientation folds the orientation score into [50, 100] with short-term
orientation as its complement; masculinity and indulgence blend group
cohesion and speed with those scores. Videos without any detected group
fall back to neutral or population-level inputs and say so.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import OutOfRangeError
from .groups import GroupSet
from .social import SOCIAL_SPACE_M

NEUTRAL_SCORE = 50.0
COHESION_WEIGHT = 0.5
SPEED_WEIGHT = 0.5


@dataclass(frozen=True)
class HofstedeProfile:
    collectivism: float
    individualism: float
    power_distance: float
    long_term_orientation: float
    short_term_orientation: float
    masculinity: float
    indulgence: float
    group_fallback: bool

    def as_dict(self) -> dict[str, float]:
        return {
            "COL": self.collectivism,
            "IDV": self.individualism,
            "PDI": self.power_distance,
            "LTO": self.long_term_orientation,
            "STO": self.short_term_orientation,
            "MAS": self.masculinity,
            "IND": self.indulgence,
        }


def _check_score(name: str, value: float) -> None:
    if not 0.0 <= value <= 100.0:
        raise OutOfRangeError(f"{name} must sit in [0, 100], got {value}")


def collectivism_individualism(group_set: GroupSet, total: int) -> tuple[float, float]:
    """Percentage of grouped pedestrians and its exact complement."""
    if total < 1:
        raise OutOfRangeError("total pedestrian count must be positive")
    collectivism = 100.0 * len(group_set.grouped_ids) / total
    return collectivism, 100.0 - collectivism


def power_distance(group_set: GroupSet) -> tuple[float, bool]:
    """Mean within-group distance scaled by the social space; neutral
    50 with a fallback flag when no groups exist."""
    if not group_set.groups:
        return NEUTRAL_SCORE, True
    mean_distance = math.fsum(g.mean_distance for g in group_set.groups) / len(
        group_set.groups
    )
    return 100.0 * min(1.0, mean_distance / SOCIAL_SPACE_M), False


def long_term_orientation(orientation: float) -> tuple[float, float]:
    """Fold an orientation score into LTO in [50, 100] and its STO twin."""
    _check_score("orientation score", orientation)
    lto = orientation if orientation >= 50.0 else 100.0 - orientation
    return lto, 100.0 - lto


def masculinity(cohesion: float, lto: float) -> float:
    _check_score("cohesion score", cohesion)
    _check_score("long-term orientation", lto)
    return COHESION_WEIGHT * cohesion + (1.0 - COHESION_WEIGHT) * lto


def indulgence(speed: float, collectivism: float) -> float:
    _check_score("speed score", speed)
    _check_score("collectivism", collectivism)
    return SPEED_WEIGHT * speed + (1.0 - SPEED_WEIGHT) * collectivism


def hofstede_profile(
    group_set: GroupSet,
    total_pedestrians: int,
    population_orientation: float,
    population_speed: float,
) -> HofstedeProfile:
    """Assemble all seven dimensions for one video.

    ``population_orientation`` and ``population_speed`` are the
    pedestrian-level score means used whenever no group exists; with
    groups present the group score means take over.
    """
    collectivism, individualism = collectivism_individualism(
        group_set, total_pedestrians
    )
    pdi, fallback = power_distance(group_set)
    if group_set.groups:
        count = len(group_set.groups)
        orientation = math.fsum(g.orientation_score for g in group_set.groups) / count
        cohesion = math.fsum(g.cohesion for g in group_set.groups) / count
        speed = math.fsum(g.speed_score for g in group_set.groups) / count
    else:
        orientation = population_orientation
        cohesion = NEUTRAL_SCORE
        speed = population_speed
    lto, sto = long_term_orientation(orientation)
    return HofstedeProfile(
        collectivism=collectivism,
        individualism=individualism,
        power_distance=pdi,
        long_term_orientation=lto,
        short_term_orientation=sto,
        masculinity=masculinity(cohesion, lto),
        indulgence=indulgence(speed, collectivism),
        group_fallback=fallback,
    )
