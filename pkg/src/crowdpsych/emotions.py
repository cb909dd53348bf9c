"""Factor-to-emotion mapping over a fixed sign table.

Every factor score in [0, 1] selects a table row (its high half or its
low half) and contributes with an intensity that grows linearly from 0
at the neutral 0.5 to 1 at either extreme. Emotion scores center on 0.5
and shift by the signed contribution sum scaled against the emotion's
maximum attainable magnitude, which keeps them inside [0, 1].
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import OutOfRangeError
from .personality import OceanProfile

EMOTIONS = ("fear", "happiness", "sadness", "anger")
FACTOR_ORDER = ("O", "C", "E", "A", "N")

SIGN_TABLE: dict[tuple[str, bool], tuple[int, int, int, int]] = {
    ("O", True): (0, 0, 0, -1),
    ("O", False): (0, 0, 0, 1),
    ("C", True): (-1, 0, 0, 0),
    ("C", False): (1, 0, 0, 0),
    ("E", True): (-1, 1, -1, -1),
    ("E", False): (1, 0, 0, 0),
    ("A", True): (0, 0, 0, -1),
    ("A", False): (0, 0, 0, 1),
    ("N", True): (1, -1, 1, 1),
    ("N", False): (-1, 1, -1, -1),
}


@dataclass(frozen=True)
class EmotionProfile:
    fear: float
    happiness: float
    sadness: float
    anger: float

    def by_name(self) -> dict[str, float]:
        return {
            "fear": self.fear,
            "happiness": self.happiness,
            "sadness": self.sadness,
            "anger": self.anger,
        }


def factor_contribution(value: float) -> tuple[bool, float]:
    """(row selector, intensity) for one factor score.

    Scores of 0.5 and above use the high row; the intensity is
    2 * |value - 0.5|, so the neutral center contributes nothing.
    """
    if not 0.0 <= value <= 1.0:
        raise OutOfRangeError(f"factor score {value} outside [0, 1]")
    return value >= 0.5, 2.0 * abs(value - 0.5)


def emotion_bound(emotion: str) -> float:
    """Largest |signed contribution sum| the table can produce.

    Found by enumerating every row choice with extreme intensities; the
    sum is linear in each intensity, so the extremes suffice.
    """
    index = EMOTIONS.index(emotion)
    best = 0.0
    for rows in product((True, False), repeat=len(FACTOR_ORDER)):
        entries = [
            SIGN_TABLE[(factor, row)][index]
            for factor, row in zip(FACTOR_ORDER, rows)
        ]
        for intensities in product((0.0, 1.0), repeat=len(FACTOR_ORDER)):
            total = sum(e * i for e, i in zip(entries, intensities))
            best = max(best, abs(total))
    return best


EMOTION_BOUNDS = {emotion: emotion_bound(emotion) for emotion in EMOTIONS}


def emotions_from_ocean(profile: OceanProfile) -> EmotionProfile:
    """Map one factor profile to the four emotion scores in [0, 1]."""
    contributions = {
        factor: factor_contribution(value)
        for factor, value in profile.by_letter().items()
    }
    scores: dict[str, float] = {}
    for index, emotion in enumerate(EMOTIONS):
        signed_sum = 0.0
        for factor in FACTOR_ORDER:
            row, intensity = contributions[factor]
            signed_sum += SIGN_TABLE[(factor, row)][index] * intensity
        raw = 0.5 + signed_sum / (2.0 * EMOTION_BOUNDS[emotion])
        scores[emotion] = min(1.0, max(0.0, raw))
    return EmotionProfile(
        fear=scores["fear"],
        happiness=scores["happiness"],
        sadness=scores["sadness"],
        anger=scores["anger"],
    )
