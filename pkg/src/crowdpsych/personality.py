"""Trajectory-derived questionnaire items mapped onto the five factors.

Each item is a small arithmetic expression over the per-pedestrian
feature vector. Raw item values are normalized per video onto a 1..5
Likert scale by min-max over all pedestrians, then factor scores are the
mean Likert value of the factor's items rescaled to [0, 1]. Items can be
swapped out at startup through a plain-text registry file with
``id;factor;expression`` lines.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Mapping, Sequence

from .errors import EmptyFactorError, RegistryError
from .kinematics import MIN_ANGVAR_DEG, FeatureVector

FACTORS = ("O", "C", "E", "A", "N")
FACTOR_NAMES = {
    "O": "openness",
    "C": "conscientiousness",
    "E": "extraversion",
    "A": "agreeableness",
    "N": "neuroticism",
}
LIKERT_MIN = 1.0
LIKERT_MAX = 5.0
LIKERT_NEUTRAL = 3.0
DIV_EPSILON = 1e-9


@dataclass(frozen=True)
class OceanProfile:
    openness: float
    conscientiousness: float
    extraversion: float
    agreeableness: float
    neuroticism: float

    def by_letter(self) -> dict[str, float]:
        return {
            "O": self.openness,
            "C": self.conscientiousness,
            "E": self.extraversion,
            "A": self.agreeableness,
            "N": self.neuroticism,
        }


def feature_variables(vector: FeatureVector) -> dict[str, float]:
    """Names an item expression may reference, with division-safe twins."""
    if vector.socialization is None or vector.collectivity is None:
        raise ValueError(
            f"pedestrian {vector.pedestrian_id}: social features missing; "
            "items need the full feature vector"
        )
    return {
        "mean_x": vector.mean_x,
        "mean_y": vector.mean_y,
        "mean_speed": vector.mean_speed,
        "mean_speed_mps": vector.mean_speed_mps,
        "mean_angular_variation": vector.mean_angular_variation,
        "mean_angular_variation_clamped": max(
            vector.mean_angular_variation, MIN_ANGVAR_DEG
        ),
        "path_length": vector.path_length,
        "net_displacement": vector.net_displacement,
        "speed_std_dev": vector.speed_std_dev,
        "heading_std_dev": vector.heading_std_dev,
        "collectivity": vector.collectivity,
        "socialization": vector.socialization,
        "isolation": vector.isolation,
        "mean_distance_to_others": vector.mean_distance_to_others,
        "mean_neighbor_count": vector.mean_neighbor_count,
    }


VARIABLE_NAMES = (
    "mean_x",
    "mean_y",
    "mean_speed",
    "mean_speed_mps",
    "mean_angular_variation",
    "mean_angular_variation_clamped",
    "path_length",
    "net_displacement",
    "speed_std_dev",
    "heading_std_dev",
    "collectivity",
    "socialization",
    "isolation",
    "mean_distance_to_others",
    "mean_neighbor_count",
)

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?|\.\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/()]))"
)


def _tokenize(expression: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    pos = 0
    while pos < len(expression):
        match = _TOKEN_RE.match(expression, pos)
        if match is None:
            raise RegistryError(
                f"unexpected character {expression[pos]!r} in {expression!r}"
            )
        if match.lastgroup is not None:
            tokens.append((match.lastgroup, match.group(match.lastgroup)))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over +, -, *, /, unary minus and parentheses."""

    def __init__(self, expression: str):
        self.expression = expression
        self.tokens = _tokenize(expression)
        self.pos = 0

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise RegistryError(f"unexpected end of expression in {self.expression!r}")
        self.pos += 1
        return token

    def parse(self) -> Callable[[Mapping[str, float]], float]:
        node = self.expr()
        if self.peek() is not None:
            raise RegistryError(
                f"trailing tokens after expression in {self.expression!r}"
            )
        return node

    def expr(self) -> Callable[[Mapping[str, float]], float]:
        node = self.term()
        while (token := self.peek()) is not None and token[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            if op == "+":
                node = (lambda a, b: lambda v: a(v) + b(v))(node, rhs)
            else:
                node = (lambda a, b: lambda v: a(v) - b(v))(node, rhs)
        return node

    def term(self) -> Callable[[Mapping[str, float]], float]:
        node = self.unary()
        while (token := self.peek()) is not None and token[1] in "*/":
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                node = (lambda a, b: lambda v: a(v) * b(v))(node, rhs)
            else:
                node = (lambda a, b: lambda v: _safe_div(a(v), b(v)))(node, rhs)
        return node

    def unary(self) -> Callable[[Mapping[str, float]], float]:
        token = self.peek()
        if token is not None and token[1] == "-":
            self.take()
            inner = self.unary()
            return lambda v: -inner(v)
        return self.atom()

    def atom(self) -> Callable[[Mapping[str, float]], float]:
        kind, value = self.take()
        if kind == "number":
            number = float(value)
            return lambda v: number
        if kind == "name":
            if value not in VARIABLE_NAMES:
                raise RegistryError(
                    f"unknown variable {value!r}; choose from {', '.join(VARIABLE_NAMES)}"
                )
            return lambda v: v[value]
        if value == "(":
            node = self.expr()
            closing = self.take()
            if closing[1] != ")":
                raise RegistryError(f"expected ')' in {self.expression!r}")
            return node
        raise RegistryError(f"unexpected token {value!r} in {self.expression!r}")


def _safe_div(numerator: float, denominator: float) -> float:
    if abs(denominator) < DIV_EPSILON:
        denominator = DIV_EPSILON if denominator >= 0 else -DIV_EPSILON
    return numerator / denominator


def compile_expression(expression: str) -> Callable[[Mapping[str, float]], float]:
    return _Parser(expression).parse()


@dataclass(frozen=True)
class ItemEquation:
    id: str
    factor: str
    expression: str
    evaluator: Callable[[Mapping[str, float]], float]
    description: str = ""

    def evaluate(self, vector: FeatureVector) -> float:
        return float(self.evaluator(feature_variables(vector)))


def make_item(item_id: str, factor: str, expression: str, description: str = "") -> ItemEquation:
    if factor not in FACTORS:
        raise RegistryError(f"item {item_id!r}: factor must be one of {FACTORS}")
    return ItemEquation(
        id=item_id,
        factor=factor,
        expression=expression,
        evaluator=compile_expression(expression),
        description=description,
    )


_DEFAULT_ITEM_SPECS = (
    ("O1", "O", "path_length / net_displacement", "route tortuosity"),
    ("O2", "O", "heading_std_dev", "spread of walking directions"),
    ("C1", "C", "mean_speed + 1 / mean_angular_variation_clamped", "steady, direct pace"),
    ("C2", "C", "net_displacement / path_length", "straightness of the route"),
    ("E1", "E", "socialization", "probability of social behaviour"),
    ("E2", "E", "mean_neighbor_count", "company kept within social space"),
    ("A1", "A", "collectivity", "motion similarity to the surroundings"),
    ("A2", "A", "1 / (1 + mean_distance_to_others)", "closeness to others"),
    ("N1", "N", "isolation", "probability of isolated behaviour"),
    ("N2", "N", "speed_std_dev", "pace irregularity"),
)


def default_registry() -> list[ItemEquation]:
    return [make_item(*spec) for spec in _DEFAULT_ITEM_SPECS]


def validate_registry(items: Sequence[ItemEquation]) -> None:
    """Every factor needs at least one item; ids must be unique."""
    ids = [item.id for item in items]
    if len(set(ids)) != len(ids):
        raise RegistryError("item ids must be unique")
    for factor in FACTORS:
        if not any(item.factor == factor for item in items):
            raise EmptyFactorError(f"factor {factor} has no items")


def load_registry(path: Path) -> list[ItemEquation]:
    """Parse an ``id;factor;expression`` registry file.

    Blank lines and lines starting with ``#`` are skipped. The registry
    is validated for factor coverage before it is returned.
    """
    items: list[ItemEquation] = []
    for line_no, raw_line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        parts = [part.strip() for part in line.split(";")]
        if len(parts) != 3:
            raise RegistryError(
                f"{path}:{line_no}: expected 'id;factor;expression', got {raw_line!r}"
            )
        try:
            items.append(make_item(parts[0], parts[1], parts[2]))
        except RegistryError as exc:
            raise RegistryError(f"{path}:{line_no}: {exc}") from None
    validate_registry(items)
    return items


def normalize_likert(raws: Mapping[int, float]) -> dict[int, float]:
    """Min-max the raw values of one item onto [1, 5].

    A constant column, including the single-pedestrian case, maps to the
    neutral 3.
    """
    values = list(raws.values())
    low = min(values)
    high = max(values)
    if high - low < 1e-12:
        return {ped_id: LIKERT_NEUTRAL for ped_id in raws}
    span = high - low
    return {
        ped_id: LIKERT_MIN + (LIKERT_MAX - LIKERT_MIN) * (value - low) / span
        for ped_id, value in raws.items()
    }


def ocean_profiles(
    features_by_ped: Mapping[int, FeatureVector],
    items: Sequence[ItemEquation] | None = None,
) -> dict[int, OceanProfile]:
    """Factor scores in [0, 1] for every pedestrian in the video."""
    if items is None:
        items = default_registry()
    validate_registry(items)
    likert_by_item: dict[str, dict[int, float]] = {}
    for item in items:
        raws = {
            ped_id: item.evaluate(vector)
            for ped_id, vector in features_by_ped.items()
        }
        likert_by_item[item.id] = normalize_likert(raws)

    profiles: dict[int, OceanProfile] = {}
    for ped_id in features_by_ped:
        scores: dict[str, float] = {}
        for factor in FACTORS:
            factor_items = [item for item in items if item.factor == factor]
            mean_likert = math.fsum(
                likert_by_item[item.id][ped_id] for item in factor_items
            ) / len(factor_items)
            scores[factor] = (mean_likert - LIKERT_MIN) / (LIKERT_MAX - LIKERT_MIN)
        profiles[ped_id] = OceanProfile(
            openness=scores["O"],
            conscientiousness=scores["C"],
            extraversion=scores["E"],
            agreeableness=scores["A"],
            neuroticism=scores["N"],
        )
    return profiles
