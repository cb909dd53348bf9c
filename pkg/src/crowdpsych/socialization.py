"""Socialization classifier: a 3-10-2 network trained with SCG.

The network reads three frame-level features per pedestrian, i.e.
collectivity, mean distance to the others and the neighbor count inside
the social space, and outputs softmax probabilities for non-social and
social behaviour. Training data is synthesized from a documented
reference rule so the classifier can be rebuilt deterministically from a
seed anywhere.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import scg
from .errors import OutOfRangeError
from .scg import ScgParams
from .social import SOCIAL_SPACE_M

INPUT_FEATURES = 3
HIDDEN_UNITS = 10
CLASSES = 2

DEFAULT_SAMPLE_COUNT = 16000
TRAIN_FRACTION = 0.7
LABEL_NOISE_RATE = 0.1

NET_FORMAT_TAG = "socialization-net"
NET_FORMAT_VERSION = 1

PARAM_COUNT = (
    HIDDEN_UNITS * INPUT_FEATURES
    + HIDDEN_UNITS
    + CLASSES * HIDDEN_UNITS
    + CLASSES
)


@dataclass(frozen=True)
class SocialSample:
    collectivity: float
    mean_distance: float
    neighbor_count: int
    social: bool


def reference_social_rule(
    collectivity: float, mean_distance: float, neighbor_count: int
) -> bool:
    """Label rule behind the synthetic training data.

    A pedestrian counts as social with at least one neighbor in the
    social space, a collectivity of 0.5 or more and a mean distance to
    the others within the social-space radius.
    """
    return (
        neighbor_count >= 1
        and collectivity >= 0.5
        and mean_distance <= SOCIAL_SPACE_M
    )


def synthesize_dataset(
    count: int, seed: int, noise_rate: float = LABEL_NOISE_RATE
) -> list[SocialSample]:
    """Draw labeled samples over the documented feature ranges.

    Features are uniform over collectivity [0, 1], mean distance [0, 10]
    and integer neighbor counts 0..10. A noise_rate share of the labels
    is flipped, deterministically from the seed.
    """
    if count < 1:
        raise OutOfRangeError("sample count must be positive")
    if not 0.0 <= noise_rate < 0.5:
        raise OutOfRangeError("noise rate must sit in [0, 0.5)")
    rng = np.random.default_rng(seed)
    phi = rng.uniform(0.0, 1.0, count)
    dbar = rng.uniform(0.0, 10.0, count)
    neighbors = rng.integers(0, 11, count)
    labels = (neighbors >= 1) & (phi >= 0.5) & (dbar <= SOCIAL_SPACE_M)
    flips = rng.random(count) < noise_rate
    labels = labels ^ flips
    return [
        SocialSample(float(phi[i]), float(dbar[i]), int(neighbors[i]), bool(labels[i]))
        for i in range(count)
    ]


@dataclass
class SocializationNet:
    """Weights plus the input standardization captured at training time."""

    w1: np.ndarray
    b1: np.ndarray
    w2: np.ndarray
    b2: np.ndarray
    input_mean: np.ndarray
    input_std: np.ndarray

    def predict_proba(self, features: np.ndarray) -> np.ndarray:
        """Softmax probabilities, column 0 non-social and column 1 social."""
        x = (np.atleast_2d(features) - self.input_mean) / self.input_std
        hidden = np.tanh(x @ self.w1.T + self.b1)
        logits = hidden @ self.w2.T + self.b2
        logits -= logits.max(axis=1, keepdims=True)
        exp = np.exp(logits)
        return exp / exp.sum(axis=1, keepdims=True)


def socialization_level(
    net: SocializationNet,
    collectivity: float,
    mean_distance: float,
    neighbor_count: float,
) -> float:
    """Probability of social behaviour for one feature triple."""
    proba = net.predict_proba(
        np.array([[collectivity, mean_distance, neighbor_count]])
    )
    return float(proba[0, 1])


def _unflatten(w: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    i = 0
    w1 = w[i : i + HIDDEN_UNITS * INPUT_FEATURES].reshape(HIDDEN_UNITS, INPUT_FEATURES)
    i += HIDDEN_UNITS * INPUT_FEATURES
    b1 = w[i : i + HIDDEN_UNITS]
    i += HIDDEN_UNITS
    w2 = w[i : i + CLASSES * HIDDEN_UNITS].reshape(CLASSES, HIDDEN_UNITS)
    i += CLASSES * HIDDEN_UNITS
    b2 = w[i : i + CLASSES]
    return w1, b1, w2, b2


def flatten_params(net: SocializationNet) -> np.ndarray:
    return np.concatenate(
        [net.w1.ravel(), net.b1.ravel(), net.w2.ravel(), net.b2.ravel()]
    )


def cross_entropy_loss_and_grad(
    w: np.ndarray, x: np.ndarray, targets: np.ndarray
) -> tuple[float, np.ndarray]:
    """Mean cross entropy of the 3-10-2 net and its full gradient.

    ``x`` must already be standardized; ``targets`` is one-hot with the
    social class in column 1.
    """
    w1, b1, w2, b2 = _unflatten(w)
    hidden = np.tanh(x @ w1.T + b1)
    logits = hidden @ w2.T + b2
    logits_shifted = logits - logits.max(axis=1, keepdims=True)
    exp = np.exp(logits_shifted)
    proba = exp / exp.sum(axis=1, keepdims=True)
    m = x.shape[0]
    loss = float(-(targets * np.log(np.maximum(proba, 1e-300))).sum() / m)

    d_logits = (proba - targets) / m
    g_w2 = d_logits.T @ hidden
    g_b2 = d_logits.sum(axis=0)
    d_hidden = (d_logits @ w2) * (1.0 - hidden**2)
    g_w1 = d_hidden.T @ x
    g_b1 = d_hidden.sum(axis=0)
    grad = np.concatenate([g_w1.ravel(), g_b1, g_w2.ravel(), g_b2])
    return loss, grad


@dataclass(frozen=True)
class TrainingReport:
    train_accuracy: float
    validation_accuracy: float
    final_loss: float
    iterations: int
    seconds: float
    stop_reason: str


def _accuracy(net: SocializationNet, features: np.ndarray, labels: np.ndarray) -> float:
    predicted = net.predict_proba(features).argmax(axis=1)
    return float((predicted == labels).mean())


def train_socialization_net(
    samples: list[SocialSample], params: ScgParams | None = None
) -> tuple[SocializationNet, TrainingReport]:
    """Train on a 70/30 split; fully deterministic for a given seed.

    Inputs are standardized with statistics of the training split and
    those statistics travel with the returned net. Initial weights are
    small seeded normals, never all zero.
    """
    params = params or ScgParams()
    if len(samples) < 100:
        raise OutOfRangeError("training needs at least 100 samples")
    features = np.array(
        [[s.collectivity, s.mean_distance, s.neighbor_count] for s in samples],
        dtype=float,
    )
    labels = np.array([1 if s.social else 0 for s in samples], dtype=int)

    rng = np.random.default_rng(params.seed)
    order = rng.permutation(len(samples))
    n_train = int(round(TRAIN_FRACTION * len(samples)))
    train_idx, val_idx = order[:n_train], order[n_train:]

    mean = features[train_idx].mean(axis=0)
    std = np.maximum(features[train_idx].std(axis=0), 1e-12)
    x_train = (features[train_idx] - mean) / std
    targets = np.zeros((n_train, CLASSES))
    targets[np.arange(n_train), labels[train_idx]] = 1.0

    w0 = np.concatenate(
        [
            rng.normal(0.0, 1.0 / math.sqrt(INPUT_FEATURES), HIDDEN_UNITS * INPUT_FEATURES),
            np.zeros(HIDDEN_UNITS),
            rng.normal(0.0, 1.0 / math.sqrt(HIDDEN_UNITS), CLASSES * HIDDEN_UNITS),
            np.zeros(CLASSES),
        ]
    )

    started = time.perf_counter()
    result = scg.minimize(
        lambda w: cross_entropy_loss_and_grad(w, x_train, targets), w0, params
    )
    elapsed = time.perf_counter() - started

    w1, b1, w2, b2 = _unflatten(result.w)
    net = SocializationNet(
        w1=w1.copy(),
        b1=b1.copy(),
        w2=w2.copy(),
        b2=b2.copy(),
        input_mean=mean,
        input_std=std,
    )
    report = TrainingReport(
        train_accuracy=_accuracy(net, features[train_idx], labels[train_idx]),
        validation_accuracy=_accuracy(net, features[val_idx], labels[val_idx]),
        final_loss=result.loss,
        iterations=result.iterations,
        seconds=elapsed,
        stop_reason=result.stop_reason,
    )
    return net, report


def rule_accuracy(net: SocializationNet, samples: list[SocialSample]) -> float:
    """Share of predictions that agree with the noise-free reference rule."""
    features = np.array(
        [[s.collectivity, s.mean_distance, s.neighbor_count] for s in samples],
        dtype=float,
    )
    clean = np.array(
        [
            1 if reference_social_rule(s.collectivity, s.mean_distance, s.neighbor_count) else 0
            for s in samples
        ],
        dtype=int,
    )
    return _accuracy(net, features, clean)


def _format_row(values: np.ndarray) -> str:
    return " ".join(f"{v:.9g}" for v in np.asarray(values).ravel())


def format_net(net: SocializationNet) -> str:
    """Plain-text serialization, 9 significant digits per value."""
    lines = [
        f"{NET_FORMAT_TAG} v{NET_FORMAT_VERSION}",
        f"layers {INPUT_FEATURES} {HIDDEN_UNITS} {CLASSES}",
        "activations tanh softmax",
        "input_mean " + _format_row(net.input_mean),
        "input_std " + _format_row(net.input_std),
        "w1 " + _format_row(net.w1),
        "b1 " + _format_row(net.b1),
        "w2 " + _format_row(net.w2),
        "b2 " + _format_row(net.b2),
    ]
    return "\n".join(lines) + "\n"


def save_net(net: SocializationNet, path: Path) -> None:
    Path(path).write_text(format_net(net), encoding="utf-8")


def _parse_fields(line: str, key: str, count: int) -> np.ndarray:
    parts = line.split()
    if not parts or parts[0] != key:
        raise ValueError(f"expected '{key} ...' line, got {line!r}")
    values = np.array([float(v) for v in parts[1:]], dtype=float)
    if values.size != count:
        raise ValueError(f"{key}: expected {count} values, found {values.size}")
    return values


def parse_net(text: str) -> SocializationNet:
    lines = [line for line in text.splitlines() if line.strip()]
    if len(lines) != 9:
        raise ValueError(f"expected 9 non-empty lines, found {len(lines)}")
    if lines[0].split() != [NET_FORMAT_TAG, f"v{NET_FORMAT_VERSION}"]:
        raise ValueError(f"unknown net format header {lines[0]!r}")
    expected_layers = f"layers {INPUT_FEATURES} {HIDDEN_UNITS} {CLASSES}"
    if lines[1] != expected_layers:
        raise ValueError(f"unsupported layer sizes {lines[1]!r}")
    if lines[2] != "activations tanh softmax":
        raise ValueError(f"unsupported activations {lines[2]!r}")
    mean = _parse_fields(lines[3], "input_mean", INPUT_FEATURES)
    std = _parse_fields(lines[4], "input_std", INPUT_FEATURES)
    w1 = _parse_fields(lines[5], "w1", HIDDEN_UNITS * INPUT_FEATURES)
    b1 = _parse_fields(lines[6], "b1", HIDDEN_UNITS)
    w2 = _parse_fields(lines[7], "w2", CLASSES * HIDDEN_UNITS)
    b2 = _parse_fields(lines[8], "b2", CLASSES)
    return SocializationNet(
        w1=w1.reshape(HIDDEN_UNITS, INPUT_FEATURES),
        b1=b1,
        w2=w2.reshape(CLASSES, HIDDEN_UNITS),
        b2=b2,
        input_mean=mean,
        input_std=std,
    )


def load_net(path: Path) -> SocializationNet:
    return parse_net(Path(path).read_text(encoding="utf-8"))
