"""Scaled conjugate gradient minimizer for small dense parameter vectors.

Implements Moller's scaled conjugate gradient scheme (Neural Networks 6,
1993): conjugate directions with a Levenberg-Marquardt style scaling
parameter lambda instead of a line search. Curvature along the current
direction is estimated from a finite gradient difference, negative
curvature is lifted to keep the quadratic model positive definite, and
lambda shrinks or grows with the quality of each predicted reduction.
The direction is restarted to steepest descent every ``n`` iterations
for an ``n``-dimensional problem.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DivergedTrainingError

LossAndGrad = Callable[[np.ndarray], tuple[float, np.ndarray]]


@dataclass(frozen=True)
class ScgParams:
    max_epochs: int = 300
    sigma0: float = 1e-4
    lambda_init: float = 1e-6
    target_loss: float = 0.0
    seed: int = 7

    def validate(self) -> None:
        if self.max_epochs < 1:
            raise ValueError("max_epochs must be at least 1")
        if not 0 < self.sigma0 <= 1e-2:
            raise ValueError("sigma0 must be a small positive step")
        if not 0 < self.lambda_init <= 1.0:
            raise ValueError("lambda_init must be in (0, 1]")


@dataclass
class ScgResult:
    w: np.ndarray
    loss: float
    iterations: int
    accepted_losses: list[float]
    stop_reason: str


def _check_finite(loss: float, grad: np.ndarray) -> None:
    if not math.isfinite(loss) or not np.all(np.isfinite(grad)):
        raise DivergedTrainingError("loss or gradient became non-finite")


def minimize(fun: LossAndGrad, w0: np.ndarray, params: ScgParams | None = None) -> ScgResult:
    """Minimize ``fun`` from ``w0``; ``fun`` returns (loss, gradient).

    The accepted-loss history is non-increasing by construction: a step
    is only taken when the comparison parameter signals an actual
    reduction.
    """
    params = params or ScgParams()
    params.validate()
    w = np.array(w0, dtype=float, copy=True)
    n = w.size
    loss, grad = fun(w)
    _check_finite(loss, grad)
    r = -grad
    p = r.copy()
    lam = params.lambda_init
    lam_bar = 0.0
    success = True
    delta_raw = 0.0
    losses = [loss]
    stop = "max_epochs"
    iterations = 0

    for k in range(1, params.max_epochs + 1):
        iterations = k
        p_sq = float(p @ p)
        if p_sq == 0.0:
            stop = "zero_direction"
            break
        if success:
            sigma = params.sigma0 / math.sqrt(p_sq)
            _, grad_probe = fun(w + sigma * p)
            _check_finite(0.0, grad_probe)
            s = (grad_probe - (-r)) / sigma
            delta_raw = float(p @ s)
        delta = delta_raw + (lam - lam_bar) * p_sq
        if delta <= 0.0:
            lam_bar = 2.0 * (lam - delta / p_sq)
            delta = -delta + lam * p_sq
            lam = lam_bar
        mu = float(p @ r)
        alpha = mu / delta
        trial_loss, trial_grad = fun(w + alpha * p)
        _check_finite(trial_loss, trial_grad)
        comparison = 2.0 * delta * (loss - trial_loss) / (mu * mu)
        if comparison >= 0.0:
            w = w + alpha * p
            loss = trial_loss
            r_new = -trial_grad
            lam_bar = 0.0
            success = True
            if k % n == 0:
                p = r_new.copy()
            else:
                beta = float((r_new @ r_new - r_new @ r) / mu)
                p = r_new + beta * p
            r = r_new
            losses.append(loss)
            if comparison >= 0.75:
                lam *= 0.25
            if params.target_loss > 0.0 and loss <= params.target_loss:
                stop = "target_loss"
                break
            if float(r @ r) < 1e-18:
                stop = "gradient_vanished"
                break
        else:
            lam_bar = lam
            success = False
        if comparison < 0.25:
            lam = lam + delta * (1.0 - comparison) / p_sq
    return ScgResult(
        w=w,
        loss=loss,
        iterations=iterations,
        accepted_losses=losses,
        stop_reason=stop,
    )
