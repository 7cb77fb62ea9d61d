"""Per-sample stochastic training of the quaternion MLP.

Two rules share the same gradient machinery:

* ``mse``: plain gradient descent on the squared error norm_sq(err).
* ``mcc``: the same step scaled by the correntropy of the current error,
  exp(-norm_sq(err) / (2 sigma^2)).  The scale approaches 1 for small errors
  and vanishes for outliers, which is what buys robustness to impulses.

All four parameter blocks are updated simultaneously from a single trace at
the pre-update parameters.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

import numpy as np

from .network import MLPGradients, MLPParams, mlp_gradients
from .quat import norm_sq

__all__ = ["TrainConfig", "StepReport", "DivergenceError", "mcc_cost", "mse_step", "mcc_step", "train"]

Rule = Literal["mse", "mcc"]


@dataclass(frozen=True)
class TrainConfig:
    """Step sizes, correntropy kernel width, iteration budget and seed."""

    eta_w1: float = 1e-2
    eta_b1: float = 1e-2
    eta_w2: float = 1e-2
    eta_b2: float = 1e-2
    sigma: float = 1.0
    iterations: int = 3000
    seed: int = 0

    def __post_init__(self):
        for name in ("eta_w1", "eta_b1", "eta_w2", "eta_b2"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value >= 0):
                raise ValueError(f"{name} must be finite and >= 0, got {value}")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")


@dataclass(frozen=True)
class StepReport:
    """Learning-curve record for one training step."""

    index: int          # 1-based position in the sample stream
    err: np.ndarray     # (4,) error at the pre-update parameters
    cost_mse: float     # norm_sq(err)
    cost_mcc: float     # exp(-cost_mse / (2 sigma^2))


class DivergenceError(RuntimeError):
    """A step produced a non-finite parameter."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


def mcc_cost(err: np.ndarray, sigma: float) -> float:
    """Correntropy of an error quaternion, in (0, 1]."""
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    return math.exp(-norm_sq(err) / (2.0 * sigma * sigma))


def _apply(
    params: MLPParams, grads: MLPGradients, cfg: TrainConfig, scale: float, index: int
) -> MLPParams:
    # overflow here is exactly the condition the finite check below reports,
    # so numpy's own warning adds nothing
    with np.errstate(over="ignore", invalid="ignore"):
        new = MLPParams(
            w1=params.w1 + (scale * cfg.eta_w1) * grads.w1,
            b1=params.b1 + (scale * cfg.eta_b1) * grads.b1,
            w2=params.w2 + (scale * cfg.eta_w2) * grads.w2,
            b2=params.b2 + (scale * cfg.eta_b2) * grads.b2,
        )
    for name in ("w1", "b1", "w2", "b2"):
        if not np.isfinite(getattr(new, name)).all():
            raise DivergenceError(f"non-finite {name} after update at iteration {index}", index)
    return new


def mse_step(
    params: MLPParams, x: np.ndarray, target: np.ndarray, cfg: TrainConfig, index: int = 0
) -> tuple[MLPParams, StepReport]:
    """One squared-error gradient step on a single sample."""
    trace, grads = mlp_gradients(params, x, target)
    cost = norm_sq(trace.err)
    report = StepReport(index=index, err=trace.err, cost_mse=cost, cost_mcc=mcc_cost(trace.err, cfg.sigma))
    return _apply(params, grads, cfg, 1.0, index), report


def mcc_step(
    params: MLPParams, x: np.ndarray, target: np.ndarray, cfg: TrainConfig, index: int = 0
) -> tuple[MLPParams, StepReport]:
    """One correntropy-gated step: the mse step scaled by cost_mcc of the error."""
    trace, grads = mlp_gradients(params, x, target)
    cost = norm_sq(trace.err)
    gate = mcc_cost(trace.err, cfg.sigma)
    report = StepReport(index=index, err=trace.err, cost_mse=cost, cost_mcc=gate)
    return _apply(params, grads, cfg, gate, index), report


_STEPS = {"mse": mse_step, "mcc": mcc_step}


def train(
    params: MLPParams,
    stream: Iterable[tuple[np.ndarray, np.ndarray]] | Sequence,
    cfg: TrainConfig,
    rule: Rule,
) -> tuple[MLPParams, list[StepReport]]:
    """Apply the chosen rule to every (x, target) sample in stream order.

    Accepts (x, target) tuples or any object with .x and .target attributes.
    Returns the final parameters and the full learning curve.
    """
    try:
        step = _STEPS[rule]
    except KeyError:
        raise ValueError(f"rule must be 'mse' or 'mcc', got {rule!r}") from None
    reports: list[StepReport] = []
    for i, sample in enumerate(stream, start=1):
        if hasattr(sample, "x"):
            x, target = sample.x, sample.target
        else:
            x, target = sample
        params, report = step(params, x, target, cfg, index=i)
        reports.append(report)
    return params, reports
