"""Finite-difference certification of the analytic MLP gradients.

The oracle perturbs every real parameter component in turn, takes central
differences of the scalar cost norm_sq(err), and assembles the four partials
of each quaternion into the gradient quaternion (their quaternion divided by
four).  The analytic blocks store -2 times that gradient, so the check
compares ``analytic`` against ``-2 * assembly`` and reports the worst
relative error per parameter block.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .network import MLPGradients, MLPParams, forward, mlp_gradients
from .quat import norm_sq

__all__ = ["GradCheckReport", "fd_gradients", "run_gradient_check"]

BLOCKS = ("w1", "b1", "w2", "b2")
BLOCK_LABELS = {
    "w1": "input-weights",
    "b1": "hidden-bias",
    "w2": "output-weights",
    "b2": "output-bias",
}


def _cost(params: MLPParams, x: np.ndarray, target: np.ndarray) -> float:
    return norm_sq(forward(params, x, target).err)


def fd_gradients(
    params: MLPParams, x: np.ndarray, target: np.ndarray, step: float = 1e-5
) -> MLPGradients:
    """Central-difference gradient quaternions of the squared error, per block."""
    out = {}
    for name in BLOCKS:
        base = getattr(params, name)
        partials = np.zeros_like(base)
        it = np.nditer(base, flags=["multi_index"])
        while not it.finished:
            idx = it.multi_index
            plus = base.copy()
            minus = base.copy()
            plus[idx] += step
            minus[idx] -= step
            cost_plus = _cost(replace(params, **{name: plus}), x, target)
            cost_minus = _cost(replace(params, **{name: minus}), x, target)
            partials[idx] = (cost_plus - cost_minus) / (2.0 * step)
            it.iternext()
        out[name] = partials / 4.0
    return MLPGradients(**out)


@dataclass(frozen=True)
class GradCheckReport:
    """Worst relative error per block over all instances."""

    m: int
    n: int
    instances: int
    errors: dict[str, float]    # block name -> max relative error
    tolerance: float

    @property
    def passed(self) -> bool:
        return all(err < self.tolerance for err in self.errors.values())

    @property
    def failing_blocks(self) -> list[str]:
        return [name for name, err in self.errors.items() if not err < self.tolerance]

    def lines(self) -> list[str]:
        out = []
        for name in BLOCKS:
            err = self.errors[name]
            status = "ok" if err < self.tolerance else "FAIL"
            out.append(f"{BLOCK_LABELS[name]:>15s}  max rel err {err:.3e}  [{status}]")
        verdict = "PASS" if self.passed else "FAIL: " + ", ".join(
            BLOCK_LABELS[b] for b in self.failing_blocks
        )
        out.append(
            f"gradient check over {self.instances} instances (m={self.m}, n={self.n}): {verdict}"
        )
        return out


def run_gradient_check(
    m: int = 3,
    n: int = 2,
    instances: int = 100,
    seed: int = 0,
    tolerance: float = 1e-5,
    step: float = 1e-5,
    gradient_fn: Callable[[MLPParams, np.ndarray, np.ndarray], MLPGradients] | None = None,
) -> GradCheckReport:
    """Compare analytic gradients against the finite-difference oracle.

    Random parameters, inputs and targets have components in [-1, 1].
    ``gradient_fn`` exists so a deliberately corrupted gradient can be fed
    through the same comparison; by default the library's analytic gradients
    are checked.
    """
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be >= 1, got m={m}, n={n}")
    if instances < 1:
        raise ValueError(f"instances must be >= 1, got {instances}")
    if gradient_fn is None:
        gradient_fn = lambda p, x, d: mlp_gradients(p, x, d)[1]
    rng = np.random.default_rng(seed)
    worst = {name: 0.0 for name in BLOCKS}
    for _ in range(instances):
        params = MLPParams(
            w1=rng.uniform(-1, 1, (m, n, 4)),
            b1=rng.uniform(-1, 1, (n, 4)),
            w2=rng.uniform(-1, 1, (n, 4)),
            b2=rng.uniform(-1, 1, 4),
        )
        x = rng.uniform(-1, 1, (m, 4))
        target = rng.uniform(-1, 1, 4)
        analytic = gradient_fn(params, x, target)
        oracle = fd_gradients(params, x, target, step=step)
        for name in BLOCKS:
            expected = -2.0 * getattr(oracle, name)
            scale = max(float(np.max(np.abs(expected))), 1e-12)
            err = float(np.max(np.abs(getattr(analytic, name) - expected))) / scale
            if err > worst[name]:
                worst[name] = err
    return GradCheckReport(m=m, n=n, instances=instances, errors=worst, tolerance=tolerance)
