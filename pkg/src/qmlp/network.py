"""One-hidden-layer quaternion MLP: forward pass and analytic gradients.

Architecture, for an input vector x of m quaternions and n hidden units:

    hidden_pre = conj(w1)^T x + b1          (n, 4)
    hidden_out = split_tanh(hidden_pre)     (n, 4)
    out_pre    = conj(w2)^T hidden_out + b2 (4,)
    out        = split_tanh(out_pre)
    err        = target - out

The gradient routines return ascent directions for the squared error
norm_sq(err): each stored block equals -2 times the quaternion gradient
(the quaternion whose components are the four real partials, divided by 4).
The leftover constant is folded into the step sizes, and the scaling is
pinned by the finite-difference checks in ``qmlp.gradcheck``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .activation import split_tanh, split_tanh_grad
from .quat import (
    as_quat,
    as_qmatrix,
    as_qvector,
    conjugate,
    hamilton_mul,
    hermitian_dot,
    hermitian_matvec,
    split_product,
)

__all__ = [
    "MLPParams",
    "ForwardTrace",
    "MLPGradients",
    "init_params",
    "forward",
    "grad_b2",
    "grad_w2",
    "grad_b1",
    "grad_w1",
    "mlp_gradients",
]


@dataclass(frozen=True)
class MLPParams:
    """Trainable parameters. Immutable; updates build a new instance."""

    w1: np.ndarray  # (m, n, 4) input-to-hidden weights
    b1: np.ndarray  # (n, 4) hidden bias
    w2: np.ndarray  # (n, 4) hidden-to-output weights
    b2: np.ndarray  # (4,) output bias

    def __post_init__(self):
        w1 = as_qmatrix(self.w1, "w1")
        b1 = as_qvector(self.b1, "b1")
        w2 = as_qvector(self.w2, "w2")
        b2 = as_quat(self.b2, "b2")
        m, n = w1.shape[0], w1.shape[1]
        if m < 1 or n < 1:
            raise ValueError(f"network needs at least one input and one hidden unit, got m={m}, n={n}")
        if b1.shape[0] != n or w2.shape[0] != n:
            raise ValueError(
                f"hidden size mismatch: w1 has {n} columns, b1 has {b1.shape[0]} "
                f"elements, w2 has {w2.shape[0]}"
            )
        for name, arr in (("w1", w1), ("b1", b1), ("w2", w2), ("b2", b2)):
            object.__setattr__(self, name, arr)

    @property
    def m(self) -> int:
        return self.w1.shape[0]

    @property
    def n(self) -> int:
        return self.w1.shape[1]


def init_params(m: int, n: int, rng: np.random.Generator) -> MLPParams:
    """Random parameters with i.i.d. uniform components in [-0.5, 0.5].

    The symmetric small range keeps the tanh units in their linear region at
    the start of training.  Draw order is fixed (w1, b1, w2, b2) so a seeded
    generator reproduces the same network.
    """
    return MLPParams(
        w1=rng.uniform(-0.5, 0.5, size=(m, n, 4)),
        b1=rng.uniform(-0.5, 0.5, size=(n, 4)),
        w2=rng.uniform(-0.5, 0.5, size=(n, 4)),
        b2=rng.uniform(-0.5, 0.5, size=4),
    )


@dataclass(frozen=True)
class ForwardTrace:
    """Every intermediate value one pass produces; the gradients reuse it."""

    hidden_pre: np.ndarray    # (n, 4)
    hidden_out: np.ndarray    # (n, 4)
    hidden_slope: np.ndarray  # (n, 4) componentwise sech^2 of hidden_pre
    out_pre: np.ndarray       # (4,)
    out: np.ndarray           # (4,)
    out_slope: np.ndarray     # (4,)
    err: np.ndarray           # (4,) target - out


@dataclass(frozen=True)
class MLPGradients:
    """Ascent directions per parameter block, pre step size."""

    w1: np.ndarray  # (m, n, 4)
    b1: np.ndarray  # (n, 4)
    w2: np.ndarray  # (n, 4)
    b2: np.ndarray  # (4,)


def forward(params: MLPParams, x: np.ndarray, target: np.ndarray) -> ForwardTrace:
    """Run one sample through the network, caching all intermediates."""
    x = as_qvector(x, "x")
    if x.shape[0] != params.m:
        raise ValueError(f"input has {x.shape[0]} elements, network expects {params.m}")
    target = as_quat(target, "target")
    hidden_pre = hermitian_matvec(params.w1, x) + params.b1
    hidden_out = split_tanh(hidden_pre)
    out_pre = hermitian_dot(params.w2, hidden_out) + params.b2
    out = split_tanh(out_pre)
    return ForwardTrace(
        hidden_pre=hidden_pre,
        hidden_out=hidden_out,
        hidden_slope=split_tanh_grad(hidden_pre),
        out_pre=out_pre,
        out=out,
        out_slope=split_tanh_grad(out_pre),
        err=target - out,
    )


def grad_b2(trace: ForwardTrace) -> np.ndarray:
    """Output-bias ascent direction: slope ⊙ err."""
    return split_product(trace.out_slope, trace.err)


def grad_w2(trace: ForwardTrace) -> np.ndarray:
    """Output-weights ascent direction: hidden_out_k * (slope ⊙ conj(err))."""
    return hamilton_mul(trace.hidden_out, split_product(trace.out_slope, conjugate(trace.err)))


def grad_b1(trace: ForwardTrace, w2: np.ndarray) -> np.ndarray:
    """Hidden-bias ascent direction: (w2_k * (slope ⊙ err)) ⊙ hidden_slope_k.

    w2 multiplies from the left; Hamilton products do not commute and the
    finite-difference oracle pins this ordering.
    """
    back = hamilton_mul(as_qvector(w2, "w2"), split_product(trace.out_slope, trace.err))
    return split_product(back, trace.hidden_slope)


def grad_w1(trace: ForwardTrace, params: MLPParams, x: np.ndarray) -> np.ndarray:
    """Input-weights ascent direction: the outer product x_j * conj(t_k).

    t is the per-hidden-unit factor from grad_b1, so entry (j, k) couples
    input element j with hidden unit k.
    """
    x = as_qvector(x, "x")
    if x.shape[0] != params.m:
        raise ValueError(f"input has {x.shape[0]} elements, network expects {params.m}")
    t = grad_b1(trace, params.w2)
    return hamilton_mul(x[:, None, :], conjugate(t)[None, :, :])


def mlp_gradients(
    params: MLPParams, x: np.ndarray, target: np.ndarray
) -> tuple[ForwardTrace, MLPGradients]:
    """One forward pass, then all four gradient blocks from the shared trace."""
    trace = forward(params, x, target)
    grads = MLPGradients(
        w1=grad_w1(trace, params, x),
        b1=grad_b1(trace, params.w2),
        w2=grad_w2(trace),
        b2=grad_b2(trace),
    )
    return trace, grads
