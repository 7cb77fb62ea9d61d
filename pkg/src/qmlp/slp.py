"""Quaternion nonlinear filter: a single-layer perceptron trained by LMS.

The filter output is the split activation of a Hermitian inner product,
``split_tanh(conj(w)^T u)``.  The per-sample update moves each weight along
``u_k * (slope ⊙ conj(e))``, which is the quaternion-gradient descent
direction for the squared error (constant factors folded into the step size).
"""
from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .activation import split_tanh, split_tanh_grad
from .quat import as_quat, as_qvector, hamilton_mul, hermitian_dot, split_product, conjugate

__all__ = ["SLPState", "slp_forward", "slp_error", "slp_update", "slp_update_componentwise"]


@dataclass(frozen=True)
class SLPState:
    """Filter weights plus step size.  Treated as an immutable value."""

    w: np.ndarray   # (n, 4) weights
    eta: float      # step size, >= 0

    def __post_init__(self):
        object.__setattr__(self, "w", as_qvector(self.w, "w"))
        if not np.isfinite(self.w).all():
            raise ValueError("filter weights must be finite")
        if not (np.isfinite(self.eta) and self.eta >= 0):
            raise ValueError(f"eta must be finite and >= 0, got {self.eta}")


def slp_forward(state: SLPState, u: np.ndarray) -> np.ndarray:
    """Filter output for one input vector."""
    return split_tanh(hermitian_dot(state.w, u))


def slp_error(d: np.ndarray, state: SLPState, u: np.ndarray) -> np.ndarray:
    """Error d - output for one (input, desired) pair."""
    return as_quat(d, "d") - slp_forward(state, u)


def slp_update(state: SLPState, u: np.ndarray, d: np.ndarray) -> SLPState:
    """One LMS step; returns the updated state.

    The scalar factor multiplying each input element is the split product of
    the slope quaternion with conj(e).
    """
    u = as_qvector(u, "u")
    x = hermitian_dot(state.w, u)
    e = as_quat(d, "d") - split_tanh(x)
    gate = split_product(split_tanh_grad(x), conjugate(e))
    return replace(state, w=state.w + state.eta * hamilton_mul(u, gate))


def slp_update_componentwise(state: SLPState, u: np.ndarray, d: np.ndarray) -> SLPState:
    """Same update with the scalar factor written out component by component.

    Kept as an executable cross-check that the compact split-product form and
    the explicit sign pattern (minus on the three imaginary terms) coincide.
    """
    u = as_qvector(u, "u")
    x = hermitian_dot(state.w, u)
    e = as_quat(d, "d") - split_tanh(x)
    s = split_tanh_grad(x)
    factor = np.array([s[0] * e[0], -(s[1] * e[1]), -(s[2] * e[2]), -(s[3] * e[3])])
    return replace(state, w=state.w + state.eta * hamilton_mul(u, factor))
