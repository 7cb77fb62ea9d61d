"""Split activation: a real tanh applied independently to each quaternion component.

Bounded analytic quaternion functions do not exist, so the activation acts on
the four real components separately.  Both functions broadcast over leading
axes and therefore serve scalars (4,) and vectors (n, 4) alike.

``split_tanh_grad`` returns the componentwise sech^2 slope quaternion.  This
is four times the quaternion-calculus derivative of ``split_tanh``; the
constant is deliberately folded into the training step sizes, so every update
rule consumes the slope quaternion as-is.
"""
from __future__ import annotations

import numpy as np

__all__ = ["split_tanh", "split_tanh_grad"]


def split_tanh(q: np.ndarray) -> np.ndarray:
    """tanh of each of the four components."""
    return np.tanh(np.asarray(q, dtype=np.float64))


def split_tanh_grad(q: np.ndarray) -> np.ndarray:
    """Componentwise slope sech^2 = 1 - tanh^2, computed from tanh for stability."""
    t = np.tanh(np.asarray(q, dtype=np.float64))
    return 1.0 - t * t
