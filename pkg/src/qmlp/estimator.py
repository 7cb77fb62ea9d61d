"""scikit-learn style wrapper around the quaternion MLP.

The estimator consumes real arrays: each sample row is a window of m
quaternions, either flat (n_samples, 4*m) with components grouped per element
as [x0_a, x0_b, x0_c, x0_d, x1_a, ...], or stacked (n_samples, m, 4).
Targets are (n_samples, 4) quaternions; a 1-d target series is broadcast into
all four components, matching how scalar series are embedded for training.

Fitting performs one online pass in sample order, one gradient step per
sample, which is how these networks are trained; ``partial_fit`` continues
from the current parameters for streaming use.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.exceptions import NotFittedError

from .network import forward, init_params
from .training import TrainConfig, train

__all__ = ["QuaternionMLPRegressor"]


def _as_quaternion_design(X, m_expected: int | None = None) -> np.ndarray:
    """Validate and reshape the design matrix into (n_samples, m, 4)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim == 2:
        if X.shape[1] % 4 != 0 or X.shape[1] == 0:
            raise ValueError(
                f"flat input must have a multiple of 4 columns (4 per quaternion), got {X.shape[1]}"
            )
        X = X.reshape(X.shape[0], X.shape[1] // 4, 4)
    elif X.ndim == 3:
        if X.shape[2] != 4:
            raise ValueError(f"stacked input must have trailing axis 4, got shape {X.shape}")
    else:
        raise ValueError(f"X must be 2-d or 3-d, got shape {X.shape}")
    if not np.isfinite(X).all():
        raise ValueError("X contains non-finite values")
    if m_expected is not None and X.shape[1] != m_expected:
        raise ValueError(f"X has {X.shape[1]} quaternion elements per sample, expected {m_expected}")
    return X


def _as_quaternion_targets(y, n_samples: int) -> tuple[np.ndarray, bool]:
    """Validate targets; returns (targets (n, 4), was_1d)."""
    y = np.asarray(y, dtype=np.float64)
    if y.ndim == 1:
        y2, was_1d = np.repeat(y[:, None], 4, axis=1), True
    elif y.ndim == 2 and y.shape[1] == 4:
        y2, was_1d = y, False
    else:
        raise ValueError(f"y must be (n_samples,) or (n_samples, 4), got shape {y.shape}")
    if y2.shape[0] != n_samples:
        raise ValueError(f"X has {n_samples} samples but y has {y2.shape[0]}")
    if not np.isfinite(y2).all():
        raise ValueError("y contains non-finite values")
    return y2, was_1d


class QuaternionMLPRegressor(BaseEstimator, RegressorMixin):
    """One-hidden-layer quaternion MLP trained online, one step per sample.

    Parameters
    ----------
    hidden_units : int, default=10
        Number of quaternion units in the hidden layer.
    rule : {'mse', 'mcc'}, default='mse'
        Update rule: plain squared-error descent, or the correntropy-gated
        variant that discounts outlier samples.
    eta_w1, eta_b1, eta_w2, eta_b2 : float, default=1e-2
        Step sizes for the input weights, hidden bias, output weights and
        output bias.
    sigma : float, default=1.0
        Correntropy kernel width used by the 'mcc' rule.
    random_state : int or None, default=None
        Seed for the parameter initialization.

    Attributes
    ----------
    params_ : MLPParams
        Trained parameters.
    history_ : list of StepReport
        Per-sample learning curve from fitting.
    n_features_in_ : int
        Number of real input features (4 per quaternion element).
    """

    def __init__(
        self,
        hidden_units: int = 10,
        rule: str = "mse",
        eta_w1: float = 1e-2,
        eta_b1: float = 1e-2,
        eta_w2: float = 1e-2,
        eta_b2: float = 1e-2,
        sigma: float = 1.0,
        random_state: int | None = None,
    ):
        self.hidden_units = hidden_units
        self.rule = rule
        self.eta_w1 = eta_w1
        self.eta_b1 = eta_b1
        self.eta_w2 = eta_w2
        self.eta_b2 = eta_b2
        self.sigma = sigma
        self.random_state = random_state

    def _config(self, iterations: int) -> TrainConfig:
        return TrainConfig(
            eta_w1=self.eta_w1,
            eta_b1=self.eta_b1,
            eta_w2=self.eta_w2,
            eta_b2=self.eta_b2,
            sigma=self.sigma,
            iterations=iterations,
            seed=0 if self.random_state is None else self.random_state,
        )

    def fit(self, X, y):
        """Initialize fresh parameters and run one online pass over (X, y)."""
        X = _as_quaternion_design(X)
        targets, was_1d = _as_quaternion_targets(y, X.shape[0])
        if self.rule not in ("mse", "mcc"):
            raise ValueError(f"rule must be 'mse' or 'mcc', got {self.rule!r}")
        rng = np.random.default_rng(self.random_state)
        params = init_params(X.shape[1], self.hidden_units, rng)
        cfg = self._config(max(1, X.shape[0]))
        self.params_, self.history_ = train(params, zip(X, targets), cfg, self.rule)
        self.m_ = X.shape[1]
        self.n_features_in_ = 4 * X.shape[1]
        self._scalar_target = was_1d
        return self

    def partial_fit(self, X, y):
        """Continue training from the current parameters (initializes on first call)."""
        if not hasattr(self, "params_"):
            return self.fit(X, y)
        X = _as_quaternion_design(X, self.m_)
        targets, _ = _as_quaternion_targets(y, X.shape[0])
        cfg = self._config(max(1, X.shape[0]))
        self.params_, reports = train(self.params_, zip(X, targets), cfg, self.rule)
        self.history_.extend(reports)
        return self

    def predict(self, X):
        """Network outputs, shape (n_samples, 4); the component mean if fitted on 1-d y."""
        if not hasattr(self, "params_"):
            raise NotFittedError("this QuaternionMLPRegressor instance is not fitted yet")
        X = _as_quaternion_design(X, self.m_)
        zero = np.zeros(4)
        out = np.stack([forward(self.params_, sample, zero).out for sample in X])
        if self._scalar_target:
            return out.mean(axis=1)
        return out
