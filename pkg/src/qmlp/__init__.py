"""Quaternion-valued adaptive filters and MLPs with split-tanh activations.

The package covers the full pipeline: quaternion algebra, a single-layer
nonlinear filter, a one-hidden-layer MLP with finite-difference-certified
gradients, squared-error and correntropy-gated online training, chaotic
time-series generation with noise injection, an experiment harness with a
CLI, and a scikit-learn style estimator.
"""

from .quat import (
    quat,
    as_quat,
    as_qvector,
    as_qmatrix,
    hamilton_mul,
    involution,
    conjugate,
    norm_sq,
    split_product,
    hermitian_dot,
    hermitian_matvec,
)
from .activation import split_tanh, split_tanh_grad
from .slp import SLPState, slp_forward, slp_error, slp_update, slp_update_componentwise
from .network import (
    MLPParams,
    ForwardTrace,
    MLPGradients,
    init_params,
    forward,
    grad_b2,
    grad_w2,
    grad_b1,
    grad_w1,
    mlp_gradients,
)
from .training import TrainConfig, StepReport, DivergenceError, mcc_cost, mse_step, mcc_step, train
from .timeseries import (
    MackeyGlassConfig,
    NoiseModel,
    SamplePair,
    mackey_glass,
    embed,
    add_noise,
)
from .gradcheck import GradCheckReport, fd_gradients, run_gradient_check
from .harness import (
    ExperimentSpec,
    RunSummary,
    build_spec,
    run_experiment,
    smooth_mse,
    write_curve_csv,
)
from .estimator import QuaternionMLPRegressor

__version__ = "0.1.0"

__all__ = [
    "quat",
    "as_quat",
    "as_qvector",
    "as_qmatrix",
    "hamilton_mul",
    "involution",
    "conjugate",
    "norm_sq",
    "split_product",
    "hermitian_dot",
    "hermitian_matvec",
    "split_tanh",
    "split_tanh_grad",
    "SLPState",
    "slp_forward",
    "slp_error",
    "slp_update",
    "slp_update_componentwise",
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
    "TrainConfig",
    "StepReport",
    "DivergenceError",
    "mcc_cost",
    "mse_step",
    "mcc_step",
    "train",
    "MackeyGlassConfig",
    "NoiseModel",
    "SamplePair",
    "mackey_glass",
    "embed",
    "add_noise",
    "GradCheckReport",
    "fd_gradients",
    "run_gradient_check",
    "ExperimentSpec",
    "RunSummary",
    "build_spec",
    "run_experiment",
    "smooth_mse",
    "write_curve_csv",
    "QuaternionMLPRegressor",
]
