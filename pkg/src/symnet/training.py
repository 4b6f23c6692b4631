"""Loss, analytic gradients, initialization schemes, and the training loop.

Training is full-batch gradient descent (plain or ADAM) on the mean squared
reconstruction error, averaged over all components of all items.  Runs are
deterministic given the configuration and seed; weights are initialized from
a PCG64 generator seeded per run.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from . import backend
from .errors import DivergenceError
from .groups import PatternSet
from .nets import Activation, IDENTITY, as_weight_matrix

INIT_SCHEMES = ("zeros", "ones", "uniform", "gaussian")

#: default learning rates per optimizer
DEFAULT_LR = {"sgd": 0.1, "adam": 0.01}
#: default convergence thresholds on the loss
DEFAULT_TOL_LINEAR = 1e-13
DEFAULT_TOL_NONLINEAR = 1e-7

DEFAULT_MAX_EPOCHS = 200000

#: documented RNG algorithm, recorded in run manifests
RNG_ALGORITHM = "numpy PCG64"

_KIND_CODE = {"identity": backend.KIND_IDENTITY,
              "tanh": backend.KIND_TANH,
              "sigmoid": backend.KIND_SIGMOID}
_OPT_CODE = {"sgd": backend.OPT_SGD, "adam": backend.OPT_ADAM}


@dataclass(frozen=True)
class TrainConfig:
    optimizer: str = "sgd"
    lr: float = None            # None -> per-optimizer default
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    max_epochs: int = DEFAULT_MAX_EPOCHS
    tol: float = None           # None -> per-activation default
    init: str = "zeros"
    mu: float = 0.0
    sigma: float = 0.05
    seed: int = 0
    l2: float = 0.0

    def __post_init__(self):
        if self.optimizer not in _OPT_CODE:
            raise ValueError(f"unknown optimizer {self.optimizer!r}")
        init = "uniform" if self.init == "uniform01" else self.init
        if init not in INIT_SCHEMES:
            raise ValueError(f"unknown init scheme {self.init!r}")
        object.__setattr__(self, "init", init)
        if self.lr is not None and not self.lr > 0:
            raise ValueError("learning rate must be > 0")
        if not (0.0 < self.beta1 < 1.0 and 0.0 < self.beta2 < 1.0):
            raise ValueError("adam betas must lie in (0, 1)")
        if self.sigma <= 0:
            raise ValueError("gaussian sigma must be > 0")
        if self.l2 < 0:
            raise ValueError("l2 penalty must be >= 0")
        if self.tol is not None and self.tol < 0:
            raise ValueError("convergence threshold must be >= 0")

    def resolved_lr(self) -> float:
        return DEFAULT_LR[self.optimizer] if self.lr is None else self.lr

    def resolved_tol(self, act: Activation) -> float:
        if self.tol is not None:
            return self.tol
        return DEFAULT_TOL_LINEAR if act.kind == "identity" else DEFAULT_TOL_NONLINEAR


@dataclass(frozen=True)
class TrainResult:
    weights: np.ndarray
    losses: np.ndarray          # recorded loss per epoch, final state included
    epochs: int
    converged: bool
    config: TrainConfig
    seed: int                   # effective seed of this run

    @property
    def final_loss(self) -> float:
        return float(self.losses[-1])


@dataclass(frozen=True)
class EnsembleResult:
    results: tuple              # of TrainResult
    mean_weights: np.ndarray


def mse_loss(w, act: Activation, x: PatternSet, l2: float = 0.0) -> float:
    """Mean over all components of all items of the squared reconstruction error."""
    w = as_weight_matrix(w)
    xm = x.matrix
    err = act(xm @ w.T) - xm
    loss = float(np.sum(err * err)) / err.size
    if l2:
        loss += l2 * float(np.sum(w * w))
    return loss


def loss_gradient(w, act: Activation, x: PatternSet, l2: float = 0.0) -> np.ndarray:
    """Exact gradient of mse_loss with respect to each weight entry."""
    w = as_weight_matrix(w)
    xm = x.matrix
    u = xm @ w.T
    err = act(u) - xm
    g = (2.0 / err.size) * (err * act.deriv(u)).T @ xm
    if l2:
        g = g + 2.0 * l2 * w
    return g


def init_weights(scheme: str, seed: int, n: int,
                 mu: float = 0.0, sigma: float = 0.05) -> np.ndarray:
    """Deterministic weight initialization for a given scheme and seed."""
    if scheme == "uniform01":
        scheme = "uniform"
    if scheme == "zeros":
        return np.zeros((n, n))
    if scheme == "ones":
        return np.ones((n, n))
    rng = np.random.Generator(np.random.PCG64(seed))
    if scheme == "uniform":
        return rng.uniform(0.0, 1.0, size=(n, n))
    if scheme == "gaussian":
        if sigma <= 0:
            raise ValueError("gaussian sigma must be > 0")
        return rng.normal(mu, sigma, size=(n, n))
    raise ValueError(f"unknown init scheme {scheme!r}")


def train(config: TrainConfig, x: PatternSet, act: Activation = IDENTITY) -> TrainResult:
    """Run one full-batch training loop; deterministic given config and seed."""
    w0 = init_weights(config.init, config.seed, x.n, config.mu, config.sigma)
    w, losses, epochs, converged, diverged_at = backend.train_loop(
        w0, x.matrix,
        _KIND_CODE[act.kind], act.c,
        _OPT_CODE[config.optimizer], config.resolved_lr(),
        config.beta1, config.beta2, config.eps,
        int(config.max_epochs), config.resolved_tol(act), config.l2,
    )
    if diverged_at >= 0:
        raise DivergenceError(diverged_at, float(losses[-1]))
    return TrainResult(w, np.array(losses), epochs, converged, config, config.seed)


def ensemble_train(config: TrainConfig, x: PatternSet, act: Activation = IDENTITY,
                   n_seeds: int = 1) -> EnsembleResult:
    """Independent runs with seeds config.seed, config.seed + 1, ..., plus mean W."""
    if n_seeds < 1:
        raise ValueError("n_seeds must be >= 1")
    results = []
    for k in range(n_seeds):
        run_cfg = replace(config, seed=config.seed + k)
        results.append(train(run_cfg, x, act))
    mean_w = np.mean([r.weights for r in results], axis=0)
    return EnsembleResult(tuple(results), mean_w)
