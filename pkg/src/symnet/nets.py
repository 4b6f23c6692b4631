"""Weight matrices, activations, the forward map, and weight-sharing templates."""

from __future__ import annotations

import string
from dataclasses import dataclass, field

import numpy as np

from .groups import PatternSet, SymmetryGroup, pair_orbits

#: compatibility tolerance for analytically constructed matrices
CONSTRUCTED_TOL = 1e-12
#: compatibility tolerance for numerically trained matrices
TRAINED_TOL = 1e-3

ACTIVATION_KINDS = ("identity", "tanh", "sigmoid")


@dataclass(frozen=True)
class Activation:
    """Entrywise activation: identity, tanh(u - c), or 1 / (1 + exp(-c*u)).

    The parameter c is a shift for tanh and a gain for sigmoid; defaults (0
    and 1) give the plain tanh(u) and logistic function.
    """

    kind: str = "identity"
    c: float = None

    def __post_init__(self):
        if self.kind not in ACTIVATION_KINDS:
            raise ValueError(f"unknown activation {self.kind!r}; expected one of {ACTIVATION_KINDS}")
        c = self.c
        if c is None:
            c = 0.0 if self.kind in ("identity", "tanh") else 1.0
        c = float(c)
        if self.kind == "sigmoid" and c <= 0.0:
            raise ValueError("sigmoid gain must be > 0 to keep the activation increasing")
        object.__setattr__(self, "c", c)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == "identity":
            return u.copy()
        if self.kind == "tanh":
            return np.tanh(u - self.c)
        return 1.0 / (1.0 + np.exp(-self.c * u))

    def deriv(self, u):
        u = np.asarray(u, dtype=float)
        if self.kind == "identity":
            return np.ones_like(u)
        if self.kind == "tanh":
            t = np.tanh(u - self.c)
            return 1.0 - t * t
        s = 1.0 / (1.0 + np.exp(-self.c * u))
        return self.c * s * (1.0 - s)


IDENTITY = Activation("identity")


def as_weight_matrix(w) -> np.ndarray:
    a = np.asarray(w, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"weight matrix must be square, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("weight matrix entries must be finite")
    return a


def forward(w, act: Activation, x) -> np.ndarray:
    """One network step: act(W @ x), entrywise."""
    w = as_weight_matrix(w)
    x = np.asarray(x, dtype=float)
    if x.shape != (w.shape[0],):
        raise ValueError(f"input length {x.shape} does not match matrix size {w.shape}")
    return act(w @ x)


def iterate(w, act: Activation, x, n: int) -> np.ndarray:
    """Trajectory [x, f(x), f(f(x)), ...] of length n + 1, rows are states."""
    if n < 0:
        raise ValueError("n must be >= 0")
    w = as_weight_matrix(w)
    out = np.empty((n + 1, w.shape[0]))
    out[0] = np.asarray(x, dtype=float)
    for k in range(n):
        out[k + 1] = forward(w, act, out[k])
    return out


def symmetry_deviation(w, g: SymmetryGroup) -> float:
    """max over s in G of the max-entry difference |W - s.W|."""
    w = as_weight_matrix(w)
    if w.shape[0] != g.n:
        raise ValueError("matrix size does not match group size")
    return max(float(np.max(np.abs(w - s.act_matrix(w)))) for s in g)


def is_compatible(w, g: SymmetryGroup, tol: float = CONSTRUCTED_TOL):
    """Whether W is invariant under the group action, plus the deviation."""
    dev = symmetry_deviation(w, g)
    return dev <= tol, dev


@dataclass(frozen=True)
class Template:
    """Weight-sharing pattern: one free parameter per pair-orbit class."""

    n: int
    classes: tuple  # of tuples of (i, j) pairs, partitioning all n*n pairs
    param_names: tuple = field(default=None)

    def __post_init__(self):
        covered = [p for c in self.classes for p in c]
        if sorted(covered) != [(i, j) for i in range(self.n) for j in range(self.n)]:
            raise ValueError("classes do not partition the index pairs")
        if self.param_names is None:
            object.__setattr__(self, "param_names", default_param_names(len(self.classes)))
        elif len(self.param_names) != len(self.classes):
            raise ValueError("one parameter name per class required")

    @property
    def n_params(self) -> int:
        return len(self.classes)

    def instantiate(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (len(self.classes),):
            raise ValueError(f"expected {len(self.classes)} parameters, got {params.shape}")
        w = np.empty((self.n, self.n))
        for p, cls in zip(params, self.classes):
            for i, j in cls:
                w[i, j] = p
        return w

    def basis_matrix(self, k: int) -> np.ndarray:
        """Indicator matrix of class k (the gradient of instantiate wrt param k)."""
        return self.instantiate(np.eye(len(self.classes))[k])


def default_param_names(count: int):
    letters = string.ascii_lowercase
    if count <= len(letters):
        return tuple(letters[:count])
    return tuple(f"p{k}" for k in range(count))


def build_template(n: int, g: SymmetryGroup) -> Template:
    """Template whose instances are exactly the G-compatible matrices."""
    return Template(n, pair_orbits(n, g))


def instantiate(template: Template, params) -> np.ndarray:
    return template.instantiate(params)


def is_autoassociator(w, act: Activation, x: PatternSet, tol: float = CONSTRUCTED_TOL):
    """Whether act(W @ item) = item for every item, plus per-item residuals."""
    residuals = [float(np.max(np.abs(forward(w, act, a) - a))) for a in x]
    return all(r <= tol for r in residuals), residuals


def equivariance_check(w, act: Activation, g: SymmetryGroup, samples,
                       tol: float = CONSTRUCTED_TOL):
    """Check act(W @ (s.x)) = s.(act(W @ x)) over all group elements and samples."""
    w = as_weight_matrix(w)
    dev = 0.0
    for x in samples:
        x = np.asarray(x, dtype=float)
        fx = forward(w, act, x)
        for s in g:
            lhs = forward(w, act, s.act(x))
            rhs = s.act(fx)
            dev = max(dev, float(np.max(np.abs(lhs - rhs))))
    return dev <= tol, dev
