"""Closed-form solution families for the linear auto-associator.

The linear task act = id, W x = x for all training items, restricted to the
group-compatible template, is a linear system in the template parameters.
Its affine solution space is returned in a canonical chart (free template
parameters of the reduced system), so that for the three-pattern examples
the parameterization coincides entry by entry with the published 2-parameter
matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .groups import PatternSet, SymmetryGroup, symmetry_group
from .nets import Template, build_template, default_param_names, as_weight_matrix

_RANK_TOL = 1e-10


@dataclass(frozen=True)
class LinearFamily:
    """Affine family particular + sum_k params[k] * basis[k] of exact linear solutions."""

    particular: np.ndarray
    basis: tuple  # of matrices
    param_names: tuple
    training_set: PatternSet

    @property
    def n(self) -> int:
        return self.particular.shape[0]

    @property
    def n_params(self) -> int:
        return len(self.basis)

    def member(self, params) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        if params.shape != (len(self.basis),):
            raise ValueError(f"expected {len(self.basis)} parameters, got {params.shape}")
        w = self.particular.copy()
        for p, b in zip(params, self.basis):
            w += p * b
        return w

    def min_norm_params(self) -> np.ndarray:
        """Parameters of the minimum-Frobenius-norm member."""
        bmat = np.stack([b.ravel() for b in self.basis], axis=1)
        p, *_ = np.linalg.lstsq(bmat, -self.particular.ravel(), rcond=None)
        return p

    def min_norm_member(self) -> np.ndarray:
        return self.member(self.min_norm_params())


def family_member(family: LinearFamily, params) -> np.ndarray:
    return family.member(params)


def _rref_solve(a, b, tol=_RANK_TOL):
    """Gaussian elimination to reduced row echelon form.

    Returns (particular, null_basis, pivots): the solution with all free
    variables set to zero and one null-space vector per free variable (that
    variable set to 1).  Raises if the system is inconsistent.
    """
    a = np.asarray(a, dtype=float).copy()
    b = np.asarray(b, dtype=float).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= tol:
            continue
        a[[r, p]] = a[[p, r]]
        b[[r, p]] = b[[p, r]]
        piv = a[r, c]
        a[r] /= piv
        b[r] /= piv
        for i in range(rows):
            if i != r and abs(a[i, c]) > 0.0:
                b[i] -= a[i, c] * b[r]
                a[i] -= a[i, c] * a[r]
        pivots.append(c)
        r += 1
    if np.any(np.abs(b[r:]) > 1e-8):
        raise ValueError("inconsistent linear system")
    free = [c for c in range(cols) if c not in pivots]
    particular = np.zeros(cols)
    for k, c in enumerate(pivots):
        particular[c] = b[k]
    null_basis = []
    for f in free:
        v = np.zeros(cols)
        v[f] = 1.0
        for k, c in enumerate(pivots):
            v[c] = -a[k, f]
        null_basis.append(v)
    return particular, null_basis, pivots


def solve_linear_family(x: PatternSet, group: SymmetryGroup = None) -> LinearFamily:
    """All group-compatible linear auto-associators on the training set.

    With group=None the symmetry group of the set is computed and used; pass
    the trivial group to get the unconstrained (row-wise) solution family.
    """
    if group is None:
        group = symmetry_group(x)
    template = build_template(x.n, group)
    n, k = x.n, template.n_params
    # constraints: for each item and output component, (W x)_i = x_i
    a = np.zeros((len(x) * n, k))
    b = np.zeros(len(x) * n)
    for m, item in enumerate(x):
        for ci, cls in enumerate(template.classes):
            col = np.zeros(n)
            for i, j in cls:
                col[i] += item[j]
            a[m * n:(m + 1) * n, ci] = col
        b[m * n:(m + 1) * n] = item
    # identity is always a solution, so the system must be consistent
    p_params, null_params, pivots = _rref_solve(a, b)
    particular = template.instantiate(p_params)
    free = [c for c in range(k) if c not in pivots]
    basis = []
    for v, f in zip(null_params, free):
        mat = template.instantiate(v)
        # sign normalization: a free direction driven by an off-diagonal
        # weight class must not inflate the diagonal, so the parameters
        # measure matrices relative to the identity solution
        off_diagonal = all(i != j for i, j in template.classes[f])
        if off_diagonal and np.trace(mat) > _RANK_TOL:
            mat = -mat
        basis.append(mat)
    names = default_param_names(len(basis))
    return LinearFamily(particular, tuple(basis), names, x)


@dataclass(frozen=True)
class NonlinearCorrection:
    """Additive correction term turning the linear family matrix into the
    published nonlinear one, W_abc = W_ab + W_c."""

    kind: str
    c: float
    matrix: np.ndarray
    as_published: bool = False


def nonlinear_correction(kind: str, c: float, as_published: bool = False) -> NonlinearCorrection:
    """The published 3x3 correction matrix W_c for tanh or sigmoid.

    The published sigmoid matrix mixes in a tanh expression at entry (2, 2)
    and is therefore not (32)-symmetric as printed; by default that entry is
    replaced with the (3, 3) value so the correction has the shared template
    structure.  as_published=True returns the matrix exactly as printed.
    """
    c = float(c)
    if kind == "tanh":
        diag = math.tanh(c) - math.tanh(1.0 + c) + 1.0
        w = np.array([
            [math.tanh(1.0 + c) - 1.0, 0.0, 0.0],
            [math.tanh(c), diag, 0.0],
            [math.tanh(c), 0.0, diag],
        ])
        return NonlinearCorrection("tanh", c, w, as_published)
    if kind == "sigmoid":
        ec = math.exp(-c)
        top = -ec / (1.0 + ec)
        diag = 0.5 * (1.0 - ec) / (1.0 + ec) - 1.0
        entry22 = (math.tanh(c) - math.tanh(1.0 + c) + 1.0) if as_published else diag
        w = np.array([
            [top, 0.0, 0.0],
            [0.5, entry22, 0.0],
            [0.5, 0.0, diag],
        ])
        return NonlinearCorrection("sigmoid", c, w, as_published)
    raise ValueError(f"unsupported activation kind {kind!r} for nonlinear correction")


def plane_span(x: PatternSet, tol: float = _RANK_TOL) -> np.ndarray:
    """Orthonormal basis (rows) of the subspace spanned by the training items."""
    basis = []
    for item in x:
        v = np.asarray(item, dtype=float).copy()
        for q in basis:
            v -= (q @ v) * q
        norm = np.linalg.norm(v)
        if norm > tol:
            basis.append(v / norm)
    return np.array(basis) if basis else np.zeros((0, x.n))


def span_residual(basis: np.ndarray, y) -> float:
    """Distance of y from the span of the (orthonormal) basis rows."""
    y = np.asarray(y, dtype=float)
    proj = basis.T @ (basis @ y) if basis.size else np.zeros_like(y)
    return float(np.linalg.norm(y - proj))


def pseudoinverse_projection(x: PatternSet) -> np.ndarray:
    """The minimum-norm linear auto-associator X X^+ (projection onto span X).

    Independent oracle route: computed from the Moore-Penrose pseudoinverse,
    not from the family solver.
    """
    a = x.matrix.T  # columns are the items
    return a @ np.linalg.pinv(a)
