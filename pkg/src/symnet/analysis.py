"""Spectra, family fitting, generalization sweeps, flow fields, fixed points.

The eigensolver is self-contained: Householder reduction to Hessenberg form
followed by Wilkinson-shifted QR iteration in complex arithmetic, adequate
for the package's n <= 8 matrices.  Eigenvectors come from the small
singular directions of W - lambda*I, cluster by cluster, so repeated
eigenvalues get a full set of independent directions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import CapabilityError, NumericError
from .families import LinearFamily, plane_span
from .groups import PatternSet, SymmetryGroup
from .nets import Activation, IDENTITY, as_weight_matrix, forward, iterate
from .nets import symmetry_deviation  # re-exported: quantitative compatibility

__all__ = [
    "Spectrum", "FamilyFit", "FlowField", "FixedPointSet",
    "spectrum", "linearized_spectrum_at", "fit_family",
    "generalization_table", "flow_field", "fixed_points",
    "classify_attractor", "symmetry_deviation",
]

_QR_TOL = 1e-13
_QR_MAX_SWEEPS = 10000

MAX_SPECTRUM_N = 8
MESH_CAP = 100000

#: Table-1 row order for length-3 binary patterns
TABLE_ORDER_N3 = (
    (0, 1, 0), (0, 0, 1), (0, 0, 0), (0, 1, 1),
    (1, 1, 0), (1, 0, 1), (1, 1, 1), (1, 0, 0),
)


# --- eigensolver ----------------------------------------------------------

def _hessenberg(a):
    """Householder reduction to upper Hessenberg form (similarity transform)."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        col = h[k + 1:, k].copy()
        norm = np.linalg.norm(col)
        if norm == 0.0:
            continue
        v = col.copy()
        phase = col[0] / abs(col[0]) if col[0] != 0 else 1.0
        v[0] += phase * norm
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
    return h


def _wilkinson_shift(h, hi):
    a = h[hi - 2, hi - 2]
    b = h[hi - 2, hi - 1]
    c = h[hi - 1, hi - 2]
    d = h[hi - 1, hi - 1]
    tr = a + d
    disc = np.sqrt((a - d) ** 2 + 4.0 * b * c + 0j)
    r1 = (tr + disc) / 2.0
    r2 = (tr - disc) / 2.0
    return r1 if abs(r1 - d) <= abs(r2 - d) else r2


def eigenvalues(w) -> np.ndarray:
    """All eigenvalues of a real or complex square matrix via shifted QR."""
    a = np.asarray(w)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    n = a.shape[0]
    if n > MAX_SPECTRUM_N:
        raise CapabilityError(f"eigensolver is designed for n <= {MAX_SPECTRUM_N}")
    if n == 1:
        return np.array([complex(a[0, 0])])
    h = _hessenberg(a)
    scale = max(float(np.max(np.abs(h))), 1e-300)
    eigs = []
    hi = n
    sweeps = 0
    while hi > 0:
        if hi == 1:
            eigs.append(h[0, 0])
            hi = 0
            continue
        # deflate negligible subdiagonals
        for k in range(1, hi):
            if abs(h[k, k - 1]) <= _QR_TOL * (abs(h[k - 1, k - 1]) + abs(h[k, k]) + scale * 1e-3):
                h[k, k - 1] = 0.0
        if h[hi - 1, hi - 2] == 0.0:
            eigs.append(h[hi - 1, hi - 1])
            hi -= 1
            continue
        lo = hi - 1
        while lo > 0 and h[lo, lo - 1] != 0.0:
            lo -= 1
        mu = _wilkinson_shift(h, hi)
        # one explicit shifted QR step on the active block: H - mu I = QR,
        # then H <- RQ + mu I, via Givens rotations zeroing the subdiagonal
        idx = np.arange(lo, hi)
        h[idx, idx] -= mu
        cs = []
        for k in range(lo, hi - 1):
            xk, zk = h[k, k], h[k + 1, k]
            r = np.hypot(abs(xk), abs(zk))
            if r == 0.0:
                c_, s_ = 1.0, 0.0
            else:
                c_, s_ = xk / r, zk / r
            cs.append((c_, s_))
            rows = np.array([h[k, :], h[k + 1, :]])
            h[k, :] = np.conj(c_) * rows[0] + np.conj(s_) * rows[1]
            h[k + 1, :] = -s_ * rows[0] + c_ * rows[1]
        for k in range(lo, hi - 1):
            c_, s_ = cs[k - lo]
            cols = np.array([h[:, k], h[:, k + 1]])
            h[:, k] = c_ * cols[0] + s_ * cols[1]
            h[:, k + 1] = -np.conj(s_) * cols[0] + np.conj(c_) * cols[1]
        h[idx, idx] += mu
        sweeps += 1
        if sweeps > _QR_MAX_SWEEPS:
            raise NumericError("QR iteration failed to converge")
    out = np.array(eigs)
    if np.isrealobj(np.asarray(w)):
        # clean up conjugate symmetry noise for real input
        out = np.where(np.abs(out.imag) <= 1e-12 * max(scale, 1.0), out.real + 0j, out)
    return out


def _sort_eigs(vals):
    order = sorted(range(len(vals)),
                   key=lambda i: (-abs(vals[i]), -vals[i].real, -vals[i].imag))
    return list(order)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues sorted by descending modulus; unit eigenvectors as columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def n(self) -> int:
        return len(self.eigenvalues)


def spectrum(w) -> Spectrum:
    """Eigen decomposition of a (generally non-symmetric) small real matrix."""
    a = np.asarray(w, dtype=float)
    vals = eigenvalues(a)
    order = _sort_eigs(vals)
    vals = vals[order]
    n = len(vals)
    scale = max(float(np.max(np.abs(a))), 1.0)
    vecs = np.zeros((n, n), dtype=complex)
    # cluster nearby eigenvalues so repeated ones get independent directions
    assigned = [False] * n
    for i in range(n):
        if assigned[i]:
            continue
        cluster = [j for j in range(n)
                   if not assigned[j] and abs(vals[j] - vals[i]) <= 1e-7 * scale]
        for j in cluster:
            assigned[j] = True
        center = np.mean(vals[cluster])
        _, _, vh = np.linalg.svd(a - center * np.eye(n))
        for k, j in enumerate(sorted(cluster)):
            vecs[:, j] = vh[n - 1 - k, :].conj()
    return Spectrum(vals, vecs)


def linearized_spectrum_at(w, act: Activation, p) -> Spectrum:
    """Spectrum of the Jacobian diag(act'(W p)) W of the map at point p."""
    w = as_weight_matrix(w)
    p = np.asarray(p, dtype=float)
    jac = np.diag(act.deriv(w @ p)) @ w
    return spectrum(jac)


# --- family fitting -------------------------------------------------------

@dataclass(frozen=True)
class FamilyFit:
    params: np.ndarray
    residual: float  # Frobenius norm of the misfit


def fit_family(w, family: LinearFamily) -> FamilyFit:
    """Least-squares projection of W onto the affine solution family."""
    w = as_weight_matrix(w)
    if w.shape[0] != family.n:
        raise ValueError("matrix size does not match family size")
    if not family.basis:
        params = np.zeros(0)
    else:
        bmat = np.stack([b.ravel() for b in family.basis], axis=1)
        params, *_ = np.linalg.lstsq(bmat, (w - family.particular).ravel(), rcond=None)
    resid = float(np.linalg.norm(w - family.member(params)))
    return FamilyFit(params, resid)


# --- generalization -------------------------------------------------------

def binary_patterns(n: int, training: PatternSet = None):
    """All 2^n binary patterns: training items first, then the published
    Table-1 order for n = 3 (ascending binary order otherwise)."""
    if n == 3:
        ordered = [np.array(p, dtype=float) for p in TABLE_ORDER_N3]
    else:
        ordered = [np.array(bits, dtype=float)
                   for bits in itertools.product((0, 1), repeat=n)]
    if training is None:
        return ordered
    train = [p for p in ordered if p in training]
    rest = [p for p in ordered if p not in training]
    return train + rest


def generalization_table(w, act: Activation, training: PatternSet = None):
    """Per-pattern reconstruction loss over all binary patterns.

    Returns a list of (pattern, is_training, loss) rows; loss is the mean
    squared error over the pattern's components.
    """
    w = as_weight_matrix(w)
    n = w.shape[0]
    if n > 8:
        raise CapabilityError("generalization sweep enumerates 2^n patterns; capped at n <= 8")
    rows = []
    for y in binary_patterns(n, training):
        err = forward(w, act, y) - y
        loss = float(err @ err) / n
        rows.append((y, training is not None and y in training, loss))
    return rows


# --- flow fields and fixed points ----------------------------------------

def mesh_points(n: int, bounds=(0.0, 1.0), points: int = 5) -> np.ndarray:
    """Regular hypercube mesh of points**n start states, rows are states."""
    if points < 1:
        raise ValueError("points must be >= 1")
    if points ** n > MESH_CAP:
        raise CapabilityError(f"mesh of {points}^{n} points exceeds the cap of {MESH_CAP}")
    axis = np.linspace(bounds[0], bounds[1], points)
    grids = np.meshgrid(*([axis] * n), indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


@dataclass(frozen=True)
class FlowField:
    bounds: tuple
    points: int
    n_steps: int
    trajectories: np.ndarray  # (n_starts, n_steps + 1, n)

    @property
    def starts(self) -> np.ndarray:
        return self.trajectories[:, 0, :]

    @property
    def endpoints(self) -> np.ndarray:
        return self.trajectories[:, -1, :]


def flow_field(w, act: Activation, bounds=(0.0, 1.0), points: int = 5,
               n_steps: int = 6) -> FlowField:
    """Iterate the network from a regular mesh of start states."""
    w = as_weight_matrix(w)
    starts = mesh_points(w.shape[0], bounds, points)
    trajs = np.empty((starts.shape[0], n_steps + 1, w.shape[0]))
    for i, x0 in enumerate(starts):
        trajs[i] = iterate(w, act, x0, n_steps)
    return FlowField(tuple(bounds), points, n_steps, trajs)


@dataclass(frozen=True)
class FixedPointSet:
    points: np.ndarray        # cluster representatives with small map residual
    basin_counts: np.ndarray  # mesh starts per representative
    residuals: np.ndarray     # |act(W p) - p| max-norm per representative
    n_starts: int

    def __len__(self):
        return len(self.points)

    @property
    def converged_fraction(self) -> float:
        return float(np.sum(self.basin_counts)) / self.n_starts


def _cluster(endpoints, radius):
    reps, members = [], []
    for idx, p in enumerate(endpoints):
        for k, rep in enumerate(reps):
            if np.linalg.norm(p - rep) <= radius:
                members[k].append(idx)
                # running mean keeps the representative centered
                reps[k] = rep + (p - rep) / len(members[k])
                break
        else:
            reps.append(p.copy())
            members.append([idx])
    return reps, members


def fixed_points(w, act: Activation, bounds=(0.0, 1.0), points: int = 5,
                 n: int = 25, cluster_radius: float = 1e-2,
                 fp_tol: float = 1e-4) -> FixedPointSet:
    """Iterate each mesh start n times, cluster the endpoints, and keep the
    clusters whose representative is a genuine fixed point."""
    w = as_weight_matrix(w)
    starts = mesh_points(w.shape[0], bounds, points)
    endpoints = np.empty_like(starts)
    for i, x0 in enumerate(starts):
        state = x0
        for _ in range(n):
            state = forward(w, act, state)
        endpoints[i] = state
    reps, members = _cluster(endpoints, cluster_radius)
    keep_p, keep_c, keep_r = [], [], []
    for rep, mem in zip(reps, members):
        resid = float(np.max(np.abs(forward(w, act, rep) - rep)))
        if resid <= fp_tol:
            keep_p.append(rep)
            keep_c.append(len(mem))
            keep_r.append(resid)
    order = np.argsort(keep_c)[::-1] if keep_c else []
    return FixedPointSet(
        np.array([keep_p[i] for i in order]) if len(order) else np.zeros((0, starts.shape[1])),
        np.array([keep_c[i] for i in order], dtype=int),
        np.array([keep_r[i] for i in order]),
        starts.shape[0],
    )


def classify_attractor(endpoints, cluster_radius: float = 1e-2,
                       plane_tol: float = 1e-4) -> str:
    """Label the endpoint cloud 'plane' or 'points'.

    Plane: a 2-d affine fit leaves residual <= plane_tol and the endpoints do
    not collapse onto at most 3 isolated clusters.
    """
    endpoints = np.asarray(endpoints, dtype=float)
    center = endpoints.mean(axis=0)
    dev = endpoints - center
    _, svals, _ = np.linalg.svd(dev, full_matrices=False)
    flat = len(svals) < 3 or svals[2] <= plane_tol * max(1.0, svals[0])
    reps, _ = _cluster(endpoints, cluster_radius)
    return "plane" if (flat and len(reps) > 3) else "points"


def plane_convergence_ratio(field: FlowField, training: PatternSet) -> np.ndarray:
    """Per-trajectory ratio of final to initial distance from span(training)."""
    basis = plane_span(training)
    def dist(p):
        proj = basis.T @ (basis @ p)
        return np.linalg.norm(p - proj)
    d0 = np.array([dist(p) for p in field.starts])
    d1 = np.array([dist(p) for p in field.endpoints])
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(d0 > 0, d1 / d0, 0.0)
