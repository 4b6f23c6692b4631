# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled training loop for small dense auto-associators.

Hot path of the package: up to a few hundred thousand full-batch epochs per
run and hundreds of runs per ensemble.  Mirrors _kernels_py.train_loop.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp, sqrt, tanh

cnp.import_array()

KIND_IDENTITY, KIND_TANH, KIND_SIGMOID = 0, 1, 2
OPT_SGD, OPT_ADAM = 0, 1

DIVERGENCE_LIMIT = 1e6


cdef inline double _phi_s(double u, int kind, double c) noexcept nogil:
    if kind == 0:
        return u
    if kind == 1:
        return tanh(u - c)
    return 1.0 / (1.0 + exp(-c * u))


cdef inline double _dphi_s(double u, int kind, double c) noexcept nogil:
    cdef double t, s
    if kind == 0:
        return 1.0
    if kind == 1:
        t = tanh(u - c)
        return 1.0 - t * t
    s = 1.0 / (1.0 + exp(-c * u))
    return c * s * (1.0 - s)


def train_loop(w0, x, int kind, double c, int optimizer, double lr,
               double beta1, double beta2, double eps, int max_epochs,
               double tol, double l2):
    """See symnet._kernels_py.train_loop for the contract."""
    cdef cnp.ndarray[cnp.float64_t, ndim=2] w_arr = np.array(w0, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] x_arr = np.ascontiguousarray(x, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] losses_arr = np.empty(max_epochs + 1, dtype=np.float64)

    cdef double[:, ::1] w = w_arr
    cdef double[:, ::1] xs = x_arr
    cdef double[::1] losses = losses_arr

    cdef int m_items = x_arr.shape[0]
    cdef int n = x_arr.shape[1]
    cdef double mn = m_items * n

    cdef cnp.ndarray madam_arr = np.zeros((n, n), dtype=np.float64)
    cdef cnp.ndarray vadam_arr = np.zeros((n, n), dtype=np.float64)
    cdef cnp.ndarray g_arr = np.zeros((n, n), dtype=np.float64)
    cdef cnp.ndarray u_arr = np.zeros((m_items, n), dtype=np.float64)
    cdef double[:, ::1] madam = madam_arr
    cdef double[:, ::1] vadam = vadam_arr
    cdef double[:, ::1] g = g_arr
    cdef double[:, ::1] u = u_arr

    cdef int epoch, i, j, k, t
    cdef double loss, acc, err, d, mhat, vhat, b1t, b2t
    cdef int converged = 0, diverged_at = -1, epochs_run = 0

    for epoch in range(max_epochs + 1):
        # forward pass and loss
        loss = 0.0
        for k in range(m_items):
            for i in range(n):
                acc = 0.0
                for j in range(n):
                    acc += w[i, j] * xs[k, j]
                u[k, i] = acc
                err = _phi_s(acc, kind, c) - xs[k, i]
                loss += err * err
        loss /= mn
        losses[epoch] = loss
        if loss != loss or loss > DIVERGENCE_LIMIT:
            epochs_run = epoch
            diverged_at = epoch
            break
        if loss <= tol:
            epochs_run = epoch
            converged = 1
            break
        if epoch == max_epochs:
            epochs_run = max_epochs
            break
        # gradient
        for i in range(n):
            for j in range(n):
                acc = 0.0
                for k in range(m_items):
                    err = _phi_s(u[k, i], kind, c) - xs[k, i]
                    acc += err * _dphi_s(u[k, i], kind, c) * xs[k, j]
                g[i, j] = (2.0 / mn) * acc
                if l2 != 0.0:
                    g[i, j] += 2.0 * l2 * w[i, j]
        # update
        if optimizer == OPT_SGD:
            for i in range(n):
                for j in range(n):
                    w[i, j] -= lr * g[i, j]
        else:
            t = epoch + 1
            b1t = 1.0 - beta1 ** t
            b2t = 1.0 - beta2 ** t
            for i in range(n):
                for j in range(n):
                    madam[i, j] = beta1 * madam[i, j] + (1.0 - beta1) * g[i, j]
                    vadam[i, j] = beta2 * vadam[i, j] + (1.0 - beta2) * g[i, j] * g[i, j]
                    mhat = madam[i, j] / b1t
                    vhat = vadam[i, j] / b2t
                    w[i, j] -= lr * mhat / (sqrt(vhat) + eps)

    return w_arr, losses_arr[:epochs_run + 1], epochs_run, bool(converged), diverged_at
