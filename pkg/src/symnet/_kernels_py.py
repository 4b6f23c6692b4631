"""Pure-numpy training loop, the fallback for the compiled kernel.

Same contract as symnet._kernels.train_loop; selected in symnet.backend.
"""

import numpy as np

KIND_IDENTITY, KIND_TANH, KIND_SIGMOID = 0, 1, 2
OPT_SGD, OPT_ADAM = 0, 1

DIVERGENCE_LIMIT = 1e6


def _phi(u, kind, c):
    if kind == KIND_IDENTITY:
        return u
    if kind == KIND_TANH:
        return np.tanh(u - c)
    return 1.0 / (1.0 + np.exp(-c * u))


def _dphi(u, kind, c):
    if kind == KIND_IDENTITY:
        return np.ones_like(u)
    if kind == KIND_TANH:
        t = np.tanh(u - c)
        return 1.0 - t * t
    s = 1.0 / (1.0 + np.exp(-c * u))
    return c * s * (1.0 - s)


def train_loop(w0, x, kind, c, optimizer, lr, beta1, beta2, eps,
               max_epochs, tol, l2):
    """Full-batch gradient descent on the mean-squared reconstruction error.

    Returns (w, losses, epochs_run, converged, diverged_at).  losses has one
    entry per visited epoch including the final state; diverged_at is -1
    unless the loss exceeded DIVERGENCE_LIMIT (or went non-finite) at that
    epoch.  The recorded loss excludes the L2 penalty; the penalty only
    enters the gradient.
    """
    w = np.array(w0, dtype=float)
    x = np.asarray(x, dtype=float)
    m_items, n = x.shape
    mn = m_items * n
    losses = np.empty(max_epochs + 1)
    madam = np.zeros_like(w)
    vadam = np.zeros_like(w)
    for epoch in range(max_epochs + 1):
        u = x @ w.T
        out = _phi(u, kind, c)
        err = out - x
        loss = float(np.sum(err * err)) / mn
        losses[epoch] = loss
        if not np.isfinite(loss) or loss > DIVERGENCE_LIMIT:
            return w, losses[:epoch + 1], epoch, False, epoch
        if loss <= tol:
            return w, losses[:epoch + 1], epoch, True, -1
        if epoch == max_epochs:
            break
        g = (2.0 / mn) * (err * _dphi(u, kind, c)).T @ x
        if l2 != 0.0:
            g = g + 2.0 * l2 * w
        if optimizer == OPT_SGD:
            w -= lr * g
        else:
            t = epoch + 1
            madam = beta1 * madam + (1.0 - beta1) * g
            vadam = beta2 * vadam + (1.0 - beta2) * g * g
            mhat = madam / (1.0 - beta1 ** t)
            vhat = vadam / (1.0 - beta2 ** t)
            w -= lr * mhat / (np.sqrt(vhat) + eps)
    return w, losses, max_epochs, False, -1
