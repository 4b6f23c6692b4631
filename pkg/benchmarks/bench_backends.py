#!/usr/bin/env python3
"""Compare the compiled training kernel against the numpy fallback.

Times the full training loop for the standard experiment configurations and
prints one line per case with the speedup.  Run from the repository root:

    python3 benchmarks/bench_backends.py [--repeats 5]
"""

import argparse
import statistics
import time

import numpy as np

from symnet import _kernels_py
from symnet.training import init_weights

try:
    from symnet import _kernels
except ImportError:
    _kernels = None

X = np.array([[1.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
XPRIME = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])

CASES = [
    ("sgd linear, zero init", X, "zeros", 0, 0.0, 0, 0.1, 1e-13),
    ("sgd linear, gaussian init", X, "gaussian", 0, 0.0, 0, 0.1, 1e-13),
    ("adam linear, ones init", X, "ones", 0, 0.0, 1, 0.01, 1e-13),
    ("adam tanh", XPRIME, "gaussian", 1, 0.0, 1, 0.01, 1e-7),
    ("adam sigmoid", XPRIME, "gaussian", 2, 1.0, 1, 0.01, 1e-7),
]


def run_case(impl, items, scheme, kind, c, opt, lr, tol, seed=12345):
    w0 = init_weights(scheme, seed, items.shape[1])
    return impl.train_loop(w0, items, kind, c, opt, lr, 0.9, 0.999, 1e-8,
                           200000, tol, 0.0)


def time_case(impl, case, repeats):
    times = []
    epochs = 0
    for _ in range(repeats):
        t0 = time.perf_counter()
        _, _, epochs, _, _ = run_case(impl, *case)
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times), epochs


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled kernel not built; only timing the numpy fallback")

    header = f"{'case':28s} {'epochs':>7s} {'python':>10s}"
    if _kernels is not None:
        header += f" {'cython':>10s} {'speedup':>8s}"
    print(header)
    for name, *case in CASES:
        py_best, _, epochs = time_case(_kernels_py, case, args.repeats)
        line = f"{name:28s} {epochs:7d} {py_best * 1e3:9.2f}ms"
        if _kernels is not None:
            cy_best, _, _ = time_case(_kernels, case, args.repeats)
            line += f" {cy_best * 1e3:9.2f}ms {py_best / cy_best:7.1f}x"
        print(line)


if __name__ == "__main__":
    main()
