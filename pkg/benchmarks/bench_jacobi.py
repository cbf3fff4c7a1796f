"""Benchmark the Jacobi eigensolver kernel: numba JIT vs pure numpy.

Times both backends on seeded random Hermitian matrices.  Run with:

    python benchmarks/bench_jacobi.py
"""

import time

import numpy as np

from qid._kernels import _jacobi_sweeps

try:
    import numba

    jitted = numba.njit(cache=True)(_jacobi_sweeps)
    HAS_NUMBA = True
except ImportError:
    jitted = None
    HAS_NUMBA = False
    print("numba not installed, timing the numpy path only")

SIZES = (8, 16, 32, 64, 128)
REPEATS = 3


def run(kernel, h):
    work = h.copy()
    vecs = np.eye(h.shape[0], dtype=np.complex128)
    t0 = time.perf_counter()
    kernel(work, vecs, 1e-12, 100)
    return time.perf_counter() - t0, np.diag(work).real


def main():
    rng = np.random.default_rng(20240917)
    if HAS_NUMBA:
        warm = np.eye(4, dtype=np.complex128)
        jitted(warm.copy(), np.eye(4, dtype=np.complex128), 1e-12, 10)  # JIT warm-up

    print(f"{'n':>5} {'numpy [ms]':>12} {'numba [ms]':>12} {'speedup':>9}")
    for n in SIZES:
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        h = np.ascontiguousarray((g + g.conj().T) / 2)

        t_plain = min(run(_jacobi_sweeps, h)[0] for _ in range(REPEATS))
        if HAS_NUMBA:
            t_jit = min(run(jitted, h)[0] for _ in range(REPEATS))
            ev_plain = np.sort(run(_jacobi_sweeps, h)[1])
            ev_jit = np.sort(run(jitted, h)[1])
            assert np.max(np.abs(ev_plain - ev_jit)) < 1e-9, "backends disagree"
            print(f"{n:>5} {t_plain * 1e3:>12.2f} {t_jit * 1e3:>12.2f} {t_plain / t_jit:>8.1f}x")
        else:
            print(f"{n:>5} {t_plain * 1e3:>12.2f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
