"""Cyclic Jacobi eigensolver for Hermitian matrices.

The sweep loop is the one hot kernel in the package: every support
projector, PSD check and spectral assertion funnels through it.  By
default it is compiled with numba; setting the environment variable
``QID_PURE_NUMPY=1`` (before import) selects the identical pure-numpy
code path instead.  ``benchmarks/bench_jacobi.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

ENV_FLAG = "QID_PURE_NUMPY"


def _jacobi_sweeps(a, v, tol, max_sweeps):
    """Run cyclic Jacobi sweeps in place on the Hermitian matrix ``a``.

    ``a`` converges to a diagonal matrix of eigenvalues and ``v``
    accumulates the unitary similarity (columns end up eigenvectors).
    The (p, q) sweep order is fixed row-major so runs are reproducible.
    Returns the number of sweeps performed.
    """
    n = a.shape[0]
    fro = np.sqrt(np.sum(np.abs(a) ** 2))
    if fro == 0.0:
        return 0
    # The Frobenius norm is invariant under the rotations, so both
    # thresholds can be fixed up front.
    skip = 1e-18 * fro
    goal = tol * fro
    sweeps = 0
    for _ in range(max_sweeps):
        off2 = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                x = a[p, q]
                off2 += x.real * x.real + x.imag * x.imag
        if np.sqrt(2.0 * off2) <= goal:
            break
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= skip:
                    continue
                u = apq / r
                uc = np.conj(u)
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - (s * uc) * cq
                a[:, q] = s * cp + (c * uc) * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - (s * u) * rq
                a[q, :] = s * rp + (c * u) * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real + 0.0j
                a[q, q] = a[q, q].real + 0.0j
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - (s * uc) * vq
                v[:, q] = s * vp + (c * uc) * vq
    return sweeps


def _pick_backend():
    if os.environ.get(ENV_FLAG, "").strip() not in ("", "0"):
        return "numpy", _jacobi_sweeps
    try:
        import numba
    except ImportError:
        return "numpy", _jacobi_sweeps
    return "numba", numba.njit(cache=True)(_jacobi_sweeps)


BACKEND, _jacobi_run = _pick_backend()


def backend() -> str:
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return BACKEND


def jacobi_eigh(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigensystem of a Hermitian matrix via cyclic Jacobi rotations.

    Returns ``(values, vectors)`` with eigenvalues sorted in descending
    order and eigenvectors as the matching orthonormal columns.  The
    caller is responsible for ``a`` being Hermitian; only the upper
    triangle phase structure is assumed.
    """
    work = np.array(a, dtype=np.complex128, order="C", copy=True)
    n = work.shape[0]
    vecs = np.eye(n, dtype=np.complex128)
    if n > 1:
        _jacobi_run(work, vecs, tol, max_sweeps)
    vals = np.diag(work).real.copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], np.ascontiguousarray(vecs[:, order])
