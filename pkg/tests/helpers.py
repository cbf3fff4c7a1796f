"""Seeded random generators shared by the test modules."""

import numpy as np


def random_complex(rng, shape):
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_hermitian(rng, dim):
    g = random_complex(rng, (dim, dim))
    return (g + g.conj().T) / 2.0


def random_density(rng, dim, rank=None):
    g = random_complex(rng, (dim, rank or dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def random_unitary(rng, dim):
    q, r = np.linalg.qr(random_complex(rng, (dim, dim)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_projector(rng, dim, rank):
    cols = random_unitary(rng, dim)[:, :rank]
    return cols @ cols.conj().T
