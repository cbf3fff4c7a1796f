"""Completely-positive trace-preserving maps in Kraus form.

A channel maps states on the sender space H_A to states on the split
receiver space H_B (x) H_E; the B/E split is fixed at construction so
marginals are unambiguous downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ValidationError
from .operators import DensityOperator, as_matrix, dagger, _freeze


@dataclass(frozen=True)
class QuantumChannel:
    """Kraus-form channel with labeled output splitting H_B (x) H_E.

    Construction checks shape coherence only; Kraus completeness is a
    separate, reportable property (see ``validate_channel``) so that
    deliberately broken channels can be built for negative tests.
    """

    kraus: tuple[np.ndarray, ...]
    in_dims: tuple[int, ...]
    out_dims_b: tuple[int, ...]
    out_dims_e: tuple[int, ...]
    name: str = ""

    def __post_init__(self):
        in_dims = tuple(int(d) for d in self.in_dims)
        out_b = tuple(int(d) for d in self.out_dims_b)
        out_e = tuple(int(d) for d in self.out_dims_e)
        if any(d < 2 for d in in_dims + out_b + out_e):
            raise DimensionError("subsystem dimensions must be >= 2")
        in_dim = math.prod(in_dims)
        out_dim = math.prod(out_b) * math.prod(out_e)
        ops = tuple(_freeze(as_matrix(k)) for k in self.kraus)
        for k in ops:
            if k.shape != (out_dim, in_dim):
                raise DimensionError(
                    f"Kraus operator shape {k.shape} != ({out_dim}, {in_dim})"
                )
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "in_dims", in_dims)
        object.__setattr__(self, "out_dims_b", out_b)
        object.__setattr__(self, "out_dims_e", out_e)

    @property
    def in_dim(self) -> int:
        return math.prod(self.in_dims)

    @property
    def dim_b(self) -> int:
        return math.prod(self.out_dims_b)

    @property
    def dim_e(self) -> int:
        return math.prod(self.out_dims_e)

    @property
    def out_dims(self) -> tuple[int, ...]:
        return self.out_dims_b + self.out_dims_e

    @property
    def out_dim(self) -> int:
        return self.dim_b * self.dim_e


@dataclass(frozen=True)
class ChannelReport:
    passed: bool
    completeness_violation: float
    n_kraus: int


def validate_channel(ch: QuantumChannel, tol: float = 1e-9) -> ChannelReport:
    """Check Kraus completeness sum(K^dag K) = 1 within ``tol``."""
    if not ch.kraus:
        return ChannelReport(passed=False, completeness_violation=float("inf"), n_kraus=0)
    acc = np.zeros((ch.in_dim, ch.in_dim), dtype=np.complex128)
    for k in ch.kraus:
        acc += dagger(k) @ k
    dev = float(np.max(np.abs(acc - np.eye(ch.in_dim))))
    return ChannelReport(passed=dev <= tol, completeness_violation=dev, n_kraus=len(ch.kraus))


def apply_channel(ch: QuantumChannel, rho: DensityOperator) -> DensityOperator:
    """Apply sum_i K_i rho K_i^dag; output lives on H_B (x) H_E."""
    if rho.dim != ch.in_dim:
        raise DimensionError(f"state dim {rho.dim} != channel input dim {ch.in_dim}")
    out = apply_channel_raw(ch, rho.mat)
    return DensityOperator(out, ch.out_dims)


def apply_channel_raw(ch: QuantumChannel, mat: np.ndarray) -> np.ndarray:
    """Channel action on a raw matrix, without output validation."""
    mat = as_matrix(mat)
    out = np.zeros((ch.out_dim, ch.out_dim), dtype=np.complex128)
    for k in ch.kraus:
        out += k @ mat @ dagger(k)
    return out


def apply_channel_to_vector(ch: QuantumChannel, psi: np.ndarray) -> DensityOperator:
    """Channel action on a pure input |psi><psi| (cheaper than the dense path)."""
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.size != ch.in_dim:
        raise DimensionError(f"vector dim {psi.size} != channel input dim {ch.in_dim}")
    out = np.zeros((ch.out_dim, ch.out_dim), dtype=np.complex128)
    for k in ch.kraus:
        w = k @ psi
        out += np.outer(w, np.conj(w))
    return DensityOperator(out, ch.out_dims)


def vector_marginals(ch: QuantumChannel, psi: np.ndarray):
    """B and E marginals of the channel output for a pure input vector.

    Avoids materializing the full B (x) E output: each Kraus image is
    reshaped to a (dim_B, dim_E) amplitude block W, for which
    tr_E = W W^dag and tr_B = W^T conj(W).
    """
    psi = np.asarray(psi, dtype=np.complex128).ravel()
    if psi.size != ch.in_dim:
        raise DimensionError(f"vector dim {psi.size} != channel input dim {ch.in_dim}")
    db, de = ch.dim_b, ch.dim_e
    rho_b = np.zeros((db, db), dtype=np.complex128)
    rho_e = np.zeros((de, de), dtype=np.complex128)
    for k in ch.kraus:
        w = (k @ psi).reshape(db, de)
        rho_b += w @ np.conj(w).T
        rho_e += w.T @ np.conj(w)
    return rho_b, rho_e


def isometry_to_channel(
    v,
    in_dims,
    out_dims_b,
    out_dims_e,
    env_dim: int = 1,
    name: str = "",
    tol: float = 1e-9,
) -> QuantumChannel:
    """Channel from an isometry V: H_A -> H_B (x) H_E (x) H_env.

    When ``env_dim`` is 1 the result is the single-Kraus channel V;
    otherwise the environment (last tensor factor) is traced out and
    the Kraus operators are the environment-basis slices <e_k| V.
    """
    v = as_matrix(v)
    in_dims = tuple(int(d) for d in in_dims)
    in_dim = math.prod(in_dims)
    out_dim = math.prod(out_dims_b) * math.prod(out_dims_e)
    if v.shape != (out_dim * env_dim, in_dim):
        raise DimensionError(
            f"isometry shape {v.shape} != ({out_dim * env_dim}, {in_dim})"
        )
    dev = float(np.max(np.abs(dagger(v) @ v - np.eye(in_dim))))
    if dev > tol:
        raise ValidationError(f"not an isometry: max |V^dag V - 1| = {dev:.3e}")
    if env_dim == 1:
        ops = [v]
    else:
        blocks = v.reshape(out_dim, env_dim, in_dim)
        ops = [np.ascontiguousarray(blocks[:, k, :]) for k in range(env_dim)]
    return QuantumChannel(
        kraus=tuple(ops),
        in_dims=in_dims,
        out_dims_b=tuple(out_dims_b),
        out_dims_e=tuple(out_dims_e),
        name=name,
    )


def matrix_to_pairs(m: np.ndarray) -> list:
    """Nested [re, im] pair encoding used by the JSON interfaces."""
    m = as_matrix(m)
    return [[[float(x.real), float(x.imag)] for x in row] for row in m]


def matrix_from_pairs(rows) -> np.ndarray:
    arr = np.asarray(rows, dtype=np.float64)
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise ValidationError("matrix encoding must be a 2-D grid of [re, im] pairs")
    return np.ascontiguousarray(arr[..., 0] + 1j * arr[..., 1])


def channel_to_dict(ch: QuantumChannel) -> dict:
    return {
        "name": ch.name,
        "in_dims": list(ch.in_dims),
        "out_dims_B": list(ch.out_dims_b),
        "out_dims_E": list(ch.out_dims_e),
        "kraus": [matrix_to_pairs(k) for k in ch.kraus],
    }


def channel_from_dict(data: dict) -> QuantumChannel:
    try:
        return QuantumChannel(
            kraus=tuple(matrix_from_pairs(k) for k in data["kraus"]),
            in_dims=tuple(data["in_dims"]),
            out_dims_b=tuple(data["out_dims_B"]),
            out_dims_e=tuple(data["out_dims_E"]),
            name=str(data.get("name", "")),
        )
    except KeyError as exc:
        raise ValidationError(f"channel serialization missing key {exc}") from exc
