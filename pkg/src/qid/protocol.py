"""The toy prepare-and-send protocol and its entanglement-based twin.

Alice encodes an N-bit message in either the computational (Z) or the
conjugate (X) basis and sends it through an eavesdropping channel; the
equivalent picture distributes halves of EPR pairs and measures the
retained qubits afterwards.  Tensor factors are ordered A' (x) B (x) E
throughout, with message qubit 1 leftmost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .channels import (
    QuantumChannel,
    apply_channel_to_vector,
    validate_channel,
    vector_marginals,
)
from .errors import CapacityError, DimensionError, ValidationError
from .operators import DensityOperator

BASES = ("Z", "X")
SIDES = ("B", "E")

# Dense A' (x) B (x) E states scale as 2^(6N) in memory; above this the
# structured identities must be used instead.
DENSE_THETA_LIMIT = 2

Basis = Literal["Z", "X"]
Side = Literal["B", "E"]


def _check_message(msg: int, n: int) -> int:
    msg = int(msg)
    if not 0 <= msg < 2**n:
        raise ValidationError(f"message {msg} out of range for n={n}")
    return msg


def _check_basis(basis: str) -> str:
    if basis not in BASES:
        raise ValidationError(f"basis must be one of {BASES}, got {basis!r}")
    return basis


def message_bits(msg: int, n: int) -> str:
    return format(_check_message(msg, n), f"0{n}b")


def encode(msg: int, basis: Basis, n: int) -> np.ndarray:
    """Pure state vector |msg> (Z) or the conjugate-basis |msg-bar> (X)."""
    msg = _check_message(msg, n)
    _check_basis(basis)
    dim = 2**n
    if basis == "Z":
        v = np.zeros(dim, dtype=np.complex128)
        v[msg] = 1.0
        return v
    signs = np.array([(-1) ** ((msg & z).bit_count()) for z in range(dim)], dtype=np.float64)
    return (signs / math.sqrt(dim)).astype(np.complex128)


def epr_state(n: int) -> np.ndarray:
    """N EPR pairs with all A' factors first, then all A factors."""
    if n < 1:
        raise ValidationError("need n >= 1")
    if 4**n > 4096:
        raise CapacityError(f"EPR register of {2 * n} qubits exceeds the dense limit")
    dim = 2**n
    v = np.zeros(dim * dim, dtype=np.complex128)
    amp = 1.0 / math.sqrt(dim)
    for z in range(dim):
        v[z * dim + z] = amp
    return v


@dataclass(frozen=True)
class ProtocolInstance:
    """A fixed (n, channel) pair with Bob's and Eve's reduced states cached.

    ``rho_b[z]`` is Bob's state for the Z-encoded message z and
    ``sigma_e[x]`` Eve's state for the X-encoded message x; both caches
    cover all 2^n messages and are immutable after construction.
    """

    n: int
    channel: QuantumChannel
    rho_b: tuple[DensityOperator, ...]
    sigma_e: tuple[DensityOperator, ...]

    @classmethod
    def from_channel(cls, channel: QuantumChannel) -> "ProtocolInstance":
        if any(d != 2 for d in channel.in_dims):
            raise DimensionError("protocol channels must act on qubit registers")
        report = validate_channel(channel, 1e-9)
        if not report.passed:
            raise ValidationError(
                f"channel fails completeness by {report.completeness_violation:.3e}"
            )
        n = len(channel.in_dims)
        rho_b = []
        sigma_e = []
        for msg in range(2**n):
            bmat, _ = vector_marginals(channel, encode(msg, "Z", n))
            _, emat = vector_marginals(channel, encode(msg, "X", n))
            rho_b.append(DensityOperator(bmat, channel.out_dims_b))
            sigma_e.append(DensityOperator(emat, channel.out_dims_e))
        return cls(n=n, channel=channel, rho_b=tuple(rho_b), sigma_e=tuple(sigma_e))


def make_instance(channel: QuantumChannel) -> ProtocolInstance:
    return ProtocolInstance.from_channel(channel)


def joint_state(inst: ProtocolInstance, msg: int, basis: Basis) -> DensityOperator:
    """Channel output on H_B (x) H_E for one encoded message."""
    return apply_channel_to_vector(inst.channel, encode(msg, basis, inst.n))


def receiver_state(inst: ProtocolInstance, msg: int, basis: Basis, side: Side) -> DensityOperator:
    """Reduced state of one side for one encoded message.

    The theorem consumes (Z, B) and (X, E), which are served from the
    instance cache; the other two pairings are computed on demand.
    """
    msg = _check_message(msg, inst.n)
    _check_basis(basis)
    if side not in SIDES:
        raise ValidationError(f"side must be one of {SIDES}, got {side!r}")
    if basis == "Z" and side == "B":
        return inst.rho_b[msg]
    if basis == "X" and side == "E":
        return inst.sigma_e[msg]
    bmat, emat = vector_marginals(inst.channel, encode(msg, basis, inst.n))
    if side == "B":
        return DensityOperator(bmat, inst.channel.out_dims_b)
    return DensityOperator(emat, inst.channel.out_dims_e)


def theta_matrix(channel: QuantumChannel, force: bool = False) -> np.ndarray:
    """Raw dense matrix of (id (x) channel) applied to the EPR register."""
    n = len(channel.in_dims)
    if n > DENSE_THETA_LIMIT and not force:
        raise CapacityError(
            f"dense global state needs n <= {DENSE_THETA_LIMIT} (got {n}); "
            "pass force=True to override"
        )
    dim_a = 2**n
    phi = epr_state(n).reshape(dim_a, dim_a)
    out_dim = channel.out_dim
    theta = np.zeros((dim_a * out_dim, dim_a * out_dim), dtype=np.complex128)
    for k in channel.kraus:
        w = (phi @ k.T).ravel()
        theta += np.outer(w, np.conj(w))
    return theta


def global_state_theta(inst: ProtocolInstance, force: bool = False) -> DensityOperator:
    """Whole state on H_A' (x) H_B (x) H_E in the entanglement picture."""
    mat = theta_matrix(inst.channel, force=force)
    dims = (2,) * inst.n + inst.channel.out_dims
    return DensityOperator(mat, dims)


def _project_aposteriori(theta: np.ndarray, probe: np.ndarray, d_rest: int):
    """Probability and conditional block for a rank-1 probe on A'."""
    d_a = probe.size
    t4 = theta.reshape(d_a, d_rest, d_a, d_rest)
    block = np.einsum("a,abcd,c->bd", np.conj(probe), t4, probe)
    prob = float(np.trace(block).real)
    return prob, block


def aposteriori(
    inst: ProtocolInstance,
    basis: Basis,
    msg: int,
    method: str = "structured",
    force: bool = False,
):
    """Outcome probability and conditional state on H_B (x) H_E.

    The structured path uses the closed form: probability 2^-n and
    state equal to the channel output for the encoded message.  The
    dense path extracts both from the materialized global state and is
    what the equivalence check compares against.
    """
    msg = _check_message(msg, inst.n)
    _check_basis(basis)
    if method == "structured":
        return 2.0 ** (-inst.n), joint_state(inst, msg, basis)
    if method != "dense":
        raise ValidationError(f"unknown method {method!r}")
    theta = theta_matrix(inst.channel, force=force)
    probe = encode(msg, basis, inst.n)
    prob, block = _project_aposteriori(theta, probe, inst.channel.out_dim)
    if prob <= 0.0:
        raise ValidationError(f"zero-probability branch for ({basis}, {msg})")
    return prob, DensityOperator(block / prob, inst.channel.out_dims)


@dataclass(frozen=True)
class EquivalenceReport:
    """Dense-vs-structured comparison of the two protocol pictures."""

    n: int
    max_probability_deviation: float
    max_state_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return (
            self.max_probability_deviation <= self.tol
            and self.max_state_deviation <= self.tol
        )


def equivalence_check(
    target: ProtocolInstance | QuantumChannel,
    tol: float = 1e-10,
    force: bool = False,
) -> EquivalenceReport:
    """Verify the entanglement-based picture reproduces prepare-and-send.

    Accepts a raw channel as well, so deliberately corrupted (non
    trace-preserving) channels can be shown to fail the uniformity of
    the outcome probabilities.
    """
    channel = target.channel if isinstance(target, ProtocolInstance) else target
    n = len(channel.in_dims)
    theta = theta_matrix(channel, force=force)
    uniform = 2.0 ** (-n)
    max_prob = 0.0
    max_state = 0.0
    for basis in BASES:
        for msg in range(2**n):
            probe = encode(msg, basis, n)
            prob, block = _project_aposteriori(theta, probe, channel.out_dim)
            max_prob = max(max_prob, abs(prob - uniform))
            ref = np.zeros((channel.out_dim, channel.out_dim), dtype=np.complex128)
            for k in channel.kraus:
                w = k @ probe
                ref += np.outer(w, np.conj(w))
            if prob > 0.0:
                max_state = max(max_state, float(np.max(np.abs(block / prob - ref))))
            else:
                max_state = float("inf")
    return EquivalenceReport(
        n=n,
        max_probability_deviation=max_prob,
        max_state_deviation=max_state,
        tol=tol,
    )
