"""Perfect-distinguishability decisions and message-set partitioning.

A family of states is perfectly distinguishable exactly when the
supports are pairwise orthogonal; the support projectors then form a
sub-PVM that identifies each member with certainty.  The partition
routine groups all 2^n messages greedily into such classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError
from .operators import (
    DECISION_TOL,
    SPECTRAL_TOL,
    DensityOperator,
    Projector,
    hermitian_eigensystem,
)


@dataclass(frozen=True)
class DistinguishableClass:
    """Messages whose receiver states are jointly perfectly distinguishable.

    Classes of size >= 2 carry the identifying sub-PVM (one support
    projector per member, in member order); singletons carry none and
    are handled by the literal fallback code downstream.
    """

    members: tuple[int, ...]
    pvm: tuple[Projector, ...] = ()

    def __post_init__(self):
        members = tuple(int(m) for m in self.members)
        if not members or list(members) != sorted(set(members)):
            raise DimensionError("members must be nonempty, sorted and unique")
        if self.pvm and len(self.pvm) != len(members):
            raise DimensionError("pvm must have one projector per member")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "pvm", tuple(self.pvm))

    @property
    def size(self) -> int:
        return len(self.members)

    @property
    def smallest(self) -> int:
        return self.members[0]


def support_projector(rho: DensityOperator, tol: float = SPECTRAL_TOL) -> Projector:
    """Projector onto the span of eigenvectors with eigenvalue > tol."""
    vals, vecs = hermitian_eigensystem(rho.mat)
    cols = vecs[:, vals > tol]
    mat = cols @ np.conj(cols).T
    return Projector(mat, rho.dims)


def _overlap_table(states: Sequence[DensityOperator], supports: Sequence[Projector]) -> np.ndarray:
    rho = np.stack([s.mat for s in states])
    proj = np.stack([p.mat for p in supports])
    # ov[i, j] = tr(rho_i P_j); real for Hermitian operands.
    return np.einsum("iab,jba->ij", rho, proj).real


def perfectly_distinguishable(
    states: Sequence[DensityOperator],
    tol: float = DECISION_TOL,
) -> list[Projector] | None:
    """Support projectors if all pairs have orthogonal supports, else None."""
    states = list(states)
    if not states:
        return []
    dim = states[0].dim
    if any(s.dim != dim for s in states):
        raise DimensionError("states must share one dimension")
    supports = [support_projector(s) for s in states]
    ov = _overlap_table(states, supports)
    k = len(states)
    for i in range(k):
        for j in range(k):
            if i != j and ov[i, j] > tol:
                return None
    return supports


def distinguishable_partition(
    states: Sequence[DensityOperator],
    tol: float = DECISION_TOL,
) -> list[DistinguishableClass]:
    """Greedy partition of the message set into distinguishable classes.

    Messages are visited in lexicographic order; each joins the first
    existing class all of whose members have supports orthogonal to its
    own (both directions below ``tol``), otherwise it opens a new class.
    The rule is deterministic, so identical inputs give identical
    partitions.
    """
    states = list(states)
    if not states:
        return []
    dim = states[0].dim
    if any(s.dim != dim for s in states):
        raise DimensionError("states must share one dimension")
    supports = [support_projector(s) for s in states]
    ov = _overlap_table(states, supports)
    classes: list[list[int]] = []
    for msg in range(len(states)):
        for cls in classes:
            if all(max(ov[msg, w], ov[w, msg]) <= tol for w in cls):
                cls.append(msg)
                break
        else:
            classes.append([msg])
    out = []
    for cls in classes:
        members = tuple(cls)
        pvm = tuple(supports[m] for m in members) if len(members) >= 2 else ()
        out.append(DistinguishableClass(members=members, pvm=pvm))
    return out
