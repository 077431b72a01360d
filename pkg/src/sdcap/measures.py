"""Entropic quantities for dense coding over a shared bipartite state.

Every entropy here is in bits (log base 2). The coherent-information
style quantity I^B = max{S(rho_B) - S(rho), 0} lower-bounds how much the
B side can gain from the correlations; the per-transmission figure
I_sd = I_M / S(rho_A) compares the mutual information against the qubits
Alice actually sends.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import (
    DegenerateSenderEntropy,
    DimensionError,
    InvariantViolation,
    NotHermitianError,
)
from .states import BipartiteState

EIG_CLIP = 1e-10
SENDER_ENTROPY_FLOOR = 1e-9


def _spectrum(m) -> np.ndarray:
    """Eigenvalues of a density-like matrix with round-off clipped to zero."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if np.abs(a - a.conj().T).max() > 1e-10:
        raise NotHermitianError("entropy input is not Hermitian within 1e-10")
    vals = np.linalg.eigvalsh((a + a.conj().T) / 2)
    low = vals.min()
    if low < -EIG_CLIP:
        raise InvariantViolation(
            f"eigenvalue {low} below the -{EIG_CLIP} clipping floor"
        )
    return np.clip(vals, 0.0, None)


def shannon_bits(vals: np.ndarray) -> float:
    """-sum p log2 p over the positive entries (0 log 0 = 0)."""
    v = np.asarray(vals, dtype=np.float64)
    pos = v[v > 0.0]
    if pos.size == 0:
        return 0.0
    return float(-(pos * np.log2(pos)).sum())


def entropy(m) -> float:
    """von Neumann entropy in bits."""
    return shannon_bits(_spectrum(m))


def coherent_info(s: BipartiteState) -> float:
    """max{S(rho_B) - S(rho), 0}."""
    return max(entropy(s.reduced_b()) - entropy(s.rho), 0.0)


def mutual_info(s: BipartiteState) -> float:
    """S(rho_A) + S(rho_B) - S(rho)."""
    return entropy(s.reduced_a()) + entropy(s.reduced_b()) - entropy(s.rho)


def i_sd(s: BipartiteState) -> float:
    """Mutual information per sent qubit, I_M / S(rho_A).

    Raises DegenerateSenderEntropy when S(rho_A) <= 1e-9; the ratio has no
    meaning when Alice's share carries no entropy.
    """
    sa = entropy(s.reduced_a())
    if sa <= SENDER_ENTROPY_FLOOR:
        raise DegenerateSenderEntropy(
            f"sender entropy {sa} is below {SENDER_ENTROPY_FLOOR}"
        )
    return mutual_info(s) / sa


@dataclass(frozen=True)
class Ensemble:
    """Finite ensemble {(p_i, state_i)} on a fixed pair of dimensions."""

    items: tuple[tuple[float, BipartiteState], ...]

    def __post_init__(self):
        items = tuple((float(p), s) for p, s in self.items)
        if not items:
            raise DimensionError("ensemble must have at least one member")
        dims = {(s.dA, s.dB) for _, s in items}
        if len(dims) != 1:
            raise DimensionError(f"ensemble mixes dimensions: {sorted(dims)}")
        probs = np.array([p for p, _ in items])
        if probs.min() < 0.0:
            raise InvariantViolation(f"negative probability {probs.min()}")
        if abs(probs.sum() - 1.0) > 1e-10:
            raise InvariantViolation(
                f"probabilities sum to {probs.sum()}, expected 1"
            )
        object.__setattr__(self, "items", items)

    def average(self) -> np.ndarray:
        out = np.zeros_like(self.items[0][1].rho)
        for p, s in self.items:
            out += p * s.rho
        return out


def holevo(e: Ensemble) -> float:
    """S(sum p_i rho_i) - sum p_i S(rho_i)."""
    avg = entropy(e.average())
    return avg - sum(p * entropy(s.rho) for p, s in e.items)
