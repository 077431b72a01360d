"""Spectral entanglement criteria used to cross-check the capacity search.

A state satisfying the reduction criterion on the B side has
S(rho) >= S(rho_B), hence zero coherent-information gain: local maps
cannot create an advantage where the criterion already holds.
"""

from __future__ import annotations

import numpy as np

from .linalg import partial_transpose
from .states import BipartiteState

PSD_ATOL = 1e-9


def is_ppt(s: BipartiteState, atol: float = PSD_ATOL) -> bool:
    """True when the partial transpose has no eigenvalue below -atol."""
    pt = partial_transpose(s.rho, s.dA, s.dB, side="B")
    return bool(np.linalg.eigvalsh(pt).min() >= -atol)


def reduction_criterion(s: BipartiteState, atol: float = PSD_ATOL) -> tuple[bool, bool]:
    """(holdsA, holdsB): whether rho_A (x) 1 - rho and 1 (x) rho_B - rho
    are positive semidefinite within atol."""
    ra = np.kron(s.reduced_a(), np.eye(s.dB))
    rb = np.kron(np.eye(s.dA), s.reduced_b())
    holds_a = bool(np.linalg.eigvalsh(ra - s.rho).min() >= -atol)
    holds_b = bool(np.linalg.eigvalsh(rb - s.rho).min() >= -atol)
    return holds_a, holds_b
