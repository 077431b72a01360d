"""Dense complex linear algebra used everywhere else in the package.

All matrices are plain numpy arrays (complex128). Bipartite structure is
row-major throughout: the composite index is a * dB + b, so the first
tensor factor is the slow index.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionError, NotHermitianError

HERMITIAN_ATOL = 1e-10


def as_square(m) -> np.ndarray:
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def tensor(a, b) -> np.ndarray:
    """Kronecker product; index convention (i, j) -> i * dim(b) + j."""
    return np.kron(as_square(a), as_square(b))


def _split(m, dA: int, dB: int) -> np.ndarray:
    a = as_square(m)
    if dA < 1 or dB < 1 or a.shape[0] != dA * dB:
        raise DimensionError(
            f"matrix of dimension {a.shape[0]} does not factor as {dA}x{dB}"
        )
    return a.reshape(dA, dB, dA, dB)


def partial_trace(m, dA: int, dB: int, keep: str = "A") -> np.ndarray:
    """Trace out one tensor factor of a dA*dB square matrix.

    keep="A" returns the dA x dA reduction, keep="B" the dB x dB one.
    """
    t = _split(m, dA, dB)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise DimensionError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose(m, dA: int, dB: int, side: str = "B") -> np.ndarray:
    """Transpose the indices of one factor only (the other is untouched)."""
    t = _split(m, dA, dB)
    if side == "B":
        out = t.transpose(0, 3, 2, 1)
    elif side == "A":
        out = t.transpose(2, 1, 0, 3)
    else:
        raise DimensionError(f"side must be 'A' or 'B', got {side!r}")
    return out.reshape(dA * dB, dA * dB)


def hermitian_eigen(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and eigenvector columns of a Hermitian matrix.

    The input is symmetrized as (M + M†)/2 before the solve; asymmetry
    beyond HERMITIAN_ATOL raises NotHermitianError instead.
    """
    a = as_square(m)
    if np.abs(a - a.conj().T).max() > HERMITIAN_ATOL:
        raise NotHermitianError(
            f"matrix deviates from Hermitian by more than {HERMITIAN_ATOL}"
        )
    vals, vecs = np.linalg.eigh((a + a.conj().T) / 2)
    return vals, vecs


def hermitian_eigenvalues(m) -> np.ndarray:
    """Ascending eigenvalues only; same tolerance contract as hermitian_eigen."""
    a = as_square(m)
    if np.abs(a - a.conj().T).max() > HERMITIAN_ATOL:
        raise NotHermitianError(
            f"matrix deviates from Hermitian by more than {HERMITIAN_ATOL}"
        )
    return np.linalg.eigvalsh((a + a.conj().T) / 2)
