import numpy as np
import pytest

from sdcap.exceptions import DimensionError, NotHermitianError
from sdcap.linalg import (
    dagger,
    hermitian_eigen,
    hermitian_eigenvalues,
    partial_trace,
    partial_transpose,
    tensor,
)

from conftest import random_density


# Index-summation definitions, kept deliberately naive so they cannot share a
# bug with the einsum implementations they check.


def pt_oracle(m, dA, dB, keep):
    if keep == "A":
        out = np.zeros((dA, dA), dtype=complex)
        for i in range(dA):
            for k in range(dA):
                out[i, k] = sum(m[i * dB + j, k * dB + j] for j in range(dB))
    else:
        out = np.zeros((dB, dB), dtype=complex)
        for j in range(dB):
            for l in range(dB):
                out[j, l] = sum(m[i * dB + j, i * dB + l] for i in range(dA))
    return out


def ptrans_oracle(m, dA, dB, side):
    out = np.zeros_like(np.asarray(m, dtype=complex))
    for i in range(dA):
        for j in range(dB):
            for k in range(dA):
                for l in range(dB):
                    if side == "B":
                        out[i * dB + j, k * dB + l] = m[i * dB + l, k * dB + j]
                    else:
                        out[i * dB + j, k * dB + l] = m[k * dB + j, i * dB + l]
    return out


SX = np.array([[0, 1], [1, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def test_tensor_matches_hand_expansion():
    expected = np.array(
        [
            [0, 0, 1, 0],
            [0, 0, 0, -1],
            [1, 0, 0, 0],
            [0, -1, 0, 0],
        ],
        dtype=complex,
    )
    assert np.array_equal(tensor(SX, SZ), expected)


def test_dagger():
    m = np.array([[1, 2j], [3, 4]], dtype=complex)
    assert np.array_equal(dagger(m), m.conj().T)


@pytest.mark.parametrize("dA,dB", [(2, 2), (2, 3), (3, 2), (4, 5)])
@pytest.mark.parametrize("keep", ["A", "B"])
def test_partial_trace_against_index_sums(dA, dB, keep, rng):
    m = rng.normal(size=(dA * dB, dA * dB)) + 1j * rng.normal(size=(dA * dB, dA * dB))
    got = partial_trace(m, dA, dB, keep=keep)
    assert np.allclose(got, pt_oracle(m, dA, dB, keep), atol=1e-13)


def test_partial_trace_of_kron_factorizes(rng):
    a = random_density(3, rng)
    b = random_density(2, rng)
    assert np.allclose(partial_trace(np.kron(a, b), 3, 2, keep="A"), a, atol=1e-13)
    assert np.allclose(partial_trace(np.kron(a, b), 3, 2, keep="B"), b, atol=1e-13)


def test_partial_trace_rejects_bad_dims():
    with pytest.raises(DimensionError):
        partial_trace(np.eye(6), 2, 2)
    with pytest.raises(DimensionError):
        partial_trace(np.ones((2, 3)), 1, 2)


def test_partial_trace_rejects_bad_keep():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), 2, 2, keep="C")


@pytest.mark.parametrize("dA,dB", [(2, 2), (2, 3), (3, 3)])
@pytest.mark.parametrize("side", ["A", "B"])
def test_partial_transpose_against_index_sums(dA, dB, side, rng):
    m = rng.normal(size=(dA * dB, dA * dB)) + 1j * rng.normal(size=(dA * dB, dA * dB))
    got = partial_transpose(m, dA, dB, side=side)
    assert np.allclose(got, ptrans_oracle(m, dA, dB, side), atol=1e-13)


def test_partial_transpose_involution_and_kron(rng):
    m = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    assert np.allclose(partial_transpose(partial_transpose(m, 2, 3), 2, 3), m)
    a = random_density(2, rng)
    b = random_density(3, rng)
    assert np.allclose(partial_transpose(np.kron(a, b), 2, 3, side="B"), np.kron(a, b.T))
    assert np.allclose(partial_transpose(np.kron(a, b), 2, 3, side="A"), np.kron(a.T, b))


def test_singlet_partial_transpose_spectrum():
    # (|01> - |10>)/sqrt(2); its partial transpose famously has eigenvalue -1/2.
    v = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
    pt = partial_transpose(np.outer(v, v.conj()), 2, 2)
    vals = np.linalg.eigvalsh(pt)
    assert np.allclose(sorted(vals), [-0.5, 0.5, 0.5, 0.5], atol=1e-12)


def test_hermitian_eigen_reconstructs(rng):
    m = random_density(5, rng)
    vals, vecs = hermitian_eigen(m)
    assert np.all(np.diff(vals) >= 0)
    assert np.allclose(vecs @ np.diag(vals) @ vecs.conj().T, m, atol=1e-12)
    assert np.allclose(hermitian_eigenvalues(m), vals)


def test_hermitian_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigen(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(NotHermitianError):
        hermitian_eigenvalues(np.array([[0.0, 1e-6], [0.0, 0.0]]))


def test_hermitian_eigen_tolerates_roundoff_asymmetry():
    m = np.array([[1.0, 0.5 + 1e-13], [0.5, 1.0]], dtype=complex)
    vals = hermitian_eigenvalues(m)
    assert np.allclose(vals, [0.5, 1.5], atol=1e-9)
