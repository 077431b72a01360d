"""Scrambling unitary families and the dense-coding encodings they induce.

A set of d^2 unitaries {U_i} scrambles when sum_i U_i M U_i† = 0 for every
traceless M. Signaling with the uniform ensemble {1/d^2, (U_i Lambda (x) 1) rho}
then has average state 1/d (x) rho_B, which pins the Holevo information at
log2(d) + S(rho_B) - S((Lambda (x) 1) rho) exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import KrausChannel, apply_A, unitary_channel
from .exceptions import DimensionError, DomainError, InvariantViolation
from .exceptions import DegenerateSenderEntropy
from .measures import (
    Ensemble,
    SENDER_ENTROPY_FLOOR,
    coherent_info,
    entropy,
    holevo,
)
from .states import BipartiteState

SCRAMBLE_TOL_COEFF = 1e-8  # residual bound is SCRAMBLE_TOL_COEFF * d^2


@dataclass(frozen=True)
class ScramblingSet:
    """d^2 unitaries on a d-dimensional space used as signal operations."""

    d: int
    unitaries: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.d < 2:
            raise DomainError(f"scrambling needs dimension >= 2, got {self.d}")
        ops = tuple(np.asarray(u, dtype=np.complex128) for u in self.unitaries)
        if len(ops) != self.d * self.d:
            raise DimensionError(
                f"need exactly d^2 = {self.d * self.d} unitaries, got {len(ops)}"
            )
        eye = np.eye(self.d)
        for u in ops:
            if u.shape != (self.d, self.d):
                raise DimensionError(f"element shape {u.shape} != ({self.d}, {self.d})")
            if np.abs(u.conj().T @ u - eye).max() > 1e-10:
                raise InvariantViolation("scrambling element is not unitary within 1e-10")
        object.__setattr__(self, "unitaries", ops)

    def residual(self, basis=None) -> float:
        """Largest entry of sum_i U_i M U_i† over a traceless basis."""
        if basis is None:
            basis = gell_mann_basis(self.d)
        worst = 0.0
        for m in basis:
            acc = np.zeros((self.d, self.d), dtype=np.complex128)
            for u in self.unitaries:
                acc += u @ m @ u.conj().T
            worst = max(worst, float(np.abs(acc).max()))
        return worst

    def validate(self) -> None:
        tol = SCRAMBLE_TOL_COEFF * self.d * self.d
        res = self.residual()
        if res > tol:
            raise InvariantViolation(
                f"scrambling residual {res} exceeds {tol}"
            )


def weyl_set(d: int) -> ScramblingSet:
    """The d^2 shift-and-clock unitaries X^a Z^b, omega = exp(2 pi i / d).

    For d = 2 these are the Pauli operations up to phase.
    """
    if d < 2:
        raise DomainError(f"weyl_set needs d >= 2, got {d}")
    omega = np.exp(2j * np.pi / d)
    x = np.zeros((d, d), dtype=np.complex128)
    for k in range(d):
        x[(k + 1) % d, k] = 1.0
    z = np.diag(omega ** np.arange(d))
    ops = []
    for a in range(d):
        xa = np.linalg.matrix_power(x, a)
        for b in range(d):
            ops.append(xa @ np.linalg.matrix_power(z, b))
    return ScramblingSet(d, tuple(ops))


def gell_mann_basis(d: int) -> list[np.ndarray]:
    """d^2 - 1 traceless Hermitian matrices spanning the traceless space."""
    if d < 2:
        raise DomainError(f"gell_mann_basis needs d >= 2, got {d}")
    out = []
    for j in range(d):
        for k in range(j + 1, d):
            sym = np.zeros((d, d), dtype=np.complex128)
            sym[j, k] = sym[k, j] = 1.0
            out.append(sym)
            asym = np.zeros((d, d), dtype=np.complex128)
            asym[j, k] = -1j
            asym[k, j] = 1j
            out.append(asym)
    for l in range(1, d):
        diag = np.zeros(d, dtype=np.complex128)
        diag[:l] = 1.0
        diag[l] = -l
        out.append(np.diag(diag) * np.sqrt(2.0 / (l * (l + 1))))
    return out


def encode_ensemble(s: BipartiteState, ch: KrausChannel, sset: ScramblingSet) -> Ensemble:
    """Uniform signal ensemble {1/d^2, (U_i Lambda (x) 1) s}."""
    if ch.d_in != s.dA:
        raise DimensionError(
            f"channel input {ch.d_in} does not match state dA {s.dA}"
        )
    if ch.d_out != sset.d:
        raise DimensionError(
            f"channel output {ch.d_out} does not match scrambling dimension {sset.d}"
        )
    eta = apply_A(ch, s)
    p = 1.0 / (sset.d * sset.d)
    members = tuple(
        (p, apply_A(unitary_channel(u), eta)) for u in sset.unitaries
    )
    return Ensemble(members)


def verify_achievability(s: BipartiteState, ch: KrausChannel) -> tuple[float, float, float]:
    """Holevo value of the scrambled ensemble vs. the entropy-gain bound.

    Returns (lhs, rhs, gap) with
        lhs = holevo(encode_ensemble(s, ch, weyl_set(d)))
        rhs = log2(d) + S(eta_B) - S(eta),  eta = (Lambda (x) 1) s.
    The difference S(eta_B) - S(eta) is kept unclamped: that is the exact
    per-signal value of this encoding. It coincides with I^B whenever the
    channel leaves S(eta_B) >= S(eta), which covers every optimum.
    """
    d = ch.d_out
    ens = encode_ensemble(s, ch, weyl_set(d))
    lhs = holevo(ens)
    eta = apply_A(ch, s)
    rhs = np.log2(d) + entropy(eta.reduced_b()) - entropy(eta.rho)
    return lhs, float(rhs), lhs - float(rhs)


def rate_per_qubit(s_after: BipartiteState) -> float:
    """1 + I^B / S(rho_A) for an already-processed state."""
    sa = entropy(s_after.reduced_a())
    if sa <= SENDER_ENTROPY_FLOOR:
        raise DegenerateSenderEntropy(
            f"sender entropy {sa} is below {SENDER_ENTROPY_FLOOR}"
        )
    return 1.0 + coherent_info(s_after) / sa
