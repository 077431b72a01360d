"""CPTP maps in Kraus form and the angle parametrization the searches walk.

A channel dIn -> dOut is stored as Kraus operators K_e (dOut x dIn) with
sum K†K = 1 within COMPLETENESS_ATOL. For optimization the channel comes
from a Stinespring isometry V: dIn -> dOut * envDim, built as a product of
two-level Givens-with-phase rotations applied to the first dIn columns of
a (dOut*envDim)-dimensional rotation, so every angle vector is a valid
channel and the whole isometry manifold is reachable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, DomainError, InvariantViolation
from .states import BipartiteState, _fmt

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is expected; keep a slow path
    njit = None

COMPLETENESS_ATOL = 1e-9
KRAUS_PRUNE_NORM = 1e-12


def givens_pairs(D: int) -> list[tuple[int, int]]:
    """Rotation planes in the order the angle vector walks them:
    (0,1), (0,2), (1,2), (0,3), (1,3), (2,3), ..."""
    return [(i, k) for k in range(1, D) for i in range(k)]


def param_count(d_in: int, d_out: int, env_dim: int) -> int:
    """Angle vector length for an isometry d_in -> d_out * env_dim.

    D(D-1)/2 planes x (theta, phi) plus D column phases, D = d_out*env_dim.
    """
    D = d_out * env_dim
    if d_in < 1 or D < d_in:
        raise DimensionError(
            f"no isometry from dimension {d_in} into {d_out}x{env_dim}"
        )
    return D * D


def _isometry_from_angles(angles, D, d_in):
    # Layout: angles[2m] = theta_m, angles[2m+1] = phi_m over the plane
    # order of givens_pairs, then D phases. Zero angles give I[:, :d_in].
    V = np.zeros((D, d_in), dtype=np.complex128)
    npairs = D * (D - 1) // 2
    for i in range(d_in):
        V[i, i] = np.cos(angles[2 * npairs + i]) + 1j * np.sin(angles[2 * npairs + i])
    idx = 0
    for k in range(1, D):
        for i in range(k):
            th = angles[2 * idx]
            ph = angles[2 * idx + 1]
            c = np.cos(th)
            s = np.sin(th)
            e = np.cos(ph) + 1j * np.sin(ph)
            for col in range(d_in):
                vi = V[i, col]
                vk = V[k, col]
                V[i, col] = c * vi - e * s * vk
                V[k, col] = np.conj(e) * s * vi + c * vk
            idx += 1
    return V


if njit is not None:
    _isometry_from_angles = njit(cache=True)(_isometry_from_angles)


def isometry_from_angles(angles: np.ndarray, d_in: int, d_out: int, env_dim: int) -> np.ndarray:
    """The (d_out*env_dim) x d_in isometry encoded by an angle vector."""
    a = np.ascontiguousarray(angles, dtype=np.float64)
    expected = param_count(d_in, d_out, env_dim)
    if a.ndim != 1 or a.size != expected:
        raise DimensionError(
            f"angle vector has length {a.size}, parametrization needs {expected}"
        )
    return _isometry_from_angles(a, d_out * env_dim, d_in)


@dataclass(frozen=True)
class ChannelParams:
    """Angle-vector coordinates of a channel d_in -> d_out with env_dim
    environment levels."""

    d_in: int
    d_out: int
    env_dim: int
    angles: np.ndarray

    def __post_init__(self):
        a = np.ascontiguousarray(self.angles, dtype=np.float64)
        expected = param_count(self.d_in, self.d_out, self.env_dim)
        if a.ndim != 1 or a.size != expected:
            raise DimensionError(
                f"angle vector has length {a.size}, expected {expected} for "
                f"(d_in={self.d_in}, d_out={self.d_out}, env_dim={self.env_dim})"
            )
        object.__setattr__(self, "angles", a)


@dataclass(frozen=True)
class KrausChannel:
    """CPTP map d_in -> d_out as a tuple of Kraus operators."""

    d_in: int
    d_out: int
    kraus: tuple[np.ndarray, ...]

    def __post_init__(self):
        if self.d_in < 1 or self.d_out < 1:
            raise DimensionError("channel dimensions must be positive")
        ops = tuple(np.asarray(k, dtype=np.complex128) for k in self.kraus)
        if not 1 <= len(ops) <= self.d_in * self.d_out:
            raise InvariantViolation(
                f"{len(ops)} Kraus operators, expected between 1 and "
                f"{self.d_in * self.d_out}"
            )
        for k in ops:
            if k.shape != (self.d_out, self.d_in):
                raise DimensionError(
                    f"Kraus operator shape {k.shape} != "
                    f"({self.d_out}, {self.d_in})"
                )
        comp = sum(k.conj().T @ k for k in ops)
        if np.abs(comp - np.eye(self.d_in)).max() > COMPLETENESS_ATOL:
            raise InvariantViolation(
                "Kraus family is not trace preserving within "
                f"{COMPLETENESS_ATOL}"
            )
        object.__setattr__(self, "kraus", ops)

    def stacked(self) -> np.ndarray:
        return np.stack(self.kraus)


def apply(ch: KrausChannel, m) -> np.ndarray:
    """sum_e K_e m K_e† for a d_in x d_in matrix m."""
    a = np.asarray(m, dtype=np.complex128)
    if a.shape != (ch.d_in, ch.d_in):
        raise DimensionError(
            f"matrix shape {a.shape} does not match channel input {ch.d_in}"
        )
    k = ch.stacked()
    return np.einsum("eoi,ij,epj->op", k, a, k.conj())


def apply_A(ch: KrausChannel, s: BipartiteState) -> BipartiteState:
    """(Lambda (x) id) s: the channel acts on the A factor only."""
    if ch.d_in != s.dA:
        raise DimensionError(
            f"channel input {ch.d_in} does not match state dA {s.dA}"
        )
    k = ch.stacked()
    t = s.rho.reshape(s.dA, s.dB, s.dA, s.dB)
    out = np.einsum("eoi,ibjc,epj->obpc", k, t, k.conj())
    n = ch.d_out * s.dB
    return BipartiteState(ch.d_out, s.dB, out.reshape(n, n))


def from_params(p: ChannelParams) -> KrausChannel:
    """Kraus family of the parametrized Stinespring isometry.

    K_e = (1 (x) <e|) V; operators with Frobenius norm below
    KRAUS_PRUNE_NORM are dropped.
    """
    V = isometry_from_angles(p.angles, p.d_in, p.d_out, p.env_dim)
    blocks = V.reshape(p.d_out, p.env_dim, p.d_in)
    ops = []
    for e in range(p.env_dim):
        k = np.ascontiguousarray(blocks[:, e, :])
        if np.linalg.norm(k) >= KRAUS_PRUNE_NORM:
            ops.append(k)
    if not ops:  # completeness forces at least one sizeable block
        raise InvariantViolation("all Kraus blocks pruned; isometry is broken")
    if len(ops) > p.d_in * p.d_out:
        # oversized environments leave redundant blocks; the Choi rank caps
        # the minimal family at d_in * d_out
        ops = list(_minimal_kraus(ops, p.d_in, p.d_out))
    return KrausChannel(p.d_in, p.d_out, tuple(ops))


def identity_angles(d_in: int, d_out: int, env_dim: int) -> np.ndarray | None:
    """Angle vector whose channel embeds the input unchanged, when one exists.

    Targets the isometry |i> -> |i>_out |0>_env. For env_dim >= 2 the plane
    order only realizes it cleanly when env_dim >= d_in (each basis row hops
    to row i*env_dim through a single quarter-turn); returns None otherwise.
    """
    if d_out < d_in:
        return None
    n = param_count(d_in, d_out, env_dim)
    angles = np.zeros(n)
    if env_dim == 1:
        return angles
    if env_dim < d_in:
        return None
    pairs = givens_pairs(d_out * env_dim)
    order = {pq: m for m, pq in enumerate(pairs)}
    for i in range(1, d_in):
        angles[2 * order[(i, i * env_dim)]] = np.pi / 2
    return angles


def unitary_channel(u) -> KrausChannel:
    """Single-Kraus channel from a unitary (checked within 1e-9)."""
    a = np.asarray(u, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    d = a.shape[0]
    if np.abs(a.conj().T @ a - np.eye(d)).max() > 1e-9:
        raise InvariantViolation("matrix is not unitary within 1e-9")
    return KrausChannel(d, d, (a,))


def extremal_qubit_params(seed: int) -> ChannelParams:
    """Random qubit-to-qubit parameters with a two-level environment.

    Extremal qubit maps have Kraus rank at most two, so env_dim = 2 covers
    them; uniform angles give a cheap sampling scheme over that family.
    """
    rng = np.random.default_rng(seed)
    angles = rng.uniform(0.0, 2.0 * np.pi, param_count(2, 2, 2))
    return ChannelParams(2, 2, 2, angles)


def _minimal_kraus(ops, d_in: int, d_out: int) -> tuple[np.ndarray, ...]:
    # Re-extract Kraus operators from the Choi eigendecomposition; the map
    # is unchanged and the family size drops to the Choi rank.
    vecs = np.stack([k.reshape(-1) for k in ops])
    choi = vecs.T @ vecs.conj()
    vals, evecs = np.linalg.eigh(choi)
    out = []
    for w, v in zip(vals, evecs.T):
        if w > 1e-14:
            out.append(np.sqrt(w) * v.reshape(d_out, d_in))
    return tuple(out)


def compose(after: KrausChannel, before: KrausChannel) -> KrausChannel:
    """after ∘ before via pairwise Kraus products (reduced if redundant)."""
    if before.d_out != after.d_in:
        raise DimensionError(
            f"cannot compose: inner dimensions {before.d_out} != {after.d_in}"
        )
    ops = [a @ b for a in after.kraus for b in before.kraus]
    ops = [k for k in ops if np.linalg.norm(k) >= KRAUS_PRUNE_NORM]
    if len(ops) > before.d_in * after.d_out or not ops:
        ops = list(_minimal_kraus(ops or [a @ b for a in after.kraus for b in before.kraus],
                                  before.d_in, after.d_out))
    return KrausChannel(before.d_in, after.d_out, tuple(ops))


# --- common fixed channels ---------------------------------------------------


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel(d, d, (np.eye(d, dtype=np.complex128),))


def trace_out_channel(d_in: int) -> KrausChannel:
    """Map every input to the scalar 1 (output dimension one)."""
    ops = tuple(np.eye(d_in, dtype=np.complex128)[e].reshape(1, d_in) for e in range(d_in))
    return KrausChannel(d_in, 1, ops)


def discard_channel(d_in: int, d_out: int) -> KrausChannel:
    """Replace any input with |0><0| on the output space."""
    ops = []
    for e in range(d_in):
        k = np.zeros((d_out, d_in), dtype=np.complex128)
        k[0, e] = 1.0
        ops.append(k)
    return KrausChannel(d_in, d_out, tuple(ops))


def dephasing_channel(d: int) -> KrausChannel:
    """Kill all off-diagonal entries in the computational basis."""
    ops = []
    for e in range(d):
        k = np.zeros((d, d), dtype=np.complex128)
        k[e, e] = 1.0
        ops.append(k)
    return KrausChannel(d, d, tuple(ops))


def depolarizing_qubit(p: float) -> KrausChannel:
    """rho -> (1-p) rho + p I/2 through the four scaled Paulis."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"depolarizing weight must lie in [0, 1], got {p}")
    sx = np.array([[0, 1], [1, 0]], dtype=np.complex128)
    sy = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
    sz = np.array([[1, 0], [0, -1]], dtype=np.complex128)
    ops = [np.sqrt(1 - 3 * p / 4) * np.eye(2, dtype=np.complex128)]
    ops += [np.sqrt(p / 4) * m for m in (sx, sy, sz)]
    return KrausChannel(2, 2, tuple(k for k in ops if np.linalg.norm(k) >= KRAUS_PRUNE_NORM))


# --- JSON interchange ---------------------------------------------------------
#
# {"dIn": int, "dOut": int, "kraus": [matrix, ...]} with the same
# [[ [re, im], ... ], ...] matrix encoding as the state format.


def channel_to_json(ch: KrausChannel) -> str:
    mats = []
    for k in ch.kraus:
        rows = []
        for row in k:
            cells = ",".join(f"[{_fmt(c.real)},{_fmt(c.imag)}]" for c in row)
            rows.append(f"[{cells}]")
        mats.append(f'[{",".join(rows)}]')
    return f'{{"dIn":{ch.d_in},"dOut":{ch.d_out},"kraus":[{",".join(mats)}]}}'


def channel_from_json(text: str) -> KrausChannel:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise DimensionError("channel document must be a JSON object")
    try:
        d_in, d_out, mats = doc["dIn"], doc["dOut"], doc["kraus"]
    except KeyError as e:
        raise DimensionError(f"channel document is missing key {e}") from None
    if not isinstance(d_in, int) or not isinstance(d_out, int):
        raise DimensionError("dIn and dOut must be integers")
    if not isinstance(mats, list) or not mats:
        raise DimensionError("kraus must be a non-empty list")
    ops = []
    for idx, rows in enumerate(mats):
        if not isinstance(rows, list) or len(rows) != d_out:
            raise DimensionError(f"kraus[{idx}] must have {d_out} rows")
        k = np.empty((d_out, d_in), dtype=np.complex128)
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != d_in:
                raise DimensionError(
                    f"kraus[{idx}] row {i} must have {d_in} entries"
                )
            for j, cell in enumerate(row):
                if (
                    not isinstance(cell, list)
                    or len(cell) != 2
                    or not all(isinstance(x, (int, float)) for x in cell)
                ):
                    raise DimensionError(
                        f"kraus[{idx}] entry ({i},{j}) must be a [re, im] pair"
                    )
                k[i, j] = complex(cell[0], cell[1])
        ops.append(k)
    return KrausChannel(d_in, d_out, tuple(ops))


def save_channel(ch: KrausChannel, path) -> None:
    with open(path, "w") as fh:
        fh.write(channel_to_json(ch))
        fh.write("\n")


def load_channel(path) -> KrausChannel:
    with open(path) as fh:
        return channel_from_json(fh.read())
