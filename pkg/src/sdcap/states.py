"""Bipartite density matrices: the carrier type, a small state zoo, tensor
powers and the JSON interchange format.

The composite index is row-major, a * dB + b. All constructors return
validated states; validation tolerances are module constants.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .exceptions import DimensionError, DomainError, InvariantViolation, NotHermitianError
from .linalg import partial_trace

TRACE_ATOL = 1e-10
HERM_ATOL = 1e-10
EIG_FLOOR = -1e-10
DEFAULT_DIM_CAP = 4096

# Full spectral validation is skipped above this dimension (the check is
# cubic; big states come out of `power`, which preserves positivity exactly).
_EIG_CHECK_MAX_DIM = 256


def check_density(m: np.ndarray, *, name: str = "matrix") -> np.ndarray:
    """Validate a density matrix: Hermitian, unit trace, positive spectrum."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {a.shape}")
    if np.abs(a - a.conj().T).max() > HERM_ATOL:
        raise NotHermitianError(f"{name} is not Hermitian within {HERM_ATOL}")
    tr = a.trace()
    if abs(tr - 1.0) > TRACE_ATOL:
        raise InvariantViolation(f"{name} has trace {tr}, expected 1")
    if a.shape[0] <= _EIG_CHECK_MAX_DIM:
        low = np.linalg.eigvalsh((a + a.conj().T) / 2).min()
        if low < EIG_FLOOR:
            raise InvariantViolation(
                f"{name} has eigenvalue {low} below the {EIG_FLOOR} floor"
            )
    elif a.diagonal().real.min() < EIG_FLOOR:
        raise InvariantViolation(f"{name} has a negative diagonal entry")
    return a


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix on H_A (x) H_B with explicit factor dimensions."""

    dA: int
    dB: int
    rho: np.ndarray

    def __post_init__(self):
        if self.dA < 1 or self.dB < 1:
            raise DimensionError("factor dimensions must be positive")
        rho = check_density(self.rho, name="rho")
        if rho.shape[0] != self.dA * self.dB:
            raise DimensionError(
                f"rho has dimension {rho.shape[0]}, expected {self.dA * self.dB}"
            )
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return self.dA * self.dB

    def reduced_a(self) -> np.ndarray:
        return partial_trace(self.rho, self.dA, self.dB, keep="A")

    def reduced_b(self) -> np.ndarray:
        return partial_trace(self.rho, self.dA, self.dB, keep="B")


def _projector(vec: np.ndarray) -> np.ndarray:
    v = vec / np.linalg.norm(vec)
    return np.outer(v, v.conj())


def singlet() -> BipartiteState:
    """(|01> - |10>)/sqrt(2) as a two-qubit density matrix."""
    v = np.zeros(4, dtype=np.complex128)
    v[1] = 1 / np.sqrt(2)
    v[2] = -1 / np.sqrt(2)
    return BipartiteState(2, 2, _projector(v))


def max_entangled(d: int) -> BipartiteState:
    """sum_i |ii>/sqrt(d) on d x d."""
    if d < 2:
        raise DimensionError("max_entangled needs local dimension >= 2")
    v = np.zeros(d * d, dtype=np.complex128)
    v[:: d + 1] = 1 / np.sqrt(d)
    return BipartiteState(d, d, _projector(v))


def werner_like(p: float) -> BipartiteState:
    """p * singlet + (1-p) * I/4 on two qubits, p in [0, 1]."""
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"mixing weight must lie in [0, 1], got {p}")
    rho = p * singlet().rho + (1.0 - p) * np.eye(4) / 4.0
    return BipartiteState(2, 2, rho)


def product(rho_a, rho_b) -> BipartiteState:
    """Product state rho_a (x) rho_b; both factors must be density matrices."""
    a = check_density(rho_a, name="rho_a")
    b = check_density(rho_b, name="rho_b")
    return BipartiteState(a.shape[0], b.shape[0], np.kron(a, b))


def tiles_bound_entangled() -> BipartiteState:
    """The 3x3 state built from the five-tile unextendible product basis.

    Uniform mixture on the orthocomplement of the tiles; PPT but entangled.
    """
    k = np.eye(3)
    tiles = [
        np.kron(k[0], (k[0] - k[1]) / np.sqrt(2)),
        np.kron(k[2], (k[1] - k[2]) / np.sqrt(2)),
        np.kron((k[0] - k[1]) / np.sqrt(2), k[2]),
        np.kron((k[1] - k[2]) / np.sqrt(2), k[0]),
        np.kron(k[0] + k[1] + k[2], k[0] + k[1] + k[2]) / 3.0,
    ]
    rho = np.eye(9, dtype=np.complex128)
    for t in tiles:
        rho -= np.outer(t, t.conj())
    return BipartiteState(3, 3, rho / 4.0)


def random_state(dA: int, dB: int, seed: int) -> BipartiteState:
    """Hilbert-Schmidt random state: G G† / tr(G G†) with square Ginibre G."""
    if dA < 1 or dB < 1:
        raise DimensionError("factor dimensions must be positive")
    n = dA * dB
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = g @ g.conj().T
    rho /= rho.trace().real
    return BipartiteState(dA, dB, rho)


def power(s: BipartiteState, n: int, dim_cap: int = DEFAULT_DIM_CAP) -> BipartiteState:
    """n-fold tensor power with all A factors grouped before all B factors."""
    if n < 1:
        raise DomainError(f"tensor power needs n >= 1, got {n}")
    if s.dim ** n > dim_cap:
        raise DimensionError(
            f"dimension {s.dim ** n} exceeds the cap {dim_cap}"
        )
    if n == 1:
        return s
    full = s.rho
    for _ in range(n - 1):
        full = np.kron(full, s.rho)
    # kron leaves factors interleaved (A1 B1 A2 B2 ...); regroup to
    # (A1..An B1..Bn) on both row and column indices.
    dims = [s.dA, s.dB] * n
    t = full.reshape(dims + dims)
    perm = list(range(0, 2 * n, 2)) + list(range(1, 2 * n, 2))
    t = t.transpose(perm + [p + 2 * n for p in perm])
    dn = s.dim ** n
    return BipartiteState(s.dA ** n, s.dB ** n, t.reshape(dn, dn))


# --- JSON interchange -------------------------------------------------------
#
# {"dA": int, "dB": int, "rho": [[[re, im], ...], ...]}, row-major.
# Writers emit 17 significant digits so binary64 values survive a round trip.


def _fmt(x: float) -> str:
    return format(float(x), ".16e")


def state_to_json(s: BipartiteState) -> str:
    rows = []
    for row in s.rho:
        cells = ",".join(f"[{_fmt(c.real)},{_fmt(c.imag)}]" for c in row)
        rows.append(f"[{cells}]")
    return f'{{"dA":{s.dA},"dB":{s.dB},"rho":[{",".join(rows)}]}}'


def matrix_from_json_rows(rows, dim: int, *, name: str = "matrix") -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != dim:
        raise DimensionError(f"{name} must have {dim} rows")
    out = np.empty((dim, dim), dtype=np.complex128)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != dim:
            raise DimensionError(f"{name} row {i} must have {dim} entries")
        for j, cell in enumerate(row):
            if (
                not isinstance(cell, list)
                or len(cell) != 2
                or not all(isinstance(x, (int, float)) for x in cell)
            ):
                raise DimensionError(
                    f"{name} entry ({i},{j}) must be a [re, im] pair"
                )
            out[i, j] = complex(cell[0], cell[1])
    return out


def state_from_json(text: str) -> BipartiteState:
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise DimensionError("state document must be a JSON object")
    try:
        dA, dB, rows = doc["dA"], doc["dB"], doc["rho"]
    except KeyError as e:
        raise DimensionError(f"state document is missing key {e}") from None
    if not isinstance(dA, int) or not isinstance(dB, int):
        raise DimensionError("dA and dB must be integers")
    rho = matrix_from_json_rows(rows, dA * dB, name="rho")
    return BipartiteState(dA, dB, rho)


def save_state(s: BipartiteState, path) -> None:
    with open(path, "w") as fh:
        fh.write(state_to_json(s))
        fh.write("\n")


def load_state(path) -> BipartiteState:
    with open(path) as fh:
        return state_from_json(fh.read())
