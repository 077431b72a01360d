"""Capacity estimation by multi-start search over channel parameters, plus
the two desk experiments: the discard-gain example and the two-qubit
sampling study.

Two objectives are searched, both evaluated on eta = (Lambda (x) 1) s^(x n):

    cd  : log2(dOut) + I^B(eta)      bits per channel use at output size dOut
    csd : I_M(eta) / S(eta_A)        bits per sent qubit (1.0 when the
                                     post-map sender entropy degenerates)

Reported values are lower-bound witnesses from local search at the given n.
Nothing here claims the supremum over n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .channels import (
    ChannelParams,
    KrausChannel,
    _isometry_from_angles,
    apply_A,
    from_params,
    identity_angles,
    param_count,
)
from .exceptions import DegenerateSenderEntropy, DimensionError, DomainError
from .measures import (
    SENDER_ENTROPY_FLOOR,
    coherent_info,
    entropy,
    i_sd,
    shannon_bits,
)
from .states import BipartiteState, check_density, power, random_state, singlet

BOUND_SLACK = 1e-12
N_SEARCH_NOTE = (
    "best value found by local search at the stated n; "
    "the supremum over block length n is not claimed"
)


@dataclass(frozen=True)
class OptBudget:
    """Search effort knobs; iterations counts objective evaluations per restart."""

    restarts: int = 32
    iterations: int = 2000
    tol: float = 1e-9

    def __post_init__(self):
        if self.restarts < 1 or self.iterations < 1 or self.tol <= 0:
            raise DomainError(f"invalid budget {self}")


# Lighter default for the sampling study: 1000 trials at the full optimize
# budget would run for hours without changing the (negative) finding.
STUDY_BUDGET = OptBudget(restarts=12, iterations=600)


@dataclass(frozen=True)
class CapacityReport:
    objective: str
    n: int
    d_out: int
    d_out_searched: tuple[int, ...]
    best_value: float
    best_objective: float
    best_params: ChannelParams
    best_ib: float
    best_sender_entropy: float
    restarts: int
    iterations: int
    history: tuple[tuple[int, float], ...]
    seed: int
    note: str


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    seed: int
    ib_before: float
    ib_best: float
    gain: float


@dataclass(frozen=True)
class StudyReport:
    trials: int
    seed: int
    gain_tol: float
    gain_count: int
    max_gain: float
    budget: OptBudget
    records: tuple[TrialRecord, ...]


# --- objectives ---------------------------------------------------------------


def objective_cd(s_n: BipartiteState, p: ChannelParams) -> float:
    """log2(dOut) + I^B((Lambda (x) 1) s_n)."""
    eta = apply_A(from_params(p), s_n)
    return float(np.log2(p.d_out)) + coherent_info(eta)


def objective_csd(s_n: BipartiteState, p: ChannelParams) -> float:
    """i_sd of the post-map state; 1.0 when its sender entropy degenerates
    (sending raw qubits needs no entanglement)."""
    eta = apply_A(from_params(p), s_n)
    try:
        return i_sd(eta)
    except DegenerateSenderEntropy:
        return 1.0


def _fast_value(kind: str, rho4: np.ndarray, d_in: int, dB: int, d_out: int,
                env_dim: int, s_b: float):
    """Closure matching the public objectives but skipping state revalidation.

    s_b = S(rho_B^(x n)) is constant: the map never touches the B factor.
    """
    D = d_out * env_dim
    n_out = d_out * dB
    log_d = float(np.log2(d_out))

    def value(angles: np.ndarray) -> float:
        V = _isometry_from_angles(angles, D, d_in)
        k = V.reshape(d_out, env_dim, d_in).transpose(1, 0, 2)
        eta = np.einsum("eoi,ibjc,epj->obpc", k, rho4, k.conj())
        vals = np.linalg.eigvalsh(eta.reshape(n_out, n_out))
        s_eta = shannon_bits(np.clip(vals, 0.0, None))
        if kind == "cd":
            return log_d + max(s_b - s_eta, 0.0)
        if kind == "ib":
            return max(s_b - s_eta, 0.0)
        eta_a = np.einsum("obpb->op", eta)
        s_a = shannon_bits(np.clip(np.linalg.eigvalsh(eta_a), 0.0, None))
        if s_a <= SENDER_ENTROPY_FLOOR:
            return 1.0
        return (s_a + s_b - s_eta) / s_a

    return value


# --- search engine ------------------------------------------------------------


def _coordinate_ascent(value, x0, max_evals: int, tol: float, bound: float):
    """Deterministic pattern search: cycle coordinates, accept improvements,
    halve the step after a sweep with no gain. Returns early once the
    analytic bound is reached; iterations are objective evaluations."""
    x = np.array(x0, dtype=np.float64)
    best = value(x)
    evals = 1
    if best >= bound:
        return x, best, evals
    step = 0.5
    while evals < max_evals and step > 1e-6:
        sweep_start = best
        for k in range(x.size):
            if evals >= max_evals:
                break
            for sgn in (1.0, -1.0):
                xt = x.copy()
                xt[k] += sgn * step
                v = value(xt)
                evals += 1
                if v > best + 1e-15:
                    x, best = xt, v
                    if best >= bound:
                        return x, best, evals
                    break
                if evals >= max_evals:
                    break
        gain = best - sweep_start
        if gain <= 0.0:
            step *= 0.5
        elif gain < tol and step <= 1e-3:
            break
    return x, best, evals


def _starts(d_in: int, d_out: int, env_dim: int, restarts: int, seed_key: tuple):
    """Restart origins: the identity map first (when representable), then the
    all-zero vector (a discard map for env_dim > 1), then seeded uniforms."""
    n = param_count(d_in, d_out, env_dim)
    zeros = np.zeros(n)
    ident = identity_angles(d_in, d_out, env_dim)
    out = [ident if ident is not None else zeros]
    if restarts > 1:
        out.append(zeros)
    for r in range(2, restarts):
        rng = np.random.default_rng(seed_key + (r,))
        out.append(rng.uniform(0.0, 2.0 * np.pi, n))
    return out


def _search_config(value, d_in, d_out, env_dim, budget: OptBudget,
                   seed_key: tuple, bound: float):
    """Multi-start ascent for one (d_out, env_dim) block. Strict improvement
    keeps the earliest witness, so equal-value restarts tie-break to the
    lowest index."""
    best_x = None
    best_v = -np.inf
    evals_total = 0
    improvements = []
    hit = False
    for x0 in _starts(d_in, d_out, env_dim, budget.restarts, seed_key):
        x, v, ev = _coordinate_ascent(value, x0, budget.iterations,
                                      budget.tol, bound - BOUND_SLACK)
        evals_total += ev
        if v > best_v:
            best_x, best_v = x, v
            improvements.append((evals_total, v))
        if v >= bound - BOUND_SLACK:
            hit = True
            break
    return best_x, best_v, evals_total, improvements, hit


def optimize(s: BipartiteState, objective: str = "csd", n: int = 1,
             d_out: int | None = None, budget: OptBudget | None = None,
             seed: int = 0) -> CapacityReport:
    """Multi-start derivative-free ascent over channel parameters.

    For csd with d_out=None the output dimension is searched over
    {1, ..., dA^n}, largest first (the analytic early exit then fires on the
    identity start whenever the state is pure). cd needs an explicit d_out:
    its log2(d) offset makes values at different d incomparable.

    Deterministic given (seed, budget): restart r of the d_out=dd block draws
    its start from default_rng((seed, dd, r)), and the identity and discard
    maps are always seeded as restarts 0 and 1.
    """
    if objective not in ("cd", "csd"):
        raise DomainError(f"objective must be 'cd' or 'csd', got {objective!r}")
    budget = budget if budget is not None else OptBudget()
    s_n = power(s, n)
    d_in, dB = s_n.dA, s_n.dB
    s_b = entropy(s_n.reduced_b())
    rho4 = np.ascontiguousarray(s_n.rho.reshape(d_in, dB, d_in, dB))

    if d_out is not None:
        if d_out < 1:
            raise DimensionError(f"d_out must be positive, got {d_out}")
        d_list = [int(d_out)]
    elif objective == "cd":
        raise DomainError("objective 'cd' needs an explicit d_out")
    else:
        d_list = list(range(d_in, 0, -1))

    best_v = -np.inf
    best_params = None
    total_evals = 0
    history: list[tuple[int, float]] = []
    for dd in d_list:
        env = d_in * dd
        bound = 2.0 if objective == "csd" else float(np.log2(dd)) + s_b
        value = _fast_value(objective, rho4, d_in, dB, dd, env, s_b)
        x, v, ev, improvements, hit = _search_config(
            value, d_in, dd, env, budget, (seed, dd), bound)
        for at, val in improvements:
            if val > best_v:
                history.append((total_evals + at, val))
        total_evals += ev
        if v > best_v:
            best_v = v
            best_params = ChannelParams(d_in, dd, env, x)
        if hit:
            break

    best_value = max(best_v, 1.0) if objective == "csd" else best_v
    eta = apply_A(from_params(best_params), s_n)
    report = CapacityReport(
        objective=objective,
        n=n,
        d_out=best_params.d_out,
        d_out_searched=tuple(d_list),
        best_value=float(best_value),
        best_objective=float(best_v),
        best_params=best_params,
        best_ib=coherent_info(eta),
        best_sender_entropy=entropy(eta.reduced_a()),
        restarts=budget.restarts,
        iterations=total_evals,
        history=tuple(history),
        seed=seed,
        note=N_SEARCH_NOTE,
    )
    return report


# --- desk experiments -----------------------------------------------------------


def bennett_example(rho_aprime, base: BipartiteState) -> tuple[float, float]:
    """I^B of rho_{A'} (x) base before and after discarding the A' share.

    The composite treats A'A'' as the sender side. Discarding A' leaves the
    base state, so after = I^B(base); whenever before > 0 the gap equals
    S(rho_{A'}) exactly.
    """
    a = check_density(rho_aprime, name="rho_aprime")
    if a.shape[0] < 2:
        raise DimensionError("the A' factor must have dimension >= 2")
    after = coherent_info(base)
    if after <= 0.0:
        raise DomainError("base state must have positive coherent information")
    composite = BipartiteState(a.shape[0] * base.dA, base.dB, np.kron(a, base.rho))
    before = coherent_info(composite)
    return before, after


def discard_aprime_channel(d_aprime: int, d_rest: int) -> KrausChannel:
    """Trace out the leading factor of a d_aprime * d_rest sender space."""
    ops = []
    for e in range(d_aprime):
        k = np.zeros((d_rest, d_aprime * d_rest), dtype=np.complex128)
        for j in range(d_rest):
            k[j, e * d_rest + j] = 1.0
        ops.append(k)
    return KrausChannel(d_aprime * d_rest, d_rest, tuple(ops))


def gain_control() -> float:
    """Feed the known discard-gain composite through the study's detector.

    diag(0.9, 0.1) (x) singlet with the trace-out-A' channel must show a
    gain of H(0.9) ~ 0.469; a detector that cannot see it is broken.
    """
    aprime = np.diag([0.9, 0.1]).astype(np.complex128)
    composite = BipartiteState(4, 2, np.kron(aprime, singlet().rho))
    ib_before = coherent_info(composite)
    ib_after = coherent_info(apply_A(discard_aprime_channel(2, 2), composite))
    return ib_after - ib_before


def sampling_study(trials: int, budget: OptBudget | None = None, seed: int = 0,
                   gain_tol: float = 1e-6) -> StudyReport:
    """Per-trial maximization of I^B((Lambda (x) 1) rho) over two-level-
    environment qubit maps, against Hilbert-Schmidt random two-qubit states.

    Extremal qubit maps have at most two Kraus operators, so env_dim = 2
    covers the extreme points that a convex maximum lives on. Trial t uses
    the replayable state seed (seed + t); gains above gain_tol are counted.
    """
    if trials < 1:
        raise DomainError(f"trials must be positive, got {trials}")
    budget = budget if budget is not None else STUDY_BUDGET
    records = []
    gain_count = 0
    max_gain = -np.inf
    for t in range(trials):
        state_seed = seed + t
        s = random_state(2, 2, state_seed)
        ib_before = coherent_info(s)
        s_b = entropy(s.reduced_b())
        rho4 = np.ascontiguousarray(s.rho.reshape(2, 2, 2, 2))
        value = _fast_value("ib", rho4, 2, 2, 2, 2, s_b)
        _, ib_best, _, _, _ = _search_config(
            value, 2, 2, 2, budget, (seed, t), s_b)
        gain = ib_best - ib_before
        if gain > gain_tol:
            gain_count += 1
        max_gain = max(max_gain, gain)
        records.append(TrialRecord(t, state_seed, ib_before, ib_best, gain))
    return StudyReport(
        trials=trials,
        seed=seed,
        gain_tol=gain_tol,
        gain_count=gain_count,
        max_gain=float(max_gain),
        budget=budget,
        records=tuple(records),
    )


# --- serialization ---------------------------------------------------------------


def params_to_dict(p: ChannelParams) -> dict:
    return {
        "dIn": p.d_in,
        "dOut": p.d_out,
        "envDim": p.env_dim,
        "angles": [float(a) for a in p.angles],
    }


def report_to_dict(r: CapacityReport) -> dict:
    return {
        "objective": r.objective,
        "n": r.n,
        "dOut": r.d_out,
        "dOutSearched": list(r.d_out_searched),
        "bestValue": r.best_value,
        "bestObjective": r.best_objective,
        "bestIB": r.best_ib,
        "bestSenderEntropy": r.best_sender_entropy,
        "restarts": r.restarts,
        "iterations": r.iterations,
        "history": [[i, v] for i, v in r.history],
        "seed": r.seed,
        "note": r.note,
        "bestParams": params_to_dict(r.best_params),
    }


def report_to_json(r: CapacityReport) -> str:
    return json.dumps(report_to_dict(r), indent=2) + "\n"


def study_summary_dict(r: StudyReport) -> dict:
    return {
        "trials": r.trials,
        "seed": r.seed,
        "gainTolerance": r.gain_tol,
        "gainCount": r.gain_count,
        "maxGain": r.max_gain,
        "budget": {
            "restarts": r.budget.restarts,
            "iterations": r.budget.iterations,
            "tol": r.budget.tol,
        },
    }


def study_to_json(r: StudyReport) -> str:
    doc = study_summary_dict(r)
    doc["records"] = [
        {
            "trial": t.trial,
            "seed": t.seed,
            "ibBefore": t.ib_before,
            "ibBest": t.ib_best,
            "gain": t.gain,
        }
        for t in r.records
    ]
    return json.dumps(doc, indent=2) + "\n"


def study_to_csv(r: StudyReport) -> str:
    lines = ["seed,ibBefore,ibBest,gain"]
    for t in r.records:
        lines.append(f"{t.seed},{t.ib_before!r},{t.ib_best!r},{t.gain!r}")
    return "\n".join(lines) + "\n"
