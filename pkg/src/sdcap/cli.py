"""Command line entry points.

Subcommands: measure, capacity, verify, sample, bennett. Every stochastic
subcommand takes --seed (default 0) and is byte-deterministic: the same
flags and seed always produce identical output files.

Exit codes: 0 success, 2 input error, 3 numeric-invariant violation,
4 verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .capacity import (
    OptBudget,
    STUDY_BUDGET,
    bennett_example,
    optimize,
    report_to_dict,
    report_to_json,
    sampling_study,
    study_summary_dict,
    study_to_csv,
)
from .channels import (
    ChannelParams,
    from_params,
    identity_channel,
    load_channel,
    param_count,
)
from .criteria import is_ppt, reduction_criterion
from .encoding import verify_achievability
from .exceptions import (
    DegenerateSenderEntropy,
    DomainError,
    InvariantViolation,
    ToolkitError,
)
from .measures import coherent_info, entropy, i_sd, mutual_info
from .states import (
    BipartiteState,
    load_state,
    max_entangled,
    random_state,
    singlet,
    tiles_bound_entangled,
    werner_like,
)

VERIFY_TOL = 1e-7


def _nonneg_int(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _add_state_flags(sp) -> None:
    sp.add_argument(
        "--state",
        choices=["singlet", "maxent", "werner", "tiles", "mixed", "random"],
        help="named constructor (see also --state-file)",
    )
    sp.add_argument("--state-file", help="path to a state JSON document")
    sp.add_argument("--d", type=_positive_int,
                    help="local dimension for maxent (default 2); total dimension for mixed (default 4)")
    sp.add_argument("--p", type=float, help="mixing weight for werner")
    sp.add_argument("--da", type=_positive_int, default=2, help="A dimension for random (default 2)")
    sp.add_argument("--db", type=_positive_int, default=2, help="B dimension for random (default 2)")


def _add_out_flags(sp, formats=("json", "csv")) -> None:
    sp.add_argument("--out", help="write output to this path instead of stdout")
    sp.add_argument("--format", choices=list(formats), default="json")


def _state_from_args(args) -> BipartiteState:
    if getattr(args, "state_file", None):
        if getattr(args, "state", None):
            raise DomainError("give either --state or --state-file, not both")
        return load_state(args.state_file)
    name = getattr(args, "state", None)
    if name is None:
        raise DomainError("a state is required: --state NAME or --state-file PATH")
    if name == "singlet":
        return singlet()
    if name == "maxent":
        return max_entangled(args.d if args.d is not None else 2)
    if name == "werner":
        if args.p is None:
            raise DomainError("--state werner needs --p")
        return werner_like(args.p)
    if name == "tiles":
        return tiles_bound_entangled()
    if name == "mixed":
        d = args.d if args.d is not None else 4
        r = math.isqrt(d)
        if r * r != d or r < 1:
            raise DomainError(f"--state mixed needs a square total dimension, got {d}")
        return BipartiteState(r, r, np.eye(d, dtype=np.complex128) / d)
    if name == "random":
        return random_state(args.da, args.db, args.seed)
    raise DomainError(f"unknown state {name!r}")


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(v) -> str:
    return json.dumps(v)


# --- measure -----------------------------------------------------------------


def cmd_measure(args) -> int:
    s = _state_from_args(args)
    try:
        isd = i_sd(s)
    except DegenerateSenderEntropy:
        isd = None
    holds_a, holds_b = reduction_criterion(s)
    doc = {
        "dA": s.dA,
        "dB": s.dB,
        "S": entropy(s.rho),
        "SA": entropy(s.reduced_a()),
        "SB": entropy(s.reduced_b()),
        "IB": coherent_info(s),
        "IM": mutual_info(s),
        "Isd": isd,
        "isPpt": is_ppt(s),
        "reductionHoldsA": holds_a,
        "reductionHoldsB": holds_b,
    }
    if args.format == "csv":
        keys = list(doc)
        text = ",".join(keys) + "\n" + ",".join(_csv_cell(doc[k]) for k in keys) + "\n"
    else:
        text = json.dumps(doc, indent=2) + "\n"
    _emit(args, text)
    return 0


# --- capacity ----------------------------------------------------------------


def _budget_from_args(args, default: OptBudget) -> OptBudget:
    return OptBudget(
        restarts=args.restarts if args.restarts is not None else default.restarts,
        iterations=args.iters if args.iters is not None else default.iterations,
        tol=args.tol if args.tol is not None else default.tol,
    )


def cmd_capacity(args) -> int:
    s = _state_from_args(args)
    report = optimize(
        s,
        objective=args.objective,
        n=args.n,
        d_out=args.dout,
        budget=_budget_from_args(args, OptBudget()),
        seed=args.seed,
    )
    if args.format == "csv":
        doc = report_to_dict(report)
        keys = ["objective", "n", "dOut", "bestValue", "bestObjective",
                "bestIB", "bestSenderEntropy", "restarts", "iterations", "seed"]
        text = ",".join(keys) + "\n" + ",".join(_csv_cell(doc[k]) for k in keys) + "\n"
    else:
        text = report_to_json(report)
    _emit(args, text)
    return 0


# --- verify ------------------------------------------------------------------


def _random_pure(rng, dA: int, dB: int) -> BipartiteState:
    v = rng.normal(size=dA * dB) + 1j * rng.normal(size=dA * dB)
    v /= np.linalg.norm(v)
    return BipartiteState(dA, dB, np.outer(v, v.conj()))


def _random_channel_params(rng, d_in: int, d_out: int) -> ChannelParams:
    env = d_in * d_out
    angles = rng.uniform(0.0, 2.0 * np.pi, param_count(d_in, d_out, env))
    return ChannelParams(d_in, d_out, env, angles)


def _verify_pairs(preset: str, trials: int, seed: int):
    for i in range(trials):
        rng = np.random.default_rng((seed, i))
        if preset == "pure":
            yield _random_pure(rng, 2, 2), identity_channel(2)
        elif preset == "random-2x2":
            yield random_state(2, 2, seed + i), from_params(_random_channel_params(rng, 2, 2))
        elif preset == "random-channel":
            d_out = int(rng.integers(2, 4))
            yield singlet(), from_params(_random_channel_params(rng, 2, d_out))
        else:
            raise DomainError(f"unknown preset {preset!r}")


def cmd_verify(args) -> int:
    rows = []
    if args.channel_file:
        s = _state_from_args(args)
        ch = load_channel(args.channel_file)
        lhs, rhs, gap = verify_achievability(s, ch)
        rows.append((0, lhs, rhs, gap))
        label = "single"
    else:
        label = args.preset
        for i, (s, ch) in enumerate(_verify_pairs(args.preset, args.trials, args.seed)):
            lhs, rhs, gap = verify_achievability(s, ch)
            rows.append((i, lhs, rhs, gap))
    max_gap = max(abs(g) for _, _, _, g in rows)
    ok = max_gap <= VERIFY_TOL
    if args.format == "csv":
        text = "index,holevo,bound,gap\n" + "".join(
            f"{i},{l!r},{r!r},{g!r}\n" for i, l, r, g in rows
        )
    else:
        doc = {
            "preset": label,
            "trials": len(rows),
            "seed": args.seed,
            "maxGap": max_gap,
            "tolerance": VERIFY_TOL,
            "pass": ok,
        }
        text = json.dumps(doc, indent=2) + "\n"
    _emit(args, text)
    return 0 if ok else 4


# --- sample ------------------------------------------------------------------


def cmd_sample(args) -> int:
    report = sampling_study(
        args.trials,
        budget=_budget_from_args(args, STUDY_BUDGET),
        seed=args.seed,
        gain_tol=args.gain_tol,
    )
    summary = json.dumps(study_summary_dict(report), indent=2) + "\n"
    if args.out:
        with open(args.out + ".csv", "w") as fh:
            fh.write(study_to_csv(report))
        with open(args.out + ".json", "w") as fh:
            fh.write(summary)
    else:
        sys.stdout.write(summary)
    return 0


# --- bennett -----------------------------------------------------------------


def cmd_bennett(args) -> int:
    try:
        weights = [float(w) for w in args.weights.split(",")]
    except ValueError:
        raise DomainError(f"--weights must be comma-separated numbers, got {args.weights!r}")
    if args.base == "maxent":
        base = max_entangled(args.d if args.d is not None else 2)
    else:
        base = singlet()
    aprime = np.diag(np.asarray(weights, dtype=np.complex128))
    before, after = bennett_example(aprime, base)
    doc = {
        "weights": weights,
        "base": args.base,
        "before": before,
        "after": after,
        "gain": after - before,
        "aprimeEntropy": entropy(aprime),
    }
    _emit(args, json.dumps(doc, indent=2) + "\n")
    return 0


# --- parser ------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sdcap",
        description="Dense coding with noisy entanglement: measures, encodings, capacity search.",
    )
    sub = parser.add_subparsers(dest="subcommand")

    sp = sub.add_parser("measure", help="entropic measures and entanglement flags for a state")
    _add_state_flags(sp)
    sp.add_argument("--seed", type=_nonneg_int, default=0, help="seed for --state random (default 0)")
    _add_out_flags(sp)
    sp.set_defaults(func=cmd_measure)

    sp = sub.add_parser("capacity", help="search channel parameters for the best rate")
    _add_state_flags(sp)
    sp.add_argument("--objective", choices=["cd", "csd"], default="csd")
    sp.add_argument("--n", type=_positive_int, default=1,
                    help="tensor-power block length (default 1; larger n grows quickly)")
    sp.add_argument("--dout", type=_positive_int, default=None,
                    help="channel output dimension (csd default: search 1..dA^n)")
    sp.add_argument("--restarts", type=_positive_int, default=None, help="default 32")
    sp.add_argument("--iters", type=_positive_int, default=None,
                    help="objective evaluations per restart (default 2000)")
    sp.add_argument("--tol", type=float, default=None, help="convergence tolerance (default 1e-9)")
    sp.add_argument("--seed", type=_nonneg_int, default=0)
    _add_out_flags(sp)
    sp.set_defaults(func=cmd_capacity)

    sp = sub.add_parser("verify", help="check the scrambled-encoding Holevo identity")
    sp.add_argument("--preset", choices=["pure", "random-2x2", "random-channel"],
                    default="random-2x2")
    sp.add_argument("--trials", type=_positive_int, default=200)
    sp.add_argument("--seed", type=_nonneg_int, default=0)
    _add_state_flags(sp)
    sp.add_argument("--channel-file", help="verify one pair: this channel on the given state")
    _add_out_flags(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sample", help="random two-qubit search for coherent-information gains")
    sp.add_argument("--trials", type=_positive_int, default=100)
    sp.add_argument("--seed", type=_nonneg_int, default=0)
    sp.add_argument("--gain-tol", type=float, default=1e-6)
    sp.add_argument("--restarts", type=_positive_int, default=None, help="default 12")
    sp.add_argument("--iters", type=_positive_int, default=None,
                    help="objective evaluations per restart (default 600)")
    sp.add_argument("--tol", type=float, default=None, help="convergence tolerance (default 1e-9)")
    sp.add_argument("--out", help="prefix: writes OUT.csv (per trial) and OUT.json (summary)")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("bennett", help="discard-gain example: diagonal A' share times a base state")
    sp.add_argument("--weights", default="0.9,0.1",
                    help="diagonal of the A' density matrix (default 0.9,0.1)")
    sp.add_argument("--base", choices=["singlet", "maxent"], default="singlet")
    sp.add_argument("--d", type=_positive_int, default=None, help="local dimension for maxent base")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_bennett)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    try:
        return args.func(args)
    except (InvariantViolation, DegenerateSenderEntropy) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except (ToolkitError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
