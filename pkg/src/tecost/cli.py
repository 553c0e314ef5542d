"""Command-line front end.

Subcommands read a channel file in the JSON format of ``channel_to_json``,
dispatch to the solvers, and print one line per quantity (or a single
JSON object with ``--json``).  Exit codes: 0 success, 2 parse/validation
failure, 3 solver disagreement, 4 Gram mismatch during dilation.
"""

import argparse
import dataclasses
import json
import sys
import time
from typing import Optional, Tuple

import numpy as np

from .channel import (
    KrausChannel,
    channel_from_json,
    channel_to_json,
    make_depolarizing,
    make_projector_channel,
    make_random_channel,
)
from .cost import (
    BarrierFailure,
    SolverConfig,
    SolverDisagreement,
    _closed_form_result,
    build_sdp,
    cost,
    heuristic_upper_bound,
    lower_bound,
    solve_sdp,
    solve_supergradient,
)
from .cost import CostResult
from .dilation import GramMismatch, extension_channel, optimal_extension, unitary_to_json
from .oracle import oracle_fidelity

__all__ = ["RunReport", "main"]


@dataclasses.dataclass(frozen=True, eq=False)
class RunReport:
    """Everything one command run learned about one channel."""

    dim: int
    nkraus: int
    trace_vector: Tuple[complex, ...]
    angle: float
    cos_value: float
    method: str
    lower: float
    upper: float
    fidelity_oracle: Optional[float]
    residuals: dict
    wall_time: float


def _load_channel(path):
    with open(path, "r", encoding="utf-8") as fh:
        return channel_from_json(fh.read())


def _solve(ch, method, cfg):
    if method == "auto":
        return cost(ch, cfg)
    if method == "subgrad":
        return solve_supergradient(ch, cfg)
    if method == "closed":
        res = _closed_form_result(ch)
        if res is None:
            raise ValueError(
                "closed-form method requested but the channel matches no "
                "closed-form family (alpha-identity or equal-rank projectors)"
            )
        return res
    if method == "sdp":
        x, val = solve_sdp(build_sdp(ch), cfg)
        d = len(ch.ops)
        cos_value = float(np.clip(max(0.0, val), 0.0, 1.0))
        angle = float(np.arccos(cos_value))
        # The barrier iterate is strictly feasible, so cos_value is a
        # certified under-estimate and the angle itself an upper bracket.
        return CostResult(
            angle=angle,
            cos_value=cos_value,
            optimal_v=x[:d] - 1j * x[d : 2 * d],
            method="sdp",
            lower_bracket=lower_bound(ch),
            upper_bracket=angle,
            iterations=0,
        )
    raise ValueError("unknown method %r" % method)


def _report(ch, res, fid, residuals, wall):
    canon = ch.canonical_form()
    traces = tuple(complex(np.trace(M)) for M in canon.ops)
    return RunReport(
        dim=ch.dim,
        nkraus=ch.nkraus,
        trace_vector=traces,
        angle=res.angle,
        cos_value=res.cos_value,
        method=res.method,
        lower=res.lower_bracket,
        upper=res.upper_bracket,
        fidelity_oracle=fid,
        residuals=residuals,
        wall_time=wall,
    )


def _emit_json(report):
    obj = {
        "angle": report.angle,
        "cos": report.cos_value,
        "method": report.method,
        "lower": report.lower,
        "upper": report.upper,
        "fidelity_oracle": report.fidelity_oracle,
        "residuals": report.residuals,
    }
    print(json.dumps(obj, indent=1))


def cmd_cost(args):
    ch = _load_channel(args.file)
    cfg = SolverConfig(seed=args.seed, tol=args.tol)
    t0 = time.perf_counter()
    res = _solve(ch, args.method, cfg)
    fid = None
    if args.oracle is not None:
        fid = oracle_fidelity(ch, args.oracle, args.seed).value
    report = _report(ch, res, fid, {}, time.perf_counter() - t0)
    if args.json:
        _emit_json(report)
    else:
        print("angle %.12f" % report.angle)
        print("cos %.12f" % report.cos_value)
        print("method %s" % report.method)
        print("lower %.12f" % report.lower)
        print("upper %.12f" % report.upper)
        if fid is not None:
            print("fidelity_oracle %.12f" % fid)
    return 0


def cmd_fidelity(args):
    ch = _load_channel(args.file)
    cfg = SolverConfig(seed=args.seed, tol=args.tol)
    t0 = time.perf_counter()
    res = _solve(ch, args.method, cfg)
    fid = None
    if args.oracle is not None:
        fid = oracle_fidelity(ch, args.oracle, args.seed).value
    report = _report(ch, res, fid, {}, time.perf_counter() - t0)
    if args.json:
        _emit_json(report)
    else:
        print("fidelity %.12f" % report.cos_value)
        if fid is not None:
            print("oracle %.12f" % fid)
            print("gap %.3e" % (fid - report.cos_value))
    return 0


def cmd_bounds(args):
    ch = _load_channel(args.file)
    cfg = SolverConfig(seed=args.seed, tol=args.tol)
    t0 = time.perf_counter()
    res = _solve(ch, args.method, cfg)
    lo = lower_bound(ch)
    hi = heuristic_upper_bound(ch)
    fid = None
    if args.oracle is not None:
        fid = oracle_fidelity(ch, args.oracle, args.seed).value
    report = _report(ch, res, fid, {}, time.perf_counter() - t0)
    if args.json:
        _emit_json(report)
    else:
        print("lower %.12f" % lo)
        print("cost %.12f" % report.angle)
        print("upper %.12f" % hi)
    return 0


def cmd_dilate(args):
    ch = _load_channel(args.file)
    cfg = SolverConfig(seed=args.seed, tol=args.tol)
    t0 = time.perf_counter()
    res = _solve(ch, args.method, cfg)
    ext = optimal_extension(ch, res)
    realized = extension_channel(ext.U, ch.dim)
    resid = float(np.abs(realized.choi() - ch.choi()).max())
    side = ext.U.shape[0]
    unit = float(np.abs(ext.U.conj().T @ ext.U - np.eye(side)).max())
    residuals = {"choi": resid, "unitarity": unit, "maxnorm": ext.maxnorm}
    report = _report(ch, res, None, residuals, time.perf_counter() - t0)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(unitary_to_json(ext.U))
        fh.write("\n")
    if args.json:
        _emit_json(report)
    else:
        print("maxnorm %.12f" % ext.maxnorm)
        print("residual %.3e" % resid)
    return 0


def _gen_channel(args):
    n = args.n
    if args.family == "identity":
        return KrausChannel([np.eye(n, dtype=complex)])
    if args.family == "depolarizing":
        if args.p is None:
            raise ValueError("the depolarizing family needs --p")
        return make_depolarizing(n, args.p)
    if args.family == "projector":
        if args.r is None:
            raise ValueError("the projector family needs --r")
        r = args.r
        if r < 1 or n % r != 0:
            raise ValueError(
                "projector rank must divide the dimension (got n = %d, r = %d)" % (n, r)
            )
        projectors = []
        for i in range(n // r):
            P = np.zeros((n, n), dtype=complex)
            for j in range(i * r, (i + 1) * r):
                P[j, j] = 1.0
            projectors.append(P)
        return make_projector_channel(projectors, [1.0] * (n // r))
    if args.family == "random":
        if args.d is None:
            raise ValueError("the random family needs --d")
        return make_random_channel(n, args.d, args.seed)
    raise ValueError("unknown family %r" % args.family)


def cmd_gen(args):
    ch = _gen_channel(args)
    if not ch.validate(1e-10):
        raise ValueError("generated channel fails trace preservation at 1e-10")
    text = channel_to_json(ch)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
            fh.write("\n")
        print("wrote %s (dim %d, %d operators)" % (args.out, ch.dim, ch.nkraus))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tecost",
        description="Time-energy cost of quantum channels in Kraus form.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = argparse.ArgumentParser(add_help=False)
    compute.add_argument("file", help="channel JSON file")
    compute.add_argument(
        "--method",
        choices=("auto", "sdp", "subgrad", "closed"),
        default="auto",
        help="solver selection (default: auto = closed forms, then both solvers)",
    )
    compute.add_argument(
        "--tol",
        type=float,
        default=1e-8,
        help="interior-point duality-gap stop (default 1e-8)",
    )
    compute.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    compute.add_argument("--json", action="store_true", help="emit one JSON object")

    oracle_flag = argparse.ArgumentParser(add_help=False)
    oracle_flag.add_argument(
        "--oracle",
        type=int,
        metavar="N",
        help="also run the fidelity oracle with N samples",
    )

    p = sub.add_parser(
        "cost", parents=[compute, oracle_flag], help="cost angle of a channel"
    )
    p.set_defaults(func=cmd_cost)
    p = sub.add_parser(
        "fidelity",
        parents=[compute, oracle_flag],
        help="worst-case entanglement fidelity cos(cost)",
    )
    p.set_defaults(func=cmd_fidelity)
    p = sub.add_parser(
        "bounds",
        parents=[compute, oracle_flag],
        help="lower bound, cost, heuristic upper bound",
    )
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser(
        "dilate", parents=[compute], help="write a cost-optimal unitary extension"
    )
    p.add_argument("out", help="output unitary JSON file")
    p.set_defaults(func=cmd_dilate)

    p = sub.add_parser("gen", help="generate a channel file")
    p.add_argument(
        "family", choices=("depolarizing", "projector", "random", "identity")
    )
    p.add_argument("--n", type=int, required=True, help="Hilbert-space dimension")
    p.add_argument("--p", type=float, help="depolarizing probability")
    p.add_argument("--r", type=int, help="projector rank")
    p.add_argument("--d", type=int, help="number of Kraus operators")
    p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p.add_argument("--out", default="-", help="output path (default: stdout)")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except SolverDisagreement as exc:
        print(
            "error: solvers disagree: supergradient angle %.9f vs sdp angle %.9f"
            % (exc.angle_supergradient, exc.angle_sdp),
            file=sys.stderr,
        )
        return 3
    except GramMismatch as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 4
    except (BarrierFailure, ValueError, TypeError, KeyError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
