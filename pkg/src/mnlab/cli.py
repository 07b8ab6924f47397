"""Command-line driver: norms, grid evaluation, bounds, extremizer checks, sweeps.

Exit status: 0 on success, 1 on a validation error (bad flags, malformed
input files), 2 on an invariant violation (e.g. a sandwich breach in an
operator-norm report).  Every run is reproducible from its flags plus input
files; the MNL_THREADS environment variable caps worker parallelism.

Exponents are accepted either as Lebesgue values (--p 2 --q inf ...) or as
reciprocals (--alpha 0.5 --beta 0 ...); unspecified slots default to
exponent 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from .exponents import MixedExponents, phi, theta, upper_bound_magnitude
from .extremizers import (
    ChirpB,
    ColumnC,
    OnesD,
    RowR,
    UnitE,
    build,
    chirp_residual_sweep,
    unit_sharpness,
    verify_chirp_lower,
    verify_dirichlet_lower,
)
from .norms import (
    QuadratureSpec,
    grid_to_json,
    load_grid,
    load_matrix,
    lpq_norm,
    lrs_norm,
    save_grid,
)
from .opnorm import (
    SearchConfig,
    estimate,
    ladder_diagnostics,
    sharpness_sweep,
    write_reports_csv,
    write_reports_jsonl,
)
from .trigsum import EvalPath, EvalPlan, FrequencyScale, eval_nonortho, eval_sum

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # Flag mistakes are validation errors: exit status 1, not argparse's 2.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(message))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _parse_exponent(text: str) -> float:
    t = text.strip().lower()
    if t in {"inf", "infinity"}:
        return math.inf
    return float(t)


def _add_exponent_flags(p: argparse.ArgumentParser) -> None:
    for name in ("p", "q", "r", "s"):
        p.add_argument(f"--{name}", type=_parse_exponent, default=None,
                       help=f"Lebesgue exponent {name} in [1, inf] ('inf' allowed)")
    for name in ("alpha", "beta", "gamma", "delta"):
        p.add_argument(f"--{name}", type=float, default=None,
                       help=f"reciprocal {name} in [0, 1] (0 means the exponent is infinite)")


def _exponents_from_args(args) -> MixedExponents:
    recips = []
    for value_name, recip_name in (("p", "alpha"), ("q", "beta"), ("r", "gamma"), ("s", "delta")):
        value = getattr(args, value_name)
        recip = getattr(args, recip_name)
        if value is not None and recip is not None:
            raise ValueError(f"give --{value_name} or --{recip_name}, not both")
        if recip is not None:
            recips.append(recip)
        elif value is not None:
            recips.append(0.0 if value == math.inf else 1.0 / value if value >= 1.0 else _bad(value_name, value))
        else:
            recips.append(0.5)  # default exponent 2
    return MixedExponents(*recips)


def _bad(name: str, value) -> float:
    raise ValueError(f"--{name} must lie in [1, inf], got {value}")


def _parse_ladder(text: str) -> list[int]:
    """'2:16' doubles from 2 to 16; '2,3,4' is a literal list; '8' is one rung."""
    if ":" in text:
        lo_text, hi_text = text.split(":", 1)
        lo, hi = int(lo_text), int(hi_text)
        if lo < 1 or hi < lo:
            raise ValueError(f"bad ladder {text!r}")
        out = []
        while lo <= hi:
            out.append(lo)
            lo *= 2
        return out
    return [int(part) for part in text.split(",")]


def _parse_tuple(text: str) -> MixedExponents:
    parts = [part.strip() for part in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"exponent tuple needs four comma-separated values, got {text!r}")
    return MixedExponents.from_exponents(*(_parse_exponent(part) for part in parts))


def _parse_rtuple(text: str) -> MixedExponents:
    parts = [float(part) for part in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"reciprocal tuple needs four comma-separated values, got {text!r}")
    return MixedExponents(*parts)


def _emit(obj, out_path: "str | None") -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(text + "\n")
    print(text)


# ----------------------------------------------------------------------------
# Subcommand handlers
# ----------------------------------------------------------------------------


def _cmd_norm(args) -> int:
    e = _exponents_from_args(args)
    out = {}
    if args.matrix:
        out["lpq"] = lpq_norm(load_matrix(args.matrix), e)
    if args.grid:
        out["lrs"] = lrs_norm(load_grid(args.grid), e,
                              QuadratureSpec(oversample=args.oversample, refine_check=args.refine_check))
    if not out:
        raise ValueError("give --matrix and/or --grid")
    _emit(out, args.out)
    return 0


def _cmd_eval(args) -> int:
    A = load_matrix(args.matrix)
    Kx = args.Kx if args.Kx else args.oversample * A.M
    Ky = args.Ky if args.Ky else args.oversample * A.N
    if args.scale == "one":
        plan = EvalPlan(Kx=Kx, Ky=Ky, path=EvalPath.DIRECT, frequency_scale=FrequencyScale.ONE)
        f = eval_nonortho(A, plan)
    else:
        path = EvalPath.DIRECT if args.path == "direct" else EvalPath.ZERO_PAD_TRANSFORM
        f = eval_sum(A, EvalPlan(Kx=Kx, Ky=Ky, path=path))
    if args.out:
        save_grid(args.out, f)
    else:
        print(json.dumps(grid_to_json(f)))
    return 0


def _cmd_bound(args) -> int:
    e = _exponents_from_args(args)
    _emit(
        {
            "M": args.M,
            "N": args.N,
            "exponents": list(e.as_tuple()),
            "theta": theta(e),
            "phi": phi(e),
            "upper": upper_bound_magnitude(args.M, args.N, e),
        },
        args.out,
    )
    return 0


def _cmd_extremal(args) -> int:
    e = _exponents_from_args(args)
    quad = QuadratureSpec(oversample=args.oversample)
    if args.kind == "chirp":
        report = verify_chirp_lower(args.M, args.N, eta=args.eta, grid_points=args.grid_points)
    elif args.kind in {"column", "row", "ones"}:
        kind = {"column": ColumnC(col=args.col, value=args.value),
                "row": RowR(row=args.row, value=args.value),
                "ones": OnesD(value=args.value)}[args.kind]
        report = verify_dirichlet_lower(kind, args.M, args.N, e, samples=args.samples, quad=quad)
    else:
        report = unit_sharpness(UnitE(row=args.row, col=args.col, value=args.value),
                                args.M, args.N, e, quad=quad)
    _emit(report.to_json_dict(), args.out)
    return 0


def _cmd_chirp_check(args) -> int:
    Ms = _parse_ladder(args.M_ladder)
    if args.xs:
        xs = [float(part) for part in args.xs.split(",")]
    else:
        xs = list(np.linspace(args.eta, 1.0 - args.eta, 7))
    report = chirp_residual_sweep(args.eta, Ms, xs)
    for M, residual in zip(report.Ms, report.max_residuals):
        print(f"M={M:>8d}  max|sum - main|={residual:.6g}")
    print(f"slope={report.slope:.4f}  amplitude_ratio={report.amplitude_ratio:.4f}  "
          f"predicted_amplitude={report.predicted_amplitude:.4f}")
    _emit(report.to_json_dict(), args.out)
    return 0


def _cmd_opnorm(args) -> int:
    e = _exponents_from_args(args)
    cfg = SearchConfig(restarts=args.restarts, max_iters=args.max_iters, step=args.step,
                       seed=args.seed, grid=(args.Kx, args.Ky) if args.Kx and args.Ky else None,
                       tol=args.tol, real_only=args.real_only)
    report = estimate(args.M, args.N, e, cfg)
    if args.jsonl:
        write_reports_jsonl(args.jsonl, [report])
    if args.csv:
        write_reports_csv(args.csv, [report])
    _emit(report.to_json_dict(), args.out)
    if not report.sandwich_ok:
        print("error: sandwich invariant violated (see report)", file=sys.stderr)
        return 2
    return 0


def _cmd_sweep(args) -> int:
    Ms = _parse_ladder(args.M_ladder)
    Ns = _parse_ladder(args.N_ladder) if args.N_ladder else Ms
    tuples = [_parse_tuple(t) for t in args.tuple or []]
    tuples += [_parse_rtuple(t) for t in args.rtuple or []]
    if not tuples:
        raise ValueError("give at least one --tuple p,q,r,s or --rtuple alpha,beta,gamma,delta")
    cfg = SearchConfig(restarts=args.restarts, max_iters=args.max_iters, step=args.step,
                       seed=args.seed, tol=args.tol, real_only=args.real_only)
    reports = sharpness_sweep(Ms, Ns, tuples, cfg)
    if args.jsonl:
        write_reports_jsonl(args.jsonl, reports)
    if args.csv:
        write_reports_csv(args.csv, reports)
    diagnostics = {str(key): value for key, value in ladder_diagnostics(reports).items()}
    _emit(diagnostics, args.out)
    if any(not report.sandwich_ok for report in reports):
        print("error: sandwich invariant violated in at least one report", file=sys.stderr)
        return 2
    return 0


def _cmd_nonortho_check(args) -> int:
    from .norms import CoefficientMatrix

    sizes = _parse_ladder(args.sizes)
    e22 = MixedExponents(0.5, 0.5, 0.5, 0.5)
    rng = np.random.default_rng(args.seed)
    max_ratios = []
    for size in sizes:
        K = max(args.oversample * size, 64)
        plan = EvalPlan(Kx=K, Ky=K, path=EvalPath.DIRECT, frequency_scale=FrequencyScale.ONE)
        worst = 0.0
        for _ in range(args.trials):
            entries = rng.standard_normal((size, size)) + 1j * rng.standard_normal((size, size))
            A = CoefficientMatrix(size, size, entries)
            ratio = lrs_norm(eval_nonortho(A, plan), e22) / lpq_norm(A, e22)
            worst = max(worst, ratio)
        max_ratios.append(worst)
        print(f"M=N={size:>3d}  max ratio over {args.trials} draws: {worst:.6f}")
    growth = max_ratios[-1] / max_ratios[-2] - 1.0 if len(max_ratios) >= 2 else 0.0
    _emit(
        {
            "sizes": sizes,
            "trials": args.trials,
            "max_ratios": max_ratios,
            "empirical_constant": max(max_ratios),
            "top_growth": growth,
        },
        args.out,
    )
    return 0


def main(argv=None) -> int:
    parser = _Parser(prog="mnlab", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_norm = sub.add_parser("norm", help="print mixed norms of a matrix and/or grid file")
    p_norm.add_argument("--matrix")
    p_norm.add_argument("--grid")
    p_norm.add_argument("--oversample", type=int, default=8)
    p_norm.add_argument("--refine-check", action="store_true")
    p_norm.add_argument("--out")
    _add_exponent_flags(p_norm)
    p_norm.set_defaults(func=_cmd_norm)

    p_eval = sub.add_parser("eval", help="sample the double sum (or its unit-frequency variant) to a grid file")
    p_eval.add_argument("--matrix", required=True)
    p_eval.add_argument("--out")
    p_eval.add_argument("--Kx", type=int, default=0)
    p_eval.add_argument("--Ky", type=int, default=0)
    p_eval.add_argument("--oversample", type=int, default=8)
    p_eval.add_argument("--path", choices=["direct", "transform"], default="transform")
    p_eval.add_argument("--scale", choices=["two-pi", "one"], default="two-pi")
    p_eval.set_defaults(func=_cmd_eval)

    p_bound = sub.add_parser("bound", help="print theta, phi and the growth bound constant")
    p_bound.add_argument("--M", type=int, required=True)
    p_bound.add_argument("--N", type=int, required=True)
    p_bound.add_argument("--out")
    _add_exponent_flags(p_bound)
    p_bound.set_defaults(func=_cmd_bound)

    p_ext = sub.add_parser("extremal", help="build an extremizer and verify its lower bound")
    p_ext.add_argument("--kind", choices=["chirp", "column", "row", "ones", "unit"], required=True)
    p_ext.add_argument("--M", type=int, required=True)
    p_ext.add_argument("--N", type=int, required=True)
    p_ext.add_argument("--eta", type=float, default=0.2)
    p_ext.add_argument("--grid-points", type=int, default=33)
    p_ext.add_argument("--row", type=int, default=1)
    p_ext.add_argument("--col", type=int, default=1)
    p_ext.add_argument("--value", type=complex, default=1 + 0j)
    p_ext.add_argument("--samples", type=int, default=64)
    p_ext.add_argument("--oversample", type=int, default=8)
    p_ext.add_argument("--out")
    _add_exponent_flags(p_ext)
    p_ext.set_defaults(func=_cmd_extremal)

    p_chirp = sub.add_parser("chirp-check", help="residual sweep of the chirp sum against its closed form")
    p_chirp.add_argument("--eta", type=float, default=0.2)
    p_chirp.add_argument("--M-ladder", default="1024:65536")
    p_chirp.add_argument("--xs", default="", help="comma-separated x values (default: 7 across the window)")
    p_chirp.add_argument("--out")
    p_chirp.set_defaults(func=_cmd_chirp_check)

    p_op = sub.add_parser("opnorm", help="bracket and search the operator norm at one point")
    p_op.add_argument("--M", type=int, required=True)
    p_op.add_argument("--N", type=int, required=True)
    p_op.add_argument("--seed", type=int, default=0)
    p_op.add_argument("--restarts", type=int, default=8)
    p_op.add_argument("--max-iters", type=int, default=60)
    p_op.add_argument("--step", type=float, default=0.25)
    p_op.add_argument("--tol", type=float, default=1e-9)
    p_op.add_argument("--Kx", type=int, default=0)
    p_op.add_argument("--Ky", type=int, default=0)
    p_op.add_argument("--real-only", action="store_true")
    p_op.add_argument("--jsonl")
    p_op.add_argument("--csv")
    p_op.add_argument("--out")
    _add_exponent_flags(p_op)
    p_op.set_defaults(func=_cmd_opnorm)

    p_sweep = sub.add_parser("sweep", help="operator-norm reports along a size ladder")
    p_sweep.add_argument("--M-ladder", required=True)
    p_sweep.add_argument("--N-ladder", default="")
    p_sweep.add_argument("--tuple", action="append", help="exponents p,q,r,s ('inf' allowed); repeatable")
    p_sweep.add_argument("--rtuple", action="append", help="reciprocals alpha,beta,gamma,delta; repeatable")
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--restarts", type=int, default=4)
    p_sweep.add_argument("--max-iters", type=int, default=40)
    p_sweep.add_argument("--step", type=float, default=0.25)
    p_sweep.add_argument("--tol", type=float, default=1e-9)
    p_sweep.add_argument("--real-only", action="store_true")
    p_sweep.add_argument("--jsonl")
    p_sweep.add_argument("--csv")
    p_sweep.add_argument("--out")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_non = sub.add_parser("nonortho-check", help="ratio sweep for the unit-frequency sum")
    p_non.add_argument("--sizes", default="2,4,8,16,32")
    p_non.add_argument("--trials", type=int, default=50)
    p_non.add_argument("--seed", type=int, default=0)
    p_non.add_argument("--oversample", type=int, default=8)
    p_non.add_argument("--out")
    p_non.set_defaults(func=_cmd_nonortho_check)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        return _fail(str(exc))
    except AssertionError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
