"""Command-line entry point.

Subcommands: gen, sweep, pareto, tram, analytic. Every command emits
plot-ready CSV (header always present), writes a JSON run manifest next to
its primary output (even on failure), and is deterministic given its full
flag set including --seed. Exit codes: 0 success, 1 runtime error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
import time
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import AnalyticParams, analytic_curves
from .core import Dataset
from .data import (
    SyntheticSpec,
    gen_synthetic,
    load_csv,
    save_csv,
    save_mixture_meta,
    split_validation,
)
from .solver import SolverConfig
from .tradeoff import Lambda, SweepGrid, pareto_data_time, pareto_risk_time, run_sweep
from .tram import TramParams, run_tram


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {text!r}")


def _range_spec(text: str):
    """Either 'lo:hi:count' (log-spaced) or a comma-separated list."""
    if ":" in text:
        try:
            lo, hi, count = text.split(":")
            lo, hi, count = float(lo), float(hi), int(count)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected lo:hi:count: {text!r}")
        if lo <= 0 or hi < lo or count < 1:
            raise argparse.ArgumentTypeError(f"bad range {text!r}")
        return np.geomspace(lo, hi, count)
    try:
        return np.array([float(tok) for tok in text.split(",") if tok.strip()])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected numbers: {text!r}")


def _load_dataset(path: str, header_mode: str) -> Dataset:
    """Read a dataset CSV; 'auto' sniffs whether the first row is a header."""
    if header_mode == "auto":
        with open(path) as fh:
            first = fh.readline()
        try:
            [float(tok) for tok in first.strip().split(",") if tok.strip()]
            header_mode = "no"
        except ValueError:
            header_mode = "yes"
    return load_csv(path, has_header=header_mode == "yes")


def _manifest_path(primary_out: str) -> Path:
    out = Path(primary_out)
    return out.with_name(out.stem + ".manifest.json")


def _write_manifest(path: Path, record: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _utcnow() -> str:
    return datetime.now(timezone.utc).isoformat()


def cmd_gen(args, outputs: list[str]) -> None:
    spec = SyntheticSpec(
        n=args.n,
        d=args.d,
        k_true=args.k_true,
        box=(args.box_low, args.box_high),
        sigma2=args.sigma2,
        dirichlet_alpha=args.dirichlet_alpha,
        seed=args.seed,
    )
    result = gen_synthetic(spec)
    save_csv(result.data, args.out)
    outputs.append(args.out)
    meta = args.meta_out or str(Path(args.out).with_name(Path(args.out).stem + "_meta.csv"))
    save_mixture_meta(result, meta)
    outputs.append(meta)


def cmd_sweep(args, outputs: list[str]) -> None:
    data = _load_dataset(args.input, args.header)
    solver = SolverConfig(
        k=args.k,
        max_iters=args.max_iters,
        rel_tol=args.rel_tol,
        restarts=args.restarts,
        seed=args.seed,
    )
    grid = SweepGrid(
        n_values=tuple(args.n_values),
        s_values=tuple(args.s_values),
        procedure=args.procedure,
        solver=solver,
        repeats=args.repeats,
        seed=args.seed,
    )
    jobs = 1 if args.timing_strict else args.jobs
    lam = run_sweep(data, grid, jobs=jobs)
    lam.to_csv(args.out)
    outputs.append(args.out)


def cmd_pareto(args, outputs: list[str]) -> None:
    rows = []
    for path in args.lam:
        lam = Lambda.from_csv(path)
        for proc in sorted({r.procedure for r in lam.records}):
            sub = Lambda(tuple(r for r in lam.records if r.procedure == proc))
            if args.eps is not None:
                frontier = pareto_data_time(sub, args.eps)
            else:
                frontier = pareto_risk_time(sub, args.n)
            rows.extend((x, t, proc) for x, t in frontier)
    if not rows:
        print("warning: no feasible records; frontier is empty", file=sys.stderr)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["n_or_eps", "time_s", "source"])
        for x, t, src in rows:
            writer.writerow([repr(float(x)), repr(float(t)), src])
    outputs.append(args.out)


def cmd_tram(args, outputs: list[str]) -> None:
    data = _load_dataset(args.input, args.header)
    train, validation = split_validation(data, args.val_fraction, seed=args.seed)
    params = TramParams(
        eps_total=args.eps,
        delta=args.delta,
        k=args.k,
        B=args.ball_radius,
        beta=args.beta,
        m0=args.m0,
        s0=args.s0,
        gamma_m=args.gamma_m,
        gamma_s=args.gamma_s,
        seed=args.seed,
    )
    solver = SolverConfig(
        k=args.k,
        max_iters=args.max_iters,
        rel_tol=args.rel_tol,
        restarts=args.restarts,
        seed=args.seed,
    )
    trace = run_tram(train, validation, params, solver)
    trace.to_csv(args.trace_out)
    outputs.append(args.trace_out)
    centers_out = args.centers_out or str(
        Path(args.trace_out).with_name(Path(args.trace_out).stem + "_centers.csv")
    )
    save_csv(Dataset(trace.final_centers.centers), centers_out)
    outputs.append(centers_out)
    if trace.exhausted:
        if trace.rows[-1].stopped:
            print(
                "warning: validation pool smaller than the prescribed budget",
                file=sys.stderr,
            )
        else:
            print("warning: run exhausted; emitted best-so-far centers", file=sys.stderr)


def cmd_analytic(args, outputs: list[str]) -> None:
    params = AnalyticParams(
        d=args.d,
        k=args.k,
        sigma_bar=args.sigma_bar,
        alpha_init=args.alpha_init,
        alpha_samp=args.alpha_samp,
        beta=args.beta,
        A=args.A,
        B=args.B,
        eps_total=args.eps,
        use_sigma=not args.no_sigma,
    )
    mode = args.mode.replace("-", "_")
    if args.range is not None:
        xs = args.range
    elif mode == "data_time":
        xs = np.geomspace(100, 1e6, 61)
    else:
        xs = np.geomspace(50, 1000, 61)
    if mode == "data_time":
        xs = np.unique(np.ceil(xs).astype(np.int64))
    points = analytic_curves(params, mode, xs, fixed_n=args.n)
    with open(args.out, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["x", "t_subs", "t_core", "m_star_subs", "m_star_core", "s_star_core", "regime"]
        )
        for pt in points:
            sub, core = pt.subsampler, pt.coreset
            writer.writerow(
                [
                    repr(pt.x),
                    repr(sub.t) if sub.feasible else "",
                    repr(core.t) if core.feasible else "",
                    sub.m if sub.feasible else "",
                    core.m if core.feasible else "",
                    core.s if core.feasible and core.s is not None else "",
                    pt.regime,
                ]
            )
    outputs.append(args.out)


def _add_solver_flags(sub, restarts_default: int = 2) -> None:
    sub.add_argument("--k", type=int, required=True, help="number of centers to fit")
    sub.add_argument("--restarts", type=int, default=restarts_default)
    sub.add_argument("--max-iters", type=int, default=100)
    sub.add_argument("--rel-tol", type=float, default=1e-4)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tramkit",
        description="Coreset summarization, tradeoff sweeps and navigation for k-means.",
    )
    parser.add_argument("--version", action="version", version=f"tramkit {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    gen = subs.add_parser("gen", help="generate synthetic mixture data as CSV")
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--d", type=int, default=100)
    gen.add_argument("--k-true", type=int, default=100)
    gen.add_argument("--box-low", type=float, default=0.0)
    gen.add_argument("--box-high", type=float, default=100.0)
    gen.add_argument("--sigma2", type=float, default=5.0)
    gen.add_argument("--dirichlet-alpha", type=float, default=1.0 / 20.0)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--meta-out", default=None, help="ground-truth sidecar CSV")
    gen.set_defaults(func=cmd_gen)

    sweep = subs.add_parser("sweep", help="measure a (n, s) grid into a Lambda CSV")
    sweep.add_argument("--input", required=True, help="dataset CSV")
    sweep.add_argument(
        "--header",
        choices=["auto", "yes", "no"],
        default="auto",
        help="whether the input CSV has a header row (default: sniff)",
    )
    sweep.add_argument("--procedure", choices=["uniform", "coreset"], required=True)
    sweep.add_argument("--n-values", type=_int_list, required=True)
    sweep.add_argument("--s-values", type=_int_list, required=True)
    sweep.add_argument("--repeats", type=int, default=50)
    sweep.add_argument("--jobs", type=int, default=1, help="concurrent cells")
    sweep.add_argument(
        "--timing-strict",
        action="store_true",
        help="force sequential cells for clean timing",
    )
    sweep.add_argument("--seed", type=int, default=0)
    sweep.add_argument("--out", required=True)
    _add_solver_flags(sweep)
    sweep.set_defaults(func=cmd_sweep)

    pareto = subs.add_parser("pareto", help="extract Pareto frontiers from Lambda CSVs")
    pareto.add_argument(
        "--lambda",
        dest="lam",
        action="append",
        required=True,
        metavar="CSV",
        help="Lambda CSV (repeatable)",
    )
    mode = pareto.add_mutually_exclusive_group(required=True)
    mode.add_argument("--eps", type=float, help="data-time frontier at this risk")
    mode.add_argument("--n", type=int, help="risk-time frontier at this data size")
    pareto.add_argument("--out", required=True)
    pareto.set_defaults(func=cmd_pareto)

    tram = subs.add_parser("tram", help="run the tradeoff navigation loop")
    tram.add_argument("--input", required=True, help="dataset CSV")
    tram.add_argument("--header", choices=["auto", "yes", "no"], default="auto")
    tram.add_argument("--eps", type=float, required=True, help="target risk")
    tram.add_argument("--delta", type=float, default=0.1)
    tram.add_argument("--val-fraction", type=float, default=0.2)
    tram.add_argument("--ball-radius", type=float, default=None, help="support radius B")
    tram.add_argument("--beta", type=float, default=1.0 / math.log2(1.5))
    tram.add_argument("--m0", type=int, default=None)
    tram.add_argument("--s0", type=int, default=None)
    tram.add_argument("--gamma-m", type=float, default=2.0)
    tram.add_argument("--gamma-s", type=float, default=None)
    tram.add_argument("--seed", type=int, default=0)
    tram.add_argument("--trace-out", required=True)
    tram.add_argument("--centers-out", default=None)
    _add_solver_flags(tram)
    tram.set_defaults(func=cmd_tram)

    analytic = subs.add_parser("analytic", help="simulate the analytic tradeoff bounds")
    analytic.add_argument("--mode", choices=["data-time", "risk-time"], required=True)
    analytic.add_argument(
        "--range",
        type=_range_spec,
        default=None,
        help="lo:hi:count (log-spaced) or comma list; n for data-time, eps for risk-time",
    )
    analytic.add_argument("--d", type=int, default=20)
    analytic.add_argument("--k", type=int, default=20)
    analytic.add_argument("--sigma-bar", type=float, default=192.0)
    analytic.add_argument("--alpha-init", type=float, default=100.0)
    analytic.add_argument("--alpha-samp", type=float, default=100.0)
    analytic.add_argument("--beta", type=float, default=3.0)
    analytic.add_argument("--A", type=float, default=5.0)
    analytic.add_argument("--B", type=float, default=1.0)
    analytic.add_argument("--eps", type=float, default=300.0)
    analytic.add_argument("--n", type=int, default=2000, help="data size for risk-time")
    analytic.add_argument(
        "--no-sigma",
        action="store_true",
        help="drop sigma_bar from the estimation error (literal printed program)",
    )
    analytic.add_argument("--out", required=True)
    analytic.set_defaults(func=cmd_analytic)

    return parser


def _primary_out(args) -> str:
    return getattr(args, "out", None) or args.trace_out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "tram" and not 0.0 < args.delta < 0.2:
        parser.error("--delta must lie in (0, 1/5)")
    if args.command == "tram" and not 0.0 < args.val_fraction < 1.0:
        parser.error("--val-fraction must lie in (0, 1)")

    started = _utcnow()
    t0 = time.perf_counter()
    outputs: list[str] = []
    manifest = {
        "command": args.command,
        "parameters": {
            k: v for k, v in sorted(vars(args).items()) if k != "func" and not callable(v)
        },
        "seed": getattr(args, "seed", None),
        "started": started,
        "tool_version": __version__,
    }
    manifest["parameters"] = {
        k: (v.tolist() if isinstance(v, np.ndarray) else v)
        for k, v in manifest["parameters"].items()
    }
    try:
        args.func(args, outputs)
        error = None
    except Exception as exc:  # noqa: BLE001 - reported via exit code + manifest
        error = f"{type(exc).__name__}: {exc}"
    manifest.update(
        {
            "finished": _utcnow(),
            "elapsed_s": time.perf_counter() - t0,
            "outputs": outputs,
            "error": error,
        }
    )
    _write_manifest(_manifest_path(_primary_out(args)), manifest)
    if error is not None:
        print(f"error: {error}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
