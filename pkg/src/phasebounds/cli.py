"""Command-line front end: single bound values, figure-style sweeps, verification.

Subcommands
-----------
bounds   one bound value as JSON (or CSV)
region   attainability partition over (d, alpha) as CSV
curves   the four optimized bounds against the total photon number as CSV
verify   oracle-equivalence suites; exit 1 on any failed check

Exit codes: 0 ok, 1 verification failure, 2 usage or domain error.  CSV
numerics carry 17 significant digits so values round-trip exactly.  Sweeps
fan out across a thread pool sized by the PHASEBOUNDS_WORKERS environment
variable (default: available parallelism); each cell is computed
independently, so output is byte-identical at any worker count.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bounds, states, verify
from .errors import PhaseBoundsError
from .qfim import trace_inverse_bound

__all__ = ["main", "SweepGrid"]

WORKERS_ENV = "PHASEBOUNDS_WORKERS"


@dataclass(frozen=True)
class SweepGrid:
    """Axis definitions plus row-major cell records for a sweep output."""

    axes: tuple[tuple[str, float, float, int], ...]
    header: tuple[str, ...]
    cells: list[tuple]


def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _worker_count() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _parallel_rows(fn: Callable, items: Sequence) -> list:
    """Map fn over items on the worker pool, preserving order."""
    workers = min(_worker_count(), len(items)) or 1
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _write_rows(path: str | None, header: Iterable[str], rows: Iterable[tuple]) -> None:
    def dump(stream) -> None:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])

    if path is None:
        dump(sys.stdout)
    else:
        with open(path, "w", newline="") as fh:
            dump(fh)


def _report_payload(report: bounds.BoundReport) -> dict:
    return {"kind": report.kind.value, "value": report.value,
            "regime": report.regime.value, "params": dict(report.params)}


def _emit_report(report: bounds.BoundReport, fmt: str, out: str | None) -> None:
    if fmt == "json":
        text = json.dumps(_report_payload(report), sort_keys=True)
        if out is None:
            print(text)
        else:
            with open(out, "w") as fh:
                fh.write(text + "\n")
        return
    keys = sorted(report.params)
    header = ["kind", "regime", "value"] + keys
    row = [report.kind.value, report.regime.value, _fmt(report.value)]
    row += [_fmt(report.params[k]) for k in keys]
    _write_rows(out, header, [tuple(row)])


def _require(args: argparse.Namespace, flag: str, family: str) -> float:
    value = getattr(args, flag.replace("-", "_"))
    if value is None:
        raise PhaseBoundsError(f"--{flag} is required for family {family}")
    return value


def _bounds_report(args: argparse.Namespace) -> bounds.BoundReport:
    family = args.family
    if family in ("ecs-linear", "ecs-nonlinear", "zzb-ecs", "ecs-optimal", "ecs-at-b"):
        alpha = _require(args, "alpha", family)
        alpha_sq = alpha * alpha
        if family == "ecs-linear":
            return bounds.qcrb_ecs_linear(args.d, alpha_sq)
        if family == "ecs-nonlinear":
            return bounds.qcrb_ecs_nonlinear(args.d, alpha_sq)
        if family == "zzb-ecs":
            return bounds.zzb_ecs(args.d, alpha_sq)
        if family == "ecs-optimal":
            return bounds.minimize_bound_over_b(args.d, args.m, alpha_sq)
        b = _require(args, "b", family)
        p = states.ecs_params(args.d, alpha_sq, b, args.m)
        return bounds.BoundReport(value=trace_inverse_bound(p),
                                  kind=bounds.BoundKind.GENERAL_ECS_AT_B,
                                  regime=bounds.Regime.NOT_APPLICABLE,
                                  params={"d": args.d, "m": args.m,
                                          "alpha_sq": alpha_sq, "b": b})
    if family == "noon-linear":
        return bounds.qcrb_noon_linear(args.d, _require(args, "N", family))
    if family == "noon-nonlinear":
        return bounds.qcrb_noon_nonlinear(args.d, _require(args, "N", family))
    if family == "zzb-noon":
        return bounds.zzb_noon(args.d, _require(args, "N", family))
    if family == "independent-ecs":
        if args.n_tot is not None:
            return bounds.independent_ecs_vs_ntot(args.d, args.n_tot)
        alpha = _require(args, "alpha", family)
        return bounds.qcrb_independent_ecs(args.d, alpha * alpha)
    if family == "independent-noon":
        return bounds.qcrb_independent_noon(args.d, _require(args, "n-tot", family))
    raise PhaseBoundsError(f"unknown family {family!r}")


def cmd_bounds(args: argparse.Namespace) -> int:
    _emit_report(_bounds_report(args), args.format, args.out)
    return 0


def _region_grid(args: argparse.Namespace) -> SweepGrid:
    if args.d_steps is None:
        d_values = list(range(args.d_min, args.d_max + 1))
    else:
        # rounded to integers; repeats keep the cell count at the requested product
        d_values = [int(round(x)) for x in
                    np.linspace(args.d_min, args.d_max, args.d_steps)]
    alphas = np.linspace(args.alpha_min, args.alpha_max, args.alpha_steps)

    def row(d: int) -> list[tuple]:
        cells = []
        for alpha in alphas:
            cell = bounds.region_classify(d, float(alpha), args.m)
            cells.append((cell.d, cell.alpha, cell.m, cell.b_star,
                          cell.sqrt_gamma, cell.interior))
        return cells

    rows = _parallel_rows(row, d_values)
    return SweepGrid(
        axes=(("d", args.d_min, args.d_max, len(d_values)),
              ("alpha", args.alpha_min, args.alpha_max, args.alpha_steps)),
        header=("d", "alpha", "m", "b_star", "sqrt_gamma", "interior"),
        cells=[cell for chunk in rows for cell in chunk])


def cmd_region(args: argparse.Namespace) -> int:
    if not args.alpha_min > 0:
        raise PhaseBoundsError("--alpha-min must be > 0")
    grid = _region_grid(args)
    if args.format == "json":
        payload = [dict(zip(grid.header, cell)) for cell in grid.cells]
        text = json.dumps(payload)
        if args.out is None:
            print(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        return 0
    _write_rows(args.out, grid.header, grid.cells)
    return 0


def _curves_cell(d: int, n_tot: float) -> tuple:
    alpha_sq = n_tot
    geom = states.domain_geometry(d, 1, alpha_sq)
    b_used = min(geom.b_star, math.sqrt(geom.gamma_cap))
    exact_mean = states.mean_total_photons(states.ecs_params(d, alpha_sq, b_used))
    return (n_tot,
            bounds.ecs_linear_value(d, alpha_sq),
            bounds.noon_linear_value(d, n_tot),
            bounds.ecs_nonlinear_value(d, alpha_sq),
            bounds.noon_nonlinear_value(d, n_tot),
            exact_mean)


def cmd_curves(args: argparse.Namespace) -> int:
    if args.points < 2:
        raise PhaseBoundsError("--points must be >= 2")
    if not args.ntot_min >= 1.0:
        raise PhaseBoundsError("--ntot-min must be >= 1")
    axis = np.linspace(args.ntot_min, args.ntot_max, args.points)
    grid = SweepGrid(
        axes=(("n_tot", args.ntot_min, args.ntot_max, args.points),),
        header=("n_tot", "ecs_linear", "noon_linear", "ecs_nonlinear",
                "noon_nonlinear", "ecs_mean_photons_exact"),
        cells=_parallel_rows(lambda n: _curves_cell(args.d, float(n)), list(axis)))
    if args.format == "json":
        payload = [dict(zip(grid.header, cell)) for cell in grid.cells]
        text = json.dumps(payload)
        if args.out is None:
            print(text)
        else:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        return 0
    _write_rows(args.out, grid.header, grid.cells)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    overrides = {}
    for item in args.tol:
        name, _, value = item.partition("=")
        if not value:
            raise PhaseBoundsError(f"--tol takes NAME=VALUE, got {item!r}")
        if name not in verify.DEFAULT_TOLERANCES:
            raise PhaseBoundsError(f"unknown tolerance {name!r}")
        overrides[name] = float(value)
    results = verify.run_suite(args.suite, seed=args.seed, tolerances=overrides)
    for result in results:
        print(result.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasebounds",
        description="Precision bounds for simultaneous multimode phase estimation")
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("bounds", help="evaluate one bound, printed as JSON")
    b.add_argument("--family", required=True,
                   choices=["ecs-linear", "ecs-nonlinear", "ecs-optimal", "ecs-at-b",
                            "noon-linear", "noon-nonlinear", "independent-ecs",
                            "independent-noon", "zzb-ecs", "zzb-noon"])
    b.add_argument("--d", type=int, required=True, help="number of phases")
    b.add_argument("--alpha", type=float, help="coherent amplitude |alpha|")
    b.add_argument("--N", type=float, help="NOON photon number")
    b.add_argument("--n-tot", type=float, help="mean total photon number")
    b.add_argument("--m", type=int, default=1, help="generator order (ecs-optimal/ecs-at-b)")
    b.add_argument("--b", type=float, help="sensing coefficient (ecs-at-b)")
    b.add_argument("--format", choices=["json", "csv"], default="json")
    b.add_argument("--out", help="output path (default: stdout)")
    b.set_defaults(func=cmd_bounds)

    r = sub.add_parser("region", help="attainability partition over (d, alpha)")
    r.add_argument("--m", type=int, default=1)
    r.add_argument("--d-min", type=int, default=1)
    r.add_argument("--d-max", type=int, default=100)
    r.add_argument("--d-steps", type=int, default=None,
                   help="d samples (default: every integer in range)")
    r.add_argument("--alpha-min", type=float, default=0.01)
    r.add_argument("--alpha-max", type=float, default=4.0)
    r.add_argument("--alpha-steps", type=int, default=400)
    r.add_argument("--format", choices=["csv", "json"], default="csv")
    r.add_argument("--out", help="output path (default: stdout)")
    r.set_defaults(func=cmd_region)

    c = sub.add_parser("curves", help="optimized bounds against total photon number")
    c.add_argument("--d", type=int, default=5)
    c.add_argument("--ntot-min", type=float, default=1.0)
    c.add_argument("--ntot-max", type=float, default=100.0)
    c.add_argument("--points", type=int, default=200)
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--out", help="output path (default: stdout)")
    c.set_defaults(func=cmd_curves)

    v = sub.add_parser("verify", help="run oracle-equivalence suites")
    v.add_argument("--suite", choices=list(verify.SUITE_NAMES) + ["all"], default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help="override one tolerance (repeatable)")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PhaseBoundsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
