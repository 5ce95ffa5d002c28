"""``kerrscope`` command line.

Frequencies on the command line are in units of alpha (``--alpha`` sets the
absolute scale, default 1). CSV axes and the reported ``alpha_hat`` are in
absolute units, so they coincide with the alpha-scaled values when
``--alpha 1``.

Exit codes: 0 success, 1 bad arguments or I/O failure, 2 solver did not
converge, 3 too few peaks to estimate alpha.
"""
from __future__ import annotations

import argparse
import io
import math
import sys
import warnings

import numpy as np

from . import __version__
from .analytic import ValidityWarning
from .lindblad import FockConfig, SolverError
from .model import ModelParams, NonlinearSign
from .sweep import (DEFAULT_PROMINENCE, Engine, Grid, InsufficientPeaksError, SweepResult,
                    detect_peaks, estimate_alpha, evaluate_point, sweep_detuning, sweep_drive)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_ESTIMATOR = 3

CSV_HEADER = "axis,mean_n,g2,phi_plus,phi_minus,engine"
COMPARE_HEADER = ("axis,mean_n_analytic,g2_analytic,mean_n_numeric,g2_numeric,"
                  "phi_plus,phi_minus,abs_diff_mean_n")

SUBCOMMANDS = ("point", "sweep-detuning", "sweep-drive", "estimate-alpha", "compare")
DEFAULT_GRIDS = {
    "sweep-detuning": (-7.0, 1.0, 1601),
    "estimate-alpha": (-7.0, 1.0, 1601),
    "compare": (-7.0, 1.0, 801),
    "sweep-drive": (0.0, 0.3, 301),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(value) -> str:
    if value is None:
        return ""
    value = float(value)
    if math.isnan(value):
        return ""
    return format(value, ".17g")


def write_csv(result: SweepResult, destination, header: bool = True) -> int:
    """Write ``result`` as CSV rows; fidelity and undefined g2 cells stay empty."""
    lines = [CSV_HEADER] if header else []
    for axis, mean_n, g2, phi_plus, phi_minus in result.rows():
        lines.append(",".join([_fmt(axis), _fmt(mean_n), _fmt(g2), _fmt(phi_plus),
                               _fmt(phi_minus), result.engine.value]))
    destination.write("".join(line + "\n" for line in lines))
    return len(result)


def write_compare_csv(analytic_res: SweepResult, numeric_res: SweepResult, destination) -> float:
    """Side-by-side engine columns; returns the maximum absolute mean_n difference."""
    diff = np.abs(analytic_res.mean_n - numeric_res.mean_n)
    lines = [COMPARE_HEADER]
    for i, x in enumerate(analytic_res.axis):
        lines.append(",".join(_fmt(v) for v in (
            x, analytic_res.mean_n[i], analytic_res.g2[i], numeric_res.mean_n[i],
            numeric_res.g2[i], numeric_res.phi_plus[i], numeric_res.phi_minus[i], diff[i])))
    destination.write("".join(line + "\n" for line in lines))
    return float(diff.max())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kerrscope", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("subcommand", choices=SUBCOMMANDS)
    parser.add_argument("--alpha", type=float, default=1.0,
                        help="Kerr coefficient, sets the unit of every other frequency")
    drive = parser.add_mutually_exclusive_group()
    drive.add_argument("--omega", type=float, help="scaled drive epsilon/sqrt(2s) (default 0.06)")
    drive.add_argument("--epsilon", type=float, help="drive amplitude")
    damping = parser.add_mutually_exclusive_group()
    damping.add_argument("--gamma", type=float, help="scaled decay kappa/2s (default 1e-3)")
    damping.add_argument("--kappa", type=float, help="decay rate (photon loss 2 kappa)")
    parser.add_argument("--two-s", type=int, default=50)
    parser.add_argument("--delta", type=float, default=0.0)
    parser.add_argument("--sign", choices=("attractive", "repulsive"), default="attractive")
    parser.add_argument("--engine", choices=("analytic", "numeric", "both"), default="analytic")
    parser.add_argument("--min", type=float, dest="grid_min")
    parser.add_argument("--max", type=float, dest="grid_max")
    parser.add_argument("--steps", type=int)
    parser.add_argument("--fock-dim", type=int, default=20)
    parser.add_argument("--tail-tol", type=float, default=1e-10)
    parser.add_argument("--prominence", type=float, default=DEFAULT_PROMINENCE)
    parser.add_argument("--out", default="-", help="output file, '-' for stdout")
    return parser


def _model_params(args) -> ModelParams:
    if args.two_s < 1:
        raise UsageError("--two-s must be a positive integer")
    a = args.alpha
    root = math.sqrt(args.two_s)
    if args.epsilon is not None:
        epsilon = args.epsilon * a
    else:
        epsilon = (0.06 if args.omega is None else args.omega) * a * root
    if args.kappa is not None:
        kappa = args.kappa * a
    else:
        kappa = (1e-3 if args.gamma is None else args.gamma) * a * args.two_s
    return ModelParams(delta=args.delta * a, alpha=a, epsilon=epsilon, kappa=kappa,
                       sign=NonlinearSign.parse(args.sign))


def _grid(args) -> Grid:
    lo, hi, steps = DEFAULT_GRIDS[args.subcommand]
    lo = lo if args.grid_min is None else args.grid_min
    hi = hi if args.grid_max is None else args.grid_max
    steps = steps if args.steps is None else args.steps
    # the drive axis is omega, also given in units of alpha
    return Grid(lo * args.alpha, hi * args.alpha, steps)


def _engines(args) -> list[Engine]:
    if args.engine == "both":
        return [Engine.ANALYTIC, Engine.NUMERIC]
    return [Engine(args.engine)]


def _execute(args, out: io.StringIO) -> list[str]:
    params = _model_params(args)
    cfg = FockConfig(dim=args.fock_dim, tail_tol=args.tail_tol,
                     max_dim=max(80, args.fock_dim))
    summary = [f"subcommand={args.subcommand}"]

    if args.subcommand == "point":
        for k, engine in enumerate(_engines(args)):
            mean_n, g2, pp, pm = evaluate_point(params, engine, args.two_s, cfg)
            fid = {}
            if engine is Engine.NUMERIC:
                fid = dict(phi_plus=np.array([pp]), phi_minus=np.array([pm]))
            res = SweepResult("delta", np.array([params.delta]), np.array([mean_n]),
                              np.array([g2]), engine, **fid)
            write_csv(res, out, header=k == 0)
        return summary

    grid = _grid(args)
    if args.subcommand == "compare":
        res_a = sweep_detuning(params, grid, Engine.ANALYTIC, cfg, args.two_s)
        res_n = sweep_detuning(params, grid, Engine.NUMERIC, cfg, args.two_s)
        worst = write_compare_csv(res_a, res_n, out)
        summary.append(f"max_abs_diff_mean_n={_fmt(worst)}")
        return summary

    if args.subcommand == "estimate-alpha":
        if args.engine == "both":
            raise UsageError("estimate-alpha needs a single engine")
        if not args.prominence > 0:
            raise UsageError("--prominence must be positive")
        res = sweep_detuning(params, grid, Engine(args.engine), cfg, args.two_s)
        est = estimate_alpha(detect_peaks(res, args.prominence))
        write_csv(res, out)
        summary += [
            "peaks=" + " ".join(_fmt(p) for p in est.peak_positions),
            "spacings=" + " ".join(_fmt(s) for s in est.spacings),
            f"alpha_hat={_fmt(est.alpha_hat)}",
            f"spread={_fmt(est.spread)}",
        ]
        return summary

    sweeper = sweep_detuning if args.subcommand == "sweep-detuning" else sweep_drive
    for k, engine in enumerate(_engines(args)):
        res = sweeper(params, grid, engine, cfg, args.two_s)
        write_csv(res, out, header=k == 0)
    return summary


def main(argv=None) -> int:
    """Run one ``kerrscope`` invocation and return its exit code."""
    out = io.StringIO()
    try:
        args = build_parser().parse_args(argv)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", ValidityWarning)
            summary = _execute(args, out)
        n_warn = sum(issubclass(w.category, ValidityWarning) for w in caught)
        if n_warn:
            summary.append(f"validity_warnings={n_warn}")
        out.write("".join(f"# {line}\n" for line in summary))
        text = out.getvalue()
        if args.out == "-":
            sys.stdout.write(text)
        else:
            with open(args.out, "w", newline="\n") as fh:
                fh.write(text)
    except (UsageError, ValueError, OSError) as exc:
        code = EXIT_ESTIMATOR if isinstance(exc, InsufficientPeaksError) else EXIT_USAGE
        print(f"kerrscope: error: {_one_line(exc)}", file=sys.stderr)
        return code
    except (SolverError, ArithmeticError) as exc:
        print(f"kerrscope: solver error: {_one_line(exc)}", file=sys.stderr)
        return EXIT_SOLVER
    return EXIT_OK


def _one_line(exc) -> str:
    return " ".join(str(exc).split())


if __name__ == "__main__":
    sys.exit(main())
