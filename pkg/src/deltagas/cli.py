"""Command-line front end: solves, sweeps, verification reports, tables.

Exit codes: 0 on success (including all verification windows passing),
1 on numerical failure or a failed verification window, 2 on usage
errors.  Output is CSV (default) or JSON; CSV floats carry 17
significant digits so runs diff cleanly, and JSON floats use the exact
shortest round-trip form.

Range arguments: sweeps take START:STOP:COUNT and are log-spaced
(asymptotics live on log scales); the factor grid takes START:STOP:STEP
and is linear.
"""

import argparse
import csv
import json
import sys

import numpy as np

from .fredholm import (
    Statistics,
    charge_Q,
    energy,
    energy_total,
    gamma_from_solution,
    solve_for_gamma,
    solve_love,
)
from .hankel import neumann_solve
from .verify import SUITES, all_suites
from .wiener_hopf import hankel_kernel_k, s1_kernel, sigma_minus, sigma_plus, symbol

__all__ = ["main"]

SOLVE_COLUMNS = [
    "stat", "kappa", "gamma", "r", "n", "m0", "m2", "Q", "epsilon",
    "epsilon_total",
]
VERIFY_COLUMNS = ["quantity", "x", "numeric", "series", "residual"]
FACTOR_COLUMNS = [
    "xi", "sigma", "sigma_plus_re", "sigma_plus_im", "sigma_minus_re",
    "sigma_minus_im", "residual",
]
KERNEL_COLUMNS = ["x", "k", "x2_k", "s1", "x2_s1"]
HANKEL_COLUMNS = ["r", "order", "term", "h0", "fhat0"]

_FACTOR_RESIDUAL_LIMIT = 1e-10


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def _parse_geom_range(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("expected START:STOP:COUNT, got %r" % (text,))
    start, stop = float(parts[0]), float(parts[1])
    count = int(parts[2])
    if not (start > 0 and stop > 0):
        raise ValueError("log-spaced range needs positive endpoints: %r" % (text,))
    if count < 1:
        raise ValueError("range count must be at least 1: %r" % (text,))
    return np.geomspace(start, stop, count)


def _parse_step_range(text: str) -> np.ndarray:
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError("expected START:STOP:STEP, got %r" % (text,))
    start, stop, step = (float(p) for p in parts)
    if not (step > 0 and stop >= start):
        raise ValueError("need STOP >= START and STEP > 0: %r" % (text,))
    return np.arange(start, stop + 0.5 * step, step)


def _solve_row(stat: Statistics, n: int, kappa=None, gamma=None) -> dict:
    if gamma is not None:
        sol = solve_for_gamma(stat, gamma, n)
    else:
        sol = solve_love(stat, kappa, n)
    return {
        "stat": stat.value,
        "kappa": sol.params.kappa,
        "gamma": gamma_from_solution(sol),
        "r": sol.params.r,
        "n": int(n),
        "m0": sol.m0,
        "m2": sol.m2,
        "Q": charge_Q(sol) if stat is Statistics.FERMI else None,
        "epsilon": energy(sol),
        "epsilon_total": energy_total(sol),
    }


def _one_of(parser, pairs):
    supplied = [(name, value) for name, value in pairs if value is not None]
    if len(supplied) != 1:
        parser.error(
            "exactly one of %s is required"
            % ", ".join("--" + name for name, _ in pairs)
        )
    return supplied[0]


def _run_solve(args, parser):
    stat = Statistics(args.stat)
    key, value = _one_of(
        parser, [("kappa", args.kappa), ("gamma", args.gamma), ("r", args.r)]
    )
    if key == "gamma":
        row = _solve_row(stat, args.n, gamma=value)
    else:
        kappa = value if key == "kappa" else 2.0 / value
        row = _solve_row(stat, args.n, kappa=kappa)
    lines = [[row[c] for c in SOLVE_COLUMNS]]
    return 0, SOLVE_COLUMNS, lines, row


def _run_sweep(args, parser):
    stat = Statistics(args.stat)
    key, text = _one_of(
        parser,
        [
            ("kappa-range", args.kappa_range),
            ("gamma-range", args.gamma_range),
            ("r-range", args.r_range),
        ],
    )
    values = _parse_geom_range(text)
    rows = []
    for value in values:
        if key == "gamma-range":
            rows.append(_solve_row(stat, args.n, gamma=float(value)))
        elif key == "r-range":
            rows.append(_solve_row(stat, args.n, kappa=2.0 / float(value)))
        else:
            rows.append(_solve_row(stat, args.n, kappa=float(value)))
    lines = [[row[c] for c in SOLVE_COLUMNS] for row in rows]
    return 0, SOLVE_COLUMNS, lines, rows


def _run_verify(args, parser):
    if args.suite == "all":
        reports = all_suites(args.n)
    else:
        reports = [SUITES[args.suite](args.n)]
    lines = []
    for report in reports:
        prefix = report["suite"] + ":" if len(reports) > 1 else ""
        for row in report["rows"]:
            lines.append(
                [prefix + row["quantity"]]
                + [row[c] for c in VERIFY_COLUMNS[1:]]
            )
        fit = report["fit"]
        lines.append(["fit_order", fit["slope"], fit["stderr"]])
    status = 0 if all(report["pass"] for report in reports) else 1
    obj = reports[0] if len(reports) == 1 else reports
    return status, VERIFY_COLUMNS, lines, obj


def _run_factor(args, parser):
    xis = _parse_step_range(args.xi_grid)
    rows = []
    worst = 0.0
    for xi in xis:
        xi = float(xi)
        s = symbol(xi)
        sp = sigma_plus(xi)
        sm = sigma_minus(xi)
        residual = abs(sp * sm - s)
        worst = max(worst, residual)
        rows.append(
            {
                "xi": xi,
                "sigma": float(s),
                "sigma_plus_re": sp.real,
                "sigma_plus_im": sp.imag,
                "sigma_minus_re": sm.real,
                "sigma_minus_im": sm.imag,
                "residual": residual,
            }
        )
    status = 0 if worst <= _FACTOR_RESIDUAL_LIMIT else 1
    lines = [[row[c] for c in FACTOR_COLUMNS] for row in rows]
    return status, FACTOR_COLUMNS, lines, rows


def _run_kernel(args, parser):
    xs = _parse_geom_range(args.x_grid)
    rows = []
    for x in xs:
        x = float(x)
        k = float(hankel_kernel_k(x))
        s1 = float(s1_kernel(x))
        rows.append(
            {"x": x, "k": k, "x2_k": x * x * k, "s1": s1, "x2_s1": x * x * s1}
        )
    lines = [[row[c] for c in KERNEL_COLUMNS] for row in rows]
    return 0, KERNEL_COLUMNS, lines, rows


def _run_hankel(args, parser):
    key, value = _one_of(parser, [("r", args.r), ("kappa", args.kappa)])
    r = value if key == "r" else 2.0 / value
    result = neumann_solve(r, args.order)
    rows = []
    for j in range(args.order + 1):
        h0 = float(sum(result.per_order[:j]))
        rows.append(
            {
                "r": r,
                "order": j,
                "term": result.per_order[j - 1] if j >= 1 else None,
                "h0": h0,
                "fhat0": r + 2.0 * h0,
            }
        )
    lines = [[row[c] for c in HANKEL_COLUMNS] for row in rows]
    return 0, HANKEL_COLUMNS, lines, rows


_DISPATCH = {
    "solve": _run_solve,
    "sweep": _run_sweep,
    "verify": _run_verify,
    "factor": _run_factor,
    "kernel": _run_kernel,
    "hankel": _run_hankel,
}


def _add_output_options(sp):
    sp.add_argument(
        "--format", choices=("csv", "json"), default="csv",
        help="output format (default csv)",
    )
    sp.add_argument(
        "--out", metavar="PATH", default=None,
        help="write to PATH instead of stdout",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="deltagas",
        description="Ground-state integral-equation solver for the "
        "one-dimensional delta-interaction gas.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser(
        "solve", help="solve at one coupling and print the derived quantities"
    )
    solve.add_argument("--stat", choices=("fermi", "bose"), required=True)
    solve.add_argument("--kappa", type=float, help="kernel width")
    solve.add_argument("--gamma", type=float, help="physical coupling")
    solve.add_argument("--r", type=float, help="rescaled length 2/kappa")
    solve.add_argument("--n", type=int, default=800, help="grid size")
    _add_output_options(solve)

    sweep = sub.add_parser("sweep", help="solve over a log-spaced range")
    sweep.add_argument("--stat", choices=("fermi", "bose"), required=True)
    sweep.add_argument("--kappa-range", metavar="START:STOP:COUNT")
    sweep.add_argument("--gamma-range", metavar="START:STOP:COUNT")
    sweep.add_argument("--r-range", metavar="START:STOP:COUNT")
    sweep.add_argument("--n", type=int, default=800, help="grid size")
    _add_output_options(sweep)

    verify = sub.add_parser(
        "verify", help="residual sweeps against the asymptotic series"
    )
    verify.add_argument(
        "--suite",
        choices=("charge", "energy", "fint", "cross", "all"),
        default="all",
    )
    verify.add_argument("--n", type=int, default=800, help="grid size")
    _add_output_options(verify)

    factor = sub.add_parser(
        "factor", help="tabulate the symbol and its factorisation"
    )
    factor.add_argument(
        "--xi-grid", metavar="START:STOP:STEP", default="-10:10:0.5"
    )
    _add_output_options(factor)

    kernel = sub.add_parser(
        "kernel", help="tabulate the half-line kernels with x^2 scaling"
    )
    kernel.add_argument(
        "--x-grid", metavar="START:STOP:COUNT", default="1:50:25",
        help="log-spaced x values",
    )
    _add_output_options(kernel)

    hankel = sub.add_parser(
        "hankel", help="Neumann-series charge data per truncation order"
    )
    hankel.add_argument("--r", type=float, help="half-line offset")
    hankel.add_argument("--kappa", type=float, help="alternative to --r")
    hankel.add_argument("--order", type=int, default=3)
    _add_output_options(hankel)

    return parser


def _merge_dash_values(argv):
    """Join '--xi-grid -10:...' into one token so argparse accepts it."""
    merged = []
    skip = False
    for i, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token == "--xi-grid" and i + 1 < len(argv):
            merged.append(token + "=" + argv[i + 1])
            skip = True
        else:
            merged.append(token)
    return merged


def _emit(args, header, lines, obj):
    if args.out is not None:
        fh = open(args.out, "w")
        close = True
    else:
        fh = sys.stdout
        close = False
    try:
        if args.format == "json":
            json.dump(obj, fh, indent=2)
            fh.write("\n")
        else:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for line in lines:
                writer.writerow([_fmt(v) for v in line])
    finally:
        if close:
            fh.close()


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    parser = _build_parser()
    args = parser.parse_args(_merge_dash_values(list(argv)))
    try:
        status, header, lines, obj = _DISPATCH[args.command](args, parser)
    except ValueError as exc:
        print("deltagas: %s" % (exc,), file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print("deltagas: %s" % (exc,), file=sys.stderr)
        return 1
    _emit(args, header, lines, obj)
    return status


if __name__ == "__main__":
    sys.exit(main())
