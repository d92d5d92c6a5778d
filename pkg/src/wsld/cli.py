"""Command-line interface.

Subcommands map onto the library one to one:

* ``coeffs``      -- emit a coefficient series as ``k,l_k`` CSV
* ``operator``    -- emit an operator matrix (or its phi series) as CSV
* ``symbol``      -- sample the shifted-operator symbol along ``z = -it``
* ``spectra``     -- negative-definiteness scan or dense eigenvalue probe
* ``solve``       -- run a steady or diffusion problem from a JSON config
* ``convergence`` -- run a benchmark suite and check it against references

Exit codes: 0 all checks pass, 1 numeric check failure, 2 configuration error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from . import benchmarks, solver, spectral
from .coefficients import lubich_coeffs, lubich_coeffs_oracle
from .operators import (
    DEFAULT_SHIFTS,
    ShiftTuple,
    assemble_left,
    assemble_right,
    wsld_scheme,
)

CONFIG_ERROR = 2
NUMERIC_FAILURE = 1


def _parse_shifts(text: str) -> tuple[int, ...]:
    parts = tuple(int(v) for v in text.replace(" ", "").split(","))
    if len(parts) not in (1, 2, 4, 8):
        raise argparse.ArgumentTypeError("shifts must contain 1, 2, 4 or 8 integers")
    return parts


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_coeffs(args: argparse.Namespace) -> int:
    if args.oracle:
        values = lubich_coeffs_oracle(args.nu, args.alpha, args.count)
    else:
        values = lubich_coeffs(args.nu, args.alpha, args.count)
    lines = ["k,l_k"]
    lines += [f"{k},{v:.16e}" for k, v in enumerate(values)]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_operator(args: argparse.Namespace) -> int:
    scheme = wsld_scheme(args.nu, args.alpha, shifts=args.shifts)
    if args.phi:
        phi = scheme.phi(args.n + scheme.m)
        lines = ["k,phi_k"] + [f"{k},{v:.16e}" for k, v in enumerate(phi)]
        _write("\n".join(lines) + "\n", args.out)
        return 0
    build = assemble_right if args.side == "right" else assemble_left
    matrix = build(scheme, args.n).values
    lines = [",".join(f"{v:.16e}" for v in row) for row in matrix]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_symbol(args: argparse.Namespace) -> int:
    try:
        t_min, t_max, count = args.z_range.split(",")
        t = np.geomspace(float(t_min), float(t_max), int(count))
    except ValueError:
        print("--z-range expects 'tmin,tmax,count'", file=sys.stderr)
        return CONFIG_ERROR
    w = spectral.symbol(args.nu, args.alpha, args.p, -1j * t)
    dev = np.abs(spectral.symbol_deviation(args.nu, args.alpha, args.p, -1j * t))
    lines = ["t,w_re,w_im,deviation"]
    lines += [
        f"{ti:.9e},{wi.real:.16e},{wi.imag:.16e},{di:.16e}"
        for ti, wi, di in zip(t, w, dev)
    ]
    _write("\n".join(lines) + "\n", args.out)
    return 0


def _cmd_spectra(args: argparse.Namespace) -> int:
    shifts = args.shifts if args.shifts is not None else DEFAULT_SHIFTS.as_tuple()
    if args.eigen:
        if args.alpha is None:
            print("--eigen needs --alpha", file=sys.stderr)
            return CONFIG_ERROR
        scheme = wsld_scheme(args.nu, args.alpha, shifts=shifts)
        probe = spectral.eigen_probe(assemble_left(scheme, args.n))
        _write(
            "lambda_min,lambda_max\n"
            f"{probe.lambda_min:.16e},{probe.lambda_max:.16e}\n",
            args.out,
        )
        return 0 if probe.lambda_max < 0 else NUMERIC_FAILURE
    # scan mode: (alpha, x, f) triples over the default grids
    alphas = spectral.default_alpha_grid() if args.alpha is None else [args.alpha]
    x = spectral.default_x_grid()
    scan_shifts = shifts[0] if len(shifts) == 1 else ShiftTuple(*shifts)
    lines = ["alpha,x,f"]
    for a in alphas:
        if isinstance(scan_shifts, int):
            values = spectral.scheme_symmetric_genfn(
                wsld_scheme(args.nu, a, shifts=scan_shifts), x)
        else:
            values = spectral.gen_fn_combined(args.nu, a, scan_shifts, x)
        lines += [f"{a:.4f},{xi:.9e},{vi:.9e}" for xi, vi in zip(x, values)]
    _write("\n".join(lines) + "\n", args.out)
    report = spectral.definiteness_scan(args.nu, scan_shifts,
                                        alpha_grid=np.asarray(alphas))
    print(
        f"max f = {report.max_value:.3e} at alpha={report.argmax_alpha:.4f}, "
        f"x={report.argmax_x:.6f}: {'PASS' if report.passed else 'FAIL'}",
        file=sys.stderr,
    )
    return 0 if report.passed else NUMERIC_FAILURE


def _steady_csv(alpha: float, nx: int) -> str:
    grid = solver.Grid1D(0.0, 1.0, nx)
    bc = (0.0, 1.0) if 1.0 < alpha < 2.0 else None
    u = solver.solve_steady(5, 0, alpha, solver.table1_source(alpha), grid, bc=bc)
    x = grid.nodes()
    exact = solver.table1_exact(x)
    lines = ["x,u,exact,error"]
    lines += [
        f"{xi:.9e},{ui:.16e},{ei:.16e},{abs(ui - ei):.9e}"
        for xi, ui, ei in zip(x, u, exact)
    ]
    return "\n".join(lines) + "\n"


def _cmd_solve(args: argparse.Namespace) -> int:
    try:
        with open(args.config, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    try:
        kind = cfg.get("problem", "custom")
        alpha = float(cfg["alpha"])
        if kind == "table1":
            text = _steady_csv(alpha, int(cfg.get("Nx", 10)))
            _write(text, args.csv)
            return 0
        if kind == "table2":
            problem = solver.table2_problem(alpha, nx=int(cfg.get("Nx", 20)),
                                            nt=cfg.get("Nt"))
            exact = solver.table2_exact
        elif kind == "custom":
            grid = solver.Grid1D(float(cfg["xL"]), float(cfg["xR"]), int(cfg["Nx"]))
            d_plus = solver.expression(cfg["d_plus"], alpha)
            d_minus_cfg = cfg["d_minus"]
            kappa = None
            if isinstance(d_minus_cfg, (int, float)):
                kappa = float(d_minus_cfg)
                d_minus = (lambda dp, k: (lambda x: k * dp(x)))(d_plus, kappa)
            else:
                d_minus = solver.expression(d_minus_cfg, alpha)
            problem = solver.DiffusionProblem(
                alpha=alpha,
                grid=grid,
                d_plus=d_plus,
                d_minus=d_minus,
                source=solver.expression(cfg.get("source", "zero_source"), alpha),
                initial=solver.expression(cfg.get("initial", "zero"), alpha),
                horizon=float(cfg.get("T", 1.0)),
                nt=int(cfg["Nt"]),
                kappa=kappa,
            )
            exact = None
        else:
            print(f"unknown problem kind {kind!r}", file=sys.stderr)
            return CONFIG_ERROR
    except (KeyError, TypeError, ValueError) as exc:
        print(f"bad config: {exc}", file=sys.stderr)
        return CONFIG_ERROR
    shifts = args.shifts if args.shifts is not None else DEFAULT_SHIFTS.as_tuple()
    scheme = wsld_scheme(args.nu, alpha, shifts=shifts)
    try:
        result = solver.cn_solve(problem, scheme, exact=exact)
    except RuntimeError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return NUMERIC_FAILURE
    x = problem.grid.nodes()
    if exact is not None:
        ex = exact(x, problem.horizon)
        lines = ["x,u,exact,error"]
        lines += [
            f"{xi:.9e},{ui:.16e},{ei:.16e},{abs(ui - ei):.9e}"
            for xi, ui, ei in zip(x, result.u, ex)
        ]
    else:
        lines = ["x,u"] + [f"{xi:.9e},{ui:.16e}" for xi, ui in zip(x, result.u)]
    _write("\n".join(lines) + "\n", args.csv)
    if result.max_error is not None:
        print(f"max error at t={result.t}: {result.max_error:.4e}", file=sys.stderr)
    return 0


def _check_table1(reports) -> list[str]:
    failures = []
    for report in reports:
        alpha = report.metadata["alpha"]
        reference = benchmarks.TABLE1_REFERENCE.get(alpha)
        if reference is None or len(reference) != len(report.errors):
            continue
        if alpha in (-0.5, 0.5):
            failures += [f"alpha={alpha}: {msg}" for msg in
                         benchmarks.compare_to_reference(report, reference,
                                                         rtol=0.02, rate_tol=0.15)]
        else:
            order = report.regression_order()
            if order < 4.0:
                failures.append(f"alpha={alpha}: observed order {order:.3f} < 4.0")
    return failures


def _check_table2(reports) -> list[str]:
    failures = []
    for report in reports:
        key = (report.metadata["nu"], report.metadata["alpha"])
        reference = benchmarks.TABLE2_REFERENCE.get(key)
        if reference is None or len(reference) != len(report.errors):
            continue
        failures += [f"nu={key[0]} alpha={key[1]}: {msg}" for msg in
                     benchmarks.compare_to_reference(report, reference,
                                                     rtol=0.05, rate_tol=0.2)]
    return failures


def _check_consistency(reports) -> list[str]:
    failures = []
    for report in reports:
        level = report.metadata["level"]
        rate = report.rates()[-1]
        if abs(rate - level) > 0.3:
            failures.append(
                f"nu={report.metadata['nu']} level={level}: finest observed "
                f"order {rate:.3f} outside {level}±0.3"
            )
    return failures


def _cmd_convergence(args: argparse.Namespace) -> int:
    if args.suite == "table1":
        reports = benchmarks.run_table1()
        failures = _check_table1(reports)
    elif args.suite == "table2":
        reports = benchmarks.run_table2()
        failures = _check_table2(reports)
    else:
        reports = benchmarks.run_consistency()
        failures = _check_consistency(reports)
    if args.json:
        payload = {
            "suite": args.suite,
            "reports": [
                {
                    "metadata": r.metadata,
                    "rows": [
                        {"h": h, "error": e, "rate": rate}
                        for h, e, rate in zip(r.hs, r.errors, [None] + r.rates())
                    ],
                }
                for r in reports
            ],
            "passed": not failures,
            "failures": failures,
        }
        _write(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.out)
    else:
        _write("".join(r.to_csv() for r in reports), args.out)
    for message in failures:
        print(f"FAIL {message}", file=sys.stderr)
    print(f"{args.suite}: {'PASS' if not failures else 'FAIL'}", file=sys.stderr)
    return 0 if not failures else NUMERIC_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wsld",
        description="WSLD operators for Riemann-Liouville fractional derivatives",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="emit a coefficient series as CSV")
    p.add_argument("--nu", type=int, required=True, choices=(1, 2, 3, 4, 5))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--count", type=int, required=True, metavar="K",
                   help="highest index; emits k = 0..K")
    p.add_argument("--oracle", action="store_true",
                   help="use the root-factorization convolution path")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("operator", help="emit an operator matrix or phi series")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--shifts", type=_parse_shifts, default=None,
                   help="1, 2, 4 or 8 comma-separated shifts (default: stable tuple)")
    p.add_argument("--n", type=int, required=True, help="grid intervals N_x")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--phi", action="store_true", help="emit phi series instead")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_operator)

    p = sub.add_parser("symbol", help="sample the shifted symbol along z = -it")
    p.add_argument("--nu", type=int, required=True, choices=(1, 2, 3, 4, 5))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--p", type=int, required=True, help="shift")
    p.add_argument("--z-range", default="1e-3,1e-1,20",
                   help="tmin,tmax,count (log-spaced)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_symbol)

    p = sub.add_parser("spectra", help="definiteness scan or eigenvalue probe")
    p.add_argument("--nu", type=int, required=True, choices=(3, 4))
    p.add_argument("--shifts", type=_parse_shifts, default=None)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--scan", action="store_true", default=True)
    mode.add_argument("--eigen", action="store_true")
    p.add_argument("--n", type=int, default=128, help="matrix size for --eigen")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_spectra)

    p = sub.add_parser("solve", help="run a problem described by a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--nu", type=int, default=4, choices=(3, 4))
    p.add_argument("--shifts", type=_parse_shifts, default=None)
    p.add_argument("--csv", default=None, help="output path (default stdout)")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("convergence", help="run a benchmark suite")
    p.add_argument("--suite", required=True,
                   choices=("table1", "table2", "consistency"))
    p.add_argument("--out", default=None)
    p.add_argument("--json", action="store_true", help="structured report")
    p.set_defaults(func=_cmd_convergence)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
