"""Command-line front end: violation tables, verification suite, fit, limit, coefficients.

Data goes to stdout or ``--out``; progress and warnings go to stderr. Exit
codes: 0 success, 1 verification failure, 2 usage/input error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

import numpy as np

from .analysis import (
    app_state,
    bell_value_schmidt,
    fit_power_law,
    mes_bell_limit,
    mes_bell_value,
    mes_state,
)
from .core import GeneralState, SchmidtState, optimal_settings
from .operator import (
    ReducedBellOperator,
    extract_first_block,
    full_bell_matrix,
    reduced_bell_coefficients,
    reduced_bell_coefficients_sine_sum,
)
from .probability import bell_value_probabilistic
from .spectral import ConvergenceError, dense_max_eigenpair, max_eigenpair

TABLE_HEADER = "d,i_eig,i_app,i_mes,residual,iterations,wall_ms"
DEFAULT_EIG_BUDGET = 100_000
VERIFY_MAX_D = 64
VERIFY_STATES_PER_D = 5


@dataclass
class TableRow:
    d: int
    i_eig: float | None
    i_app: float
    i_mes: float
    residual: float | None
    iterations: int | None
    wall_ms: float


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{value:.10g}"


def _warn(message: str) -> None:
    print(message, file=sys.stderr)


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="ascii"), True


def _write_lines(path: str | None, lines: list[str]) -> None:
    stream, owned = _open_out(path)
    try:
        for line in lines:
            stream.write(line + "\n")
    finally:
        if owned:
            stream.close()


def compute_table_row(d: int, tol: float, max_iter: int, eig_budget: int) -> TableRow:
    """One table row: eigensolve (within budget) plus closed-form state values."""
    start = time.perf_counter()
    op = reduced_bell_coefficients(d)
    i_app = bell_value_schmidt(app_state(d), op)
    i_mes = mes_bell_value(d)
    i_eig = residual = iterations = None
    if d <= eig_budget:
        try:
            result = max_eigenpair(op, tol=tol, max_iter=max_iter)
        except ConvergenceError as exc:
            _warn(f"d={d}: eigensolver did not converge ({exc}); best iterate kept")
            result = exc.best
        i_eig = result.eigenvalue
        residual = result.residual
        iterations = result.iterations
    wall_ms = (time.perf_counter() - start) * 1000.0
    return TableRow(d, i_eig, i_app, i_mes, residual, iterations, wall_ms)


def cmd_table(args) -> int:
    dims = sorted(set(args.d))
    for d in dims:
        if d < 2:
            _warn(f"dimension must be >= 2, got {d}")
            return 2
    lines = [TABLE_HEADER]
    for d in dims:
        row = compute_table_row(d, args.tol, args.max_iter, args.eig_budget)
        lines.append(
            ",".join(
                [
                    str(row.d),
                    _fmt(row.i_eig),
                    _fmt(row.i_app),
                    _fmt(row.i_mes),
                    _fmt(row.residual),
                    _fmt(row.iterations),
                    _fmt(row.wall_ms),
                ]
            )
        )
        _warn(f"d={d} done")
    _write_lines(args.out, lines)
    return 0


def _verify_checks(d_max: int, inject_fault: bool):
    """Yield (name, max deviation, tolerance) for each cross-route invariant."""
    dims = range(2, d_max + 1)

    dev = 0.0
    for d in dims:
        op = reduced_bell_coefficients(d)
        if inject_fault:
            bad = op.coeffs.copy()
            bad[1] *= 1.0 + 1e-6
            op = ReducedBellOperator(d, bad)
        settings = optimal_settings(d)
        rng = np.random.default_rng(9000 + d)
        for _ in range(VERIFY_STATES_PER_D):
            v = rng.random(d) + 1e-3
            state = SchmidtState(d, v / np.linalg.norm(v))
            via_op = bell_value_schmidt(state, op)
            via_prob = bell_value_probabilistic(GeneralState.from_schmidt(state), settings)
            dev = max(dev, abs(via_op - via_prob))
    yield "route-equivalence (operator vs probability)", dev, 1e-9

    dev = 0.0
    for d in range(2, min(d_max, 16) + 1):
        block = extract_first_block(full_bell_matrix(d)).coeffs
        dev = max(dev, np.abs(block - reduced_bell_coefficients(d).coeffs).max())
    yield "block-extraction (full matrix vs closed form)", dev, 1e-10

    dev = 0.0
    for d in list(dims) + [128, 256]:
        closed = reduced_bell_coefficients(d).coeffs
        sine = reduced_bell_coefficients_sine_sum(d).coeffs
        dev = max(dev, np.abs(closed - sine).max())
    yield "coefficient-forms (sine sum vs closed form)", dev, 1e-12

    dev = 0.0
    for d in list(dims) + [512, 4096]:
        op = reduced_bell_coefficients(d)
        dev = max(dev, abs(bell_value_schmidt(mes_state(d), op) - mes_bell_value(d)))
    yield "mes-consistency (contraction vs closed form)", dev, 1e-9

    dev = 0.0
    for d in list(dims) + [128, 512]:
        op = reduced_bell_coefficients(d)
        dev = max(dev, abs(max_eigenpair(op).eigenvalue - dense_max_eigenpair(op).eigenvalue))
    yield "eigensolver (Lanczos vs dense)", dev, 1e-8

    dev = 0.0
    for d in range(2, min(d_max, 16) + 1):
        full = full_bell_matrix(d)
        dev = max(dev, np.abs(full.entries - full.entries.conj().T).max())
    yield "hermiticity (full matrix)", dev, 1e-10


def cmd_verify(args) -> int:
    if args.d_max > VERIFY_MAX_D:
        _warn(f"--d-max must be <= {VERIFY_MAX_D}, got {args.d_max}")
        return 2
    if args.d_max < 2:
        _warn(f"--d-max must be >= 2, got {args.d_max}")
        return 2
    failed = []
    for name, dev, tol in _verify_checks(args.d_max, args.inject_fault):
        status = "ok" if dev <= tol else "FAIL"
        print(f"{status:4s} {name}: max deviation {dev:.3e} (tolerance {tol:g})")
        if dev > tol:
            failed.append(name)
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return 1
    print("all checks passed")
    return 0


def _read_fit_points(path: str) -> list[tuple[float, float]]:
    points = []
    with open(path, "r", encoding="ascii") as stream:
        header = stream.readline()
        if not header:
            raise ValueError(f"{path}:1: empty file")
        columns = [c.strip() for c in header.rstrip("\n").split(",")]
        try:
            d_idx, eig_idx = columns.index("d"), columns.index("i_eig")
        except ValueError:
            raise ValueError(f"{path}:1: header must contain 'd' and 'i_eig' columns") from None
        for lineno, line in enumerate(stream, start=2):
            line = line.rstrip("\n")
            if not line:
                continue
            fields = line.split(",")
            if len(fields) != len(columns):
                raise ValueError(f"{path}:{lineno}: expected {len(columns)} fields, got {len(fields)}")
            if fields[eig_idx] == "":
                continue
            try:
                points.append((float(fields[d_idx]), float(fields[eig_idx])))
            except ValueError:
                raise ValueError(f"{path}:{lineno}: non-numeric d or i_eig field") from None
    return points


def cmd_fit(args) -> int:
    points = _read_fit_points(args.table_csv)
    if len(points) < 4:
        _warn(f"need at least 4 rows with i_eig, found {len(points)}")
        return 2
    model = fit_power_law(points)
    print(f"I(d) ~ A - B * d**(-p) over {len(points)} points")
    print(
        json.dumps(
            {"A": model.A, "B": model.B, "p": model.p, "rms_residual": model.rms_residual}
        )
    )
    return 0


def cmd_limit(args) -> int:
    print(f"{mes_bell_limit(args.terms):.10g}")
    return 0


def cmd_coeffs(args) -> int:
    if args.d < 2:
        _warn(f"dimension must be >= 2, got {args.d}")
        return 2
    op = reduced_bell_coefficients(args.d)
    lines = ["r,b_r"] + [f"{r},{_fmt(b)}" for r, b in enumerate(op.coeffs)]
    _write_lines(args.out, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cglmp",
        description="Maximal quantum violations of the CGLMP Bell inequality for two qudits.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser(
        "table",
        help="Bell values per dimension (optimal eigenvector, approximate and "
        "maximally entangled states) as CSV",
    )
    p_table.add_argument("d", type=int, nargs="*", help="dimensions to compute (each >= 2)")
    p_table.add_argument("--tol", type=float, default=1e-10, help="eigensolver relative residual")
    p_table.add_argument("--max-iter", type=int, default=500, help="eigensolver iteration cap")
    p_table.add_argument(
        "--eig-budget",
        type=int,
        default=DEFAULT_EIG_BUDGET,
        help="largest d for which the eigenvalue is computed; above it the "
        "i_eig/residual/iterations fields are left empty",
    )
    p_table.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p_table.set_defaults(func=cmd_table)

    p_verify = sub.add_parser("verify", help="run the cross-route invariant suite")
    p_verify.add_argument(
        "--d-max", type=int, default=12, help=f"largest dimension checked (<= {VERIFY_MAX_D})"
    )
    p_verify.add_argument(
        "--inject-fault",
        action="store_true",
        help="perturb a reduced coefficient to exercise failure reporting",
    )
    p_verify.set_defaults(func=cmd_verify)

    p_fit = sub.add_parser("fit", help="fit A - B*d**(-p) to the i_eig column of a table CSV")
    p_fit.add_argument("table_csv", help="CSV produced by the table subcommand")
    p_fit.set_defaults(func=cmd_fit)

    p_limit = sub.add_parser(
        "limit", help="large-d limit of the maximally-entangled Bell value"
    )
    p_limit.add_argument("--terms", type=int, default=1_000_000, help="series terms before the tail")
    p_limit.set_defaults(func=cmd_limit)

    p_coeffs = sub.add_parser("coeffs", help="dump the reduced-operator Toeplitz coefficients")
    p_coeffs.add_argument("d", type=int, help="dimension (>= 2)")
    p_coeffs.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p_coeffs.set_defaults(func=cmd_coeffs)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        _warn(f"I/O error: {exc}")
        return 3
    except ValueError as exc:
        _warn(f"error: {exc}")
        return 2


if __name__ == "__main__":
    sys.exit(main())
