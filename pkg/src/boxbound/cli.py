"""Command-line front end: bounds, tables, density and overlay data as CSV.

Exit codes: 0 success, 2 usage error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .eigensolve import (
    density_eval_grid,
    schmudgen_bound,
    sos_lebesgue_bound,
    worker_count,
)
from .errors import DefinitenessError, UnknownFunctionError
from .jackson import degree_split, error_constants, gaussian_overlay, jackson_bound
from .moments import subset_label
from .testfns import catalog, lookup, normalize_name

log = logging.getLogger("boxbound")

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3

#: Table 1 columns: (header, function, n, largest r computed).
TABLE1_COLUMNS = (
    ("booth", "booth", 2, None),
    ("matyas", "matyas", 2, None),
    ("motzkin", "motzkin", 2, None),
    ("three_hump", "three-hump", 2, None),
    ("styblinski_tang_n2", "styblinski-tang", 2, None),
    ("styblinski_tang_n3", "styblinski-tang", 3, 24),
    ("rosenbrock_n2", "rosenbrock", 2, None),
    ("rosenbrock_n3", "rosenbrock", 3, 24),
)
#: The n=3 columns start one row later than the rest.
N3_R_MIN = 8
TABLE2_FUNCTIONS = (
    ("booth", "booth"),
    ("matyas", "matyas"),
    ("three_hump", "three-hump"),
    ("motzkin", "motzkin"),
)


class UsageError(Exception):
    pass


def _raw(v: float) -> str:
    return format(v, ".17g")


def _pretty(v: float) -> str:
    return format(v, ".4f")


def _write_csv(path: str | None, header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if path is None or path == "-":
        sys.stdout.write(buf.getvalue())
    else:
        Path(path).write_text(buf.getvalue(), encoding="utf-8", newline="\n")


def _pretty_path(args) -> str | None:
    if args.pretty:
        return args.pretty
    if args.out and args.out != "-":
        p = Path(args.out)
        return str(p.with_name(p.stem + ".pretty" + (p.suffix or ".csv")))
    return None


def _parse_point(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError as err:
        raise UsageError(f"cannot parse --x-star {text!r}") from err


def _even_range(lo: int, hi: int) -> list[int]:
    return list(range(lo + lo % 2, hi + 1, 2))


def _map(fn, items, workers: int):
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(it) for it in items]


def run_bound(args) -> int:
    tf = lookup(args.function, args.n)
    if args.r is None:
        raise UsageError("--r is required")
    start = time.perf_counter()
    winner = ""
    if args.method == "schmudgen":
        res = schmudgen_bound(tf.cheb, args.r, with_density=False)
        value, winner = res.f_r, subset_label(res.winner, tf.n)
    elif args.method == "sos-lebesgue":
        value = sos_lebesgue_bound(tf.cheb, args.r, with_density=False).f_r
    else:
        x_star = _parse_point(args.x_star) if args.x_star else tf.minimizers[0]
        if len(x_star) != tf.n:
            raise UsageError(f"--x-star needs {tf.n} coordinates")
        value = jackson_bound(tf.cheb, x_star, degree_split(args.r, tf.n))
    wall_ms = (time.perf_counter() - start) * 1e3
    _write_csv(
        args.out,
        ["function", "n", "r", "method", "value", "winner_subset", "wall_ms"],
        [[tf.name, tf.n, args.r, args.method, _raw(value), winner, f"{wall_ms:.3f}"]],
    )
    return EXIT_OK


def table1_values(r_values: list[int], workers: int) -> dict[tuple[str, int], float]:
    tasks = []
    for header, name, n, r_cap in TABLE1_COLUMNS:
        for r in r_values:
            if n == 3 and not (N3_R_MIN <= r <= (r_cap or r)):
                continue
            tasks.append((header, name, n, r))

    def compute(task):
        header, name, n, r = task
        return schmudgen_bound(lookup(name, n).cheb, r, workers=1, with_density=False).f_r

    values = _map(compute, tasks, workers)
    return {(t[0], t[3]): v for t, v in zip(tasks, values)}


def run_table1(args) -> int:
    r_values = _even_range(args.r_min or 6, args.r_max or 48)
    values = table1_values(r_values, worker_count())
    header = ["r"] + [c[0] for c in TABLE1_COLUMNS]
    raw, pretty = [], []
    for r in r_values:
        cells = [values.get((c[0], r)) for c in TABLE1_COLUMNS]
        raw.append([r] + ["" if v is None else _raw(v) for v in cells])
        pretty.append([r] + ["" if v is None else _pretty(v) for v in cells])
    _write_csv(args.out, header, raw)
    if (pp := _pretty_path(args)) is not None:
        _write_csv(pp, header, pretty)
    return EXIT_OK


def table2_values(r_values: list[int], workers: int) -> dict[tuple[str, int], tuple[float, float]]:
    tasks = [(h, name, r) for h, name in TABLE2_FUNCTIONS for r in r_values]

    def compute(task):
        _, name, r = task
        f = lookup(name, 2).cheb
        return (
            sos_lebesgue_bound(f, r, with_density=False).f_r,
            schmudgen_bound(f, r, workers=1, with_density=False).f_r,
        )

    values = _map(compute, tasks, workers)
    return {(t[0], t[2]): v for t, v in zip(tasks, values)}


def run_table2(args) -> int:
    r_values = _even_range(args.r_min or 6, args.r_max or 40)
    values = table2_values(r_values, worker_count())
    header = ["r"]
    for h, _ in TABLE2_FUNCTIONS:
        header += [f"{h}_lebesgue", f"{h}_schmudgen", f"{h}_schmudgen_greater"]
    raw, pretty = [], []
    for r in r_values:
        raw_row, pretty_row = [r], [r]
        for h, _ in TABLE2_FUNCTIONS:
            leb, sch = values[(h, r)]
            flag = int(sch > leb)
            raw_row += [_raw(leb), _raw(sch), flag]
            pretty_row += [_pretty(leb), _pretty(sch), flag]
        raw.append(raw_row)
        pretty.append(pretty_row)
    _write_csv(args.out, header, raw)
    if (pp := _pretty_path(args)) is not None:
        _write_csv(pp, header, pretty)
    return EXIT_OK


def run_density(args) -> int:
    if args.method != "schmudgen":
        raise UsageError("density requires --method schmudgen")
    tf = lookup(args.function, args.n)
    if args.r is None:
        raise UsageError("--r is required")
    res = schmudgen_bound(tf.cheb, args.r)
    table = density_eval_grid(res, args.grid or 101)
    header = [f"x{i + 1}" for i in range(tf.n)] + ["h"]
    _write_csv(args.out, header, [[_raw(v) for v in row] for row in table])
    return EXIT_OK


def run_overlay(args) -> int:
    if args.r is None:
        raise UsageError("--r is required")
    x_star = _parse_point(args.x_star) if args.x_star else (0.0,)
    if len(x_star) != 1:
        raise UsageError("overlay is univariate: give a single --x-star value")
    grid = np.linspace(-1.0, 1.0, (args.grid or 201) + 2)[1:-1]
    table = gaussian_overlay(x_star[0], args.r, grid)
    _write_csv(args.out, ["x", "delta_kpm", "gaussian"], [[_raw(v) for v in row] for row in table])
    return EXIT_OK


def run_constants(args) -> int:
    entries = list(catalog())
    if args.function:
        name = normalize_name(args.function)
        entries = [tf for tf in entries if tf.name == name]
        if not entries:
            raise UnknownFunctionError(f"no test function {args.function!r}")
    if args.n is not None:
        entries = [tf for tf in entries if tf.n == args.n]
    rows = []
    for tf in entries:
        ec = error_constants(tf.cheb)
        rows.append([tf.name, tf.n, ec.d, ec.psi_d, _raw(ec.c_d), _raw(ec.C_d), _raw(ec.C_f)])
    _write_csv(args.out, ["function", "n", "d", "psi_d", "c_d", "C_d", "C_f"], rows)
    return EXIT_OK


COMMANDS = {
    "bound": run_bound,
    "table1": run_table1,
    "table2": run_table2,
    "density": run_density,
    "overlay": run_overlay,
    "constants": run_constants,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxbound",
        description="Upper bounds for polynomial minimisation over [-1,1]^n.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--function", help="catalog function name, e.g. motzkin")
        p.add_argument("--n", type=int, help="dimension")
        p.add_argument("--r", type=int, help="hierarchy degree")
        p.add_argument("--r-min", type=int, help="first row of a table (even)")
        p.add_argument("--r-max", type=int, help="last row of a table (even)")
        p.add_argument(
            "--method", choices=("schmudgen", "sos-lebesgue", "jackson"), default="schmudgen"
        )
        p.add_argument("--x-star", help="comma-separated centre for jackson/overlay")
        p.add_argument("--grid", type=int, help="grid points per coordinate")
        p.add_argument("--out", help="output CSV path (default stdout)")
        p.add_argument("--pretty", help="path for the 4-decimal table variant")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _validate(args) -> None:
    if args.command in ("bound", "density"):
        if not args.function or args.n is None:
            raise UsageError("--function and --n are required")
    if args.command in ("table1", "table2"):
        for flag in ("r_min", "r_max"):
            v = getattr(args, flag)
            if v is not None and v % 2:
                raise UsageError(f"--{flag.replace('_', '-')} must be even for table commands")
    if args.method == "jackson" and args.command != "bound":
        raise UsageError("--method jackson only applies to the bound command")
    if args.grid is not None and args.grid < 2:
        raise UsageError("--grid must be >= 2")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        _validate(args)
        start = time.perf_counter()
        code = COMMANDS[args.command](args)
        log.info("%s finished in %.2f s", args.command, time.perf_counter() - start)
        return code
    except (DefinitenessError, np.linalg.LinAlgError, FloatingPointError) as err:
        print(f"boxbound: numeric failure: {err}", file=sys.stderr)
        return EXIT_NUMERIC
    except (UsageError, UnknownFunctionError, ValueError) as err:
        print(f"boxbound: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
