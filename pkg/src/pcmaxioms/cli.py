"""Command-line front end.

Exit codes: 0 success, 1 usage or internal error, 2 invalid input matrix or
parameters, 3 verdicts disagree with the reference table under --strict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import harness, indices
from .harness import REFERENCE_VERDICTS, STANDARD_INDICES, LogUniform
from .indices import RiTable, bundled_ri_table, report
from .matrix import (MatrixError, corner, from_json, from_weights, parse, serialize,
                     to_json, RECIPROCITY_TOL)
from .solvers import ConvergenceError

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_STRICT = 0, 1, 2, 3
TABLE2_X = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 100)
TABLE2_COLUMNS = ("RIC", "CI", "GWI", "PLI", "KII", "GCI")
ALIASES = {"GW": "GWI", "C.I.": "CI"}


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("table", "json", "csv"), default=d("table"))
    parser.add_argument("--seed", type=int, default=d(42))
    parser.add_argument("--method", choices=("gm", "em"), default=d("gm"),
                        help="weights used by GWI and GCI")
    parser.add_argument("--tol", type=float, default=d(RECIPROCITY_TOL),
                        help="reciprocity tolerance when reading matrices")
    parser.add_argument("--strict", action="store_true", default=d(False))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="pcmaxioms",
                description="Inconsistency indices and axiom checks for pairwise-comparison matrices.")
    _global_flags(p, suppress=False)
    common = _Parser(add_help=False)
    _global_flags(common, suppress=True)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="report every index for a matrix file")
    a.add_argument("matrix", type=Path, help="CSV (n lines of n numbers) or JSON {n, rows}")
    a.add_argument("--ri-table", type=Path, help="R.I. table JSON written by `ri --output`")

    g = sub.add_parser("gen", parents=[common], help="write a matrix file")
    g.add_argument("kind", choices=("corner", "random", "weights"))
    g.add_argument("params", nargs="+",
                   help="corner: N X | random: N SCALE SEED (scale saaty or loguniform:LO:HI) | weights: W1 W2 ...")
    g.add_argument("-o", "--output", type=Path)

    x = sub.add_parser("axioms", parents=[common], help="empirical axiom verdicts, one row per index")
    x.add_argument("names", nargs="*", default=["all"], help="index names or 'all'")
    x.add_argument("--trials", type=int, default=harness.DEFAULT_TRIALS)

    t = sub.add_parser("table2", parents=[common], help="index sweep over corner matrices of order 3")
    t.add_argument("--x", type=float, nargs="+", default=list(TABLE2_X), dest="xs")

    r = sub.add_parser("ri", parents=[common], help="Monte Carlo random index")
    r.add_argument("orders", help="order or range, e.g. 5 or 3..8")
    r.add_argument("--samples", type=int, default=100_000)
    r.add_argument("--scale", default="saaty", help="saaty or loguniform:LO:HI")
    r.add_argument("-o", "--output", type=Path, help="write the table as JSON")
    return p


# -- helpers ------------------------------------------------------------------

def _scale(text: str):
    if text.lower() == "saaty":
        return "saaty"
    parts = text.split(":")
    if len(parts) == 3 and parts[0].lower() == "loguniform":
        try:
            return LogUniform(float(parts[1]), float(parts[2]))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"unknown scale {text!r}; use saaty or loguniform:LO:HI")


def _orders(text: str) -> list[int]:
    try:
        for sep in ("..", "-", ":"):
            if sep in text:
                lo, hi = (int(v) for v in text.split(sep))
                break
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"cannot read order range {text!r}") from None
    if lo < 2 or hi < lo:
        raise InputError(f"invalid order range {text!r}: need 2 <= lo <= hi")
    return list(range(lo, hi + 1))


def _csv(rows: list[list]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue().rstrip("\n")


def _f4(v: float) -> str:
    return f"{v:.4f}"


def _emit(text: str, path: Path | None = None) -> None:
    if path is None:
        print(text)
    else:
        path.write_text(text + "\n")


def _read_matrix(path: Path, tol: float):
    text = path.read_text()
    if path.suffix.lower() == ".json":
        return from_json(text, tol=tol)
    return parse(text, tol=tol)


def _resolve(names: list[str]) -> list[str]:
    if not names or [n.lower() for n in names] == ["all"]:
        return list(STANDARD_INDICES)
    out = []
    for name in names:
        key = ALIASES.get(name.upper(), name.upper())
        if key not in STANDARD_INDICES:
            raise UsageError(f"unknown index {name!r}; choose from {', '.join(STANDARD_INDICES)} or all")
        out.append(key)
    return out


# -- commands -----------------------------------------------------------------

def cmd_analyze(args) -> int:
    m = _read_matrix(args.matrix, args.tol)
    ri = RiTable.from_json(args.ri_table.read_text()) if args.ri_table else bundled_ri_table()
    rep = report(m, ri, args.method)
    if args.format == "json":
        print(json.dumps(rep.to_json(), indent=2))
    elif args.format == "csv":
        print(_csv([["index", "value"]] + [[k, rep.values[k]] for k in indices.INDEX_NAMES
                                          if k in rep.values]))
    else:
        lines = [f"n = {rep.n}   lambda_max = {rep.lambda_max:.4f}   weights = {rep.weight_method}"]
        lines += [f"{k:<4} {_f4(rep.values[k])}" for k in indices.INDEX_NAMES if k in rep.values]
        lines.append("consistent" if rep.consistent else "not consistent")
        if rep.saaty_acceptable is not None:
            lines.append(f"C.R. <= 0.10 (informational): {'yes' if rep.saaty_acceptable else 'no'}")
        print("\n".join(lines))
    return EXIT_OK


def cmd_gen(args) -> int:
    p = args.params
    try:
        if args.kind == "corner":
            if len(p) != 2:
                raise UsageError("gen corner takes N X")
            m = corner(int(p[0]), float(p[1]))
        elif args.kind == "random":
            if len(p) != 3:
                raise UsageError("gen random takes N SCALE SEED")
            m = harness.random_reciprocal(int(p[0]), _scale(p[1]), int(p[2]))
        else:
            m = from_weights(float(v) for v in p)
    except ValueError as exc:
        if isinstance(exc, MatrixError):
            raise
        raise InputError(str(exc)) from None
    text = json.dumps(to_json(m)) if args.format == "json" else serialize(m)
    _emit(text, args.output)
    return EXIT_OK


def cmd_axioms(args) -> int:
    names = _resolve(args.names)
    if args.trials < 1:
        raise InputError("--trials must be at least 1")
    vt = harness.verdict_table([STANDARD_INDICES[k] for k in names], args.seed, args.trials)
    if args.format == "json":
        print(json.dumps(vt.to_json(), indent=2))
    elif args.format == "csv":
        print(_csv([["index", *harness.AXIOMS]] + [[k, *vt.symbols(k)] for k in vt.rows]))
    else:
        print(vt.render_text())
    mism = vt.mismatches(REFERENCE_VERDICTS)
    if mism:
        for name, ax, want, got in mism:
            print(f"mismatch: {name}/{ax} expected {want}, observed {got}", file=sys.stderr)
        if args.strict:
            return EXIT_STRICT
    return EXIT_OK


def table2_rows(xs, method: str = "GM") -> list[dict]:
    rows = []
    for x in xs:
        rep = report(corner(3, x), bundled_ri_table(), method)
        rows.append({"x": x, **{k: rep.values[k] for k in TABLE2_COLUMNS}})
    return rows


def cmd_table2(args) -> int:
    bad = [x for x in args.xs if not x >= 1]
    if bad:
        raise InputError(f"x must be >= 1, got {bad}")
    rows = table2_rows(args.xs, args.method)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    elif args.format == "csv":
        print(_csv([["x", *TABLE2_COLUMNS]] + [[f"{r['x']:g}", *(r[k] for k in TABLE2_COLUMNS)] for r in rows]))
    else:
        head = f"{'x':>8}" + "".join(f"{k:>12}" for k in TABLE2_COLUMNS)
        body = [f"{r['x']:>8g}" + "".join(f"{_f4(r[k]):>12}" for k in TABLE2_COLUMNS) for r in rows]
        print("\n".join([head] + body))
    return EXIT_OK


def cmd_ri(args) -> int:
    orders = _orders(args.orders)
    if args.samples < 100:
        raise InputError("--samples must be at least 100")
    scale = _scale(args.scale)
    table = harness.build_ri_table(orders, args.samples, args.seed, scale)
    se = table.provenance["std_error"]
    if args.format == "json":
        print(json.dumps(table.to_json(), indent=2))
    elif args.format == "csv":
        print(_csv([["n", "ri", "std_error"]] + [[n, table.values[n], se[str(n)]] for n in orders]))
    else:
        lines = [f"{'n':>3} {'R.I.':>8} {'std.err':>9}"]
        lines += [f"{n:>3} {_f4(table.values[n]):>8} {se[str(n)]:>9.5f}" for n in orders]
        lines.append(f"samples={args.samples} seed={args.seed} scale={table.provenance['scale']}")
        print("\n".join(lines))
    if args.output:
        args.output.write_text(json.dumps(table.to_json(), indent=2) + "\n")
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "gen": cmd_gen, "axioms": cmd_axioms,
            "table2": cmd_table2, "ri": cmd_ri}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (MatrixError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UsageError, OSError, ConvergenceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
