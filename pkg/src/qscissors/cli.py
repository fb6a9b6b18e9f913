"""Command-line driver: ``qscissors {simulate,sweep,wigner,validate}``.

Exit statuses: 0 success, 1 usage error, 2 validation failure,
3 degenerate parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from decimal import Decimal, InvalidOperation

import numpy as np

from . import analytic as cf
from .observables import GridSpec, GridTooLargeError, wigner
from .pipeline import HeraldError, QsdParams, run_qsd
from .report import QUANTITIES, MeritReport, merit_report
from .states import DEFAULT_TAIL_TOL
from .validation import run_checks

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_DEGENERATE = 0, 1, 2, 3

ROW_COLUMNS = (
    ["nbar", "T", "degenerate"]
    + [f"{q}_{kind}" for q in QUANTITIES for kind in ("num", "cf", "err")]
    + ["negativity_radius", "max_err"]
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# parsing helpers


def _decimal(text: str) -> Decimal:
    try:
        value = Decimal(text.strip())
    except InvalidOperation:
        raise UsageError(f"not a number: {text!r}") from None
    if not value.is_finite():
        raise UsageError(f"not a finite number: {text!r}")
    return value


def parse_values(text: str) -> list[float]:
    """``"a,b,c"`` or ``"min:max:step"`` (inclusive of ``max`` when it lands on the grid)."""
    text = text.strip()
    if not text:
        raise UsageError("empty value list")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must be min:max:step, got {text!r}")
        lo, hi, step = (_decimal(p) for p in parts)
        if step <= 0:
            raise UsageError("range step must be > 0")
        if lo > hi:
            raise UsageError("range needs min <= max")
        n = int((hi - lo) / step)
        return [float(lo + k * step) for k in range(n + 1)]
    return [float(_decimal(p)) for p in text.split(",")]


def parse_grid(text: str) -> GridSpec:
    """``"qmin:qmax:n,pmin:pmax:n"``."""
    try:
        q, p = text.split(",")
        q_min, q_max, n_q = q.split(":")
        p_min, p_max, n_p = p.split(":")
        return GridSpec(float(q_min), float(q_max), int(n_q), float(p_min), float(p_max), int(n_p))
    except ValueError as exc:
        raise UsageError(f"bad grid {text!r}: expected qmin:qmax:n,pmin:pmax:n ({exc})") from None


def _scalar(values: list[float], name: str) -> float:
    if len(values) != 1:
        raise UsageError(f"--{name} must be a single value for this command")
    return values[0]


# serialisation


def fmt(x) -> str:
    """17 significant digits so floats survive a text round trip."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def _json_value(x):
    if x is None or isinstance(x, bool):
        return x
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return float(x) if isinstance(x, (float, np.floating)) else x


def report_row(rep: MeritReport) -> dict:
    row = {"nbar": rep.nbar, "T": rep.T, "degenerate": rep.degenerate}
    for q in QUANTITIES:
        row[f"{q}_num"] = rep.numeric.get(q)
        row[f"{q}_cf"] = rep.analytic.get(q)
        row[f"{q}_err"] = rep.error(q)
    row["negativity_radius"] = rep.negativity_radius
    row["max_err"] = rep.max_error()
    return row


def render(rows: list[dict], columns, config: dict, fmt_name: str, extra: dict | None = None) -> str:
    if fmt_name == "json":
        doc = {"config": config, "rows": [{c: _json_value(r[c]) for c in columns} for r in rows]}
        if extra:
            doc.update(extra)
        return json.dumps(doc, indent=1, allow_nan=False) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[c]) for c in columns])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)


def _config(args, **extra) -> dict:
    cfg = {"command": args.command, "tail_tol": args.tail_tol}
    cfg.update(extra)
    return cfg


# commands


def cmd_simulate(args) -> int:
    nbar = _scalar(parse_values(args.nbar), "nbar")
    T = _scalar(parse_values(args.T), "T")
    QsdParams(nbar, T, args.tail_tol)
    rep = merit_report(nbar, T, args.tail_tol)
    if rep.degenerate:
        print(f"degenerate parameters (nbar={nbar}, T={T}): herald never fires", file=sys.stderr)
        return EXIT_DEGENERATE
    _emit(render([report_row(rep)], ROW_COLUMNS, _config(args, nbar=nbar, T=T), args.format), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    nbars, Ts = parse_values(args.nbar), parse_values(args.T)
    for n in nbars:
        for T in Ts:
            QsdParams(n, T, args.tail_tol)
    rows = [report_row(merit_report(n, T, args.tail_tol)) for n in nbars for T in Ts]
    _emit(render(rows, ROW_COLUMNS, _config(args, nbar=nbars, T=Ts), args.format), args.out)
    return EXIT_OK


WIGNER_COLUMNS = ["q", "p", "W_num", "W_cf", "W_err"]


def cmd_wigner(args) -> int:
    nbar = _scalar(parse_values(args.nbar), "nbar")
    T = _scalar(parse_values(args.T), "T")
    grid = parse_grid(args.grid)
    try:
        result = run_qsd(QsdParams(nbar, T, args.tail_tol))
    except HeraldError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_DEGENERATE
    wg = wigner(result.rho_out, grid, max_points=args.max_points)
    analytic = cf.cf_wigner_out(nbar, T, grid.betas())
    qq, pp = np.meshgrid(grid.q_axis, grid.p_axis, indexing="ij")
    rows = [
        {"q": q, "p": p, "W_num": w, "W_cf": a, "W_err": abs(w - a)}
        for q, p, w, a in zip(qq.ravel(), pp.ravel(), wg.values.ravel(), analytic.ravel())
    ]
    w_min, q_min, p_min = wg.argmin()
    summary = {"W_min": w_min, "q_at_min": q_min, "p_at_min": p_min}
    cfg = _config(args, nbar=nbar, T=T, grid=args.grid)
    _emit(render(rows, WIGNER_COLUMNS, cfg, args.format, extra={"summary": summary}), args.out)
    print(f"min W = {w_min:.17g} at q = {q_min:.17g}, p = {p_min:.17g}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    results = run_checks(args.tail_tol)
    lines = [r.line() for r in results]
    failed = [r.name for r in results if not r.passed]
    lines.append("PASS: all checks" if not failed else "FAIL: " + ", ".join(failed))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_VALIDATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tail-tol", type=float, default=DEFAULT_TAIL_TOL,
                        help="thermal truncation tolerance (default 1e-12)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--seedless", action="store_true",
                        help="accepted for interface stability; nothing here is random")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--nbar", required=True, help="comma list of mean thermal photon numbers")
    point.add_argument("--T", required=True, help="comma list or min:max:step of transmissivities")

    parser = _Parser(prog="qscissors", description="Thermal-state truncation by quantum scissors.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("simulate", parents=[common, point], help="one (nbar, T) point")
    sub.add_parser("sweep", parents=[common, point], help="grid over nbar and T")
    w = sub.add_parser("wigner", parents=[common, point], help="Wigner function on a phase-space grid")
    w.add_argument("--grid", default="-3:3:121,-3:3:121", help="qmin:qmax:n,pmin:pmax:n")
    w.add_argument("--max-points", type=int, default=1_000_000, help="resource cap on grid size")
    sub.add_parser("validate", parents=[common], help="run every invariant and oracle check")
    return parser


COMMANDS = {"simulate": cmd_simulate, "sweep": cmd_sweep, "wigner": cmd_wigner, "validate": cmd_validate}


def _join_grid(argv: list[str]) -> list[str]:
    # grid values start with "-", which argparse would read as an option
    out, it = [], iter(argv)
    for tok in it:
        if tok == "--grid":
            nxt = next(it, None)
            out.append(tok if nxt is None else f"--grid={nxt}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_join_grid(sys.argv[1:] if argv is None else list(argv)))
    if not 0 < args.tail_tol < 1:
        parser.error("--tail-tol must lie in (0, 1)")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, GridTooLargeError, ValueError) as exc:
        print(f"qscissors: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
