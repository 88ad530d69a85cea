"""Command-line front end: expand series, print coefficient tables, run checks.

    quasiseries expand --target V:2 --order 10
    quasiseries coeffs --target cv --t 3 --format csv
    quasiseries verify --target theorem2 --t 4 --order 60
    quasiseries suite --out report.json

Exit status: 0 on success (including recorded discrepancies), 1 when a check
fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .generators import eisenstein, euler_product, g2, h_series, lambert, theta
from .graded import partition_eisenstein
from .partitions import (
    macmahon_c,
    macmahon_u,
    macmahon_u_star,
    macmahon_u_two,
    u_star_single_sum,
)
from .recursions import cc_table, cc_tilde_table, cv_table, v_weights, w_weights
from .series import TruncatedSeries, reduce_mod
from .verify import REGISTRY, VerificationReport, c_from_dtheta, dtheta4_ratio, ramanujan_u, ramanujan_v, run_check, run_suite

__all__ = ["main", "build_parser", "CliConfig", "SERIES_TARGETS", "TABLE_TARGETS", "UsageError"]

DEFAULT_ORDER = 60
DEFAULT_T = 4


class UsageError(Exception):
    """Bad input from the command line (exit status 2)."""


@dataclass(frozen=True)
class CliConfig:
    command: str
    target: Optional[str]
    order: Optional[int]
    t: Optional[int]
    modulus: Optional[int]
    format: str
    out: Optional[str]
    timings: bool = False
    full_table: bool = False

    def __post_init__(self):
        if self.order is not None and self.order < 0:
            raise UsageError("--order must be non-negative")
        if self.t is not None and self.t < 0:
            raise UsageError("--t must be non-negative")
        if self.modulus is not None and self.modulus < 2:
            raise UsageError("--mod must be at least 2")


# name -> builder(order); indexed names take "NAME:t" and builder(t, order)
_PLAIN_SERIES: dict[str, Callable[[int], TruncatedSeries]] = {
    "theta3": lambda n: theta("three", n),
    "theta4": lambda n: theta("four", n),
    "theta2_4": lambda n: theta("two_pow4", n),
    "eta_product": lambda n: euler_product(1, n),
    "G2": g2,
}
_INDEXED_SERIES: dict[str, Callable[[int, int], TruncatedSeries]] = {
    "U": lambda t, n: ramanujan_u(t, n, "quotient"),
    "V": lambda t, n: ramanujan_v(t, n, "quotient"),
    "Etilde": lambda t, n: ramanujan_u(t, n, "conjugated"),
    "MacU": macmahon_u,
    "MacUstar": macmahon_u_star,
    "MacC": macmahon_c,
    "U2": macmahon_u_two,
    "UstarSum": u_star_single_sum,
    "dtheta4": dtheta4_ratio,
    "Cthm": c_from_dtheta,
    "PE": lambda t, n: partition_eisenstein(t, "plus", n),
    "PEstar": lambda t, n: partition_eisenstein(t, "minus", n),
    "H": h_series,
    "S": lambert,
}
SERIES_TARGETS = sorted(["E<2k>", *_PLAIN_SERIES, *(f"{k}:t" for k in _INDEXED_SERIES)])
TABLE_TARGETS = ("cv", "cc", "cc_tilde", "v", "w")


def _resolve_series(target: str, order: int) -> TruncatedSeries:
    m = re.fullmatch(r"E(\d+)", target)
    if m:
        k = int(m.group(1))
        if k < 2 or k % 2:
            raise UsageError(f"Eisenstein weight must be even and positive: {target!r}")
        return eisenstein(k // 2, order)
    if target in _PLAIN_SERIES:
        return _PLAIN_SERIES[target](order)
    name, sep, index = target.partition(":")
    if sep and name in _INDEXED_SERIES:
        if not re.fullmatch(r"\d+", index):
            raise UsageError(f"malformed index in {target!r}")
        try:
            return _INDEXED_SERIES[name](int(index), order)
        except ValueError as exc:
            raise UsageError(f"{target}: {exc}") from exc
    raise UsageError(f"unknown series {target!r}; known: {', '.join(SERIES_TARGETS)}")


def _frac(v) -> dict:
    v = Fraction(v)
    return {"num": str(v.numerator), "den": str(v.denominator)}


def _csv(rows, header) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# -- commands --------------------------------------------------------------------------
def cmd_expand(cfg: CliConfig) -> tuple[str, int]:
    if not cfg.target:
        raise UsageError("expand needs --target")
    order = DEFAULT_ORDER if cfg.order is None else cfg.order
    series = _resolve_series(cfg.target, order)
    if cfg.modulus is not None:
        try:
            values = list(reduce_mod(series, cfg.modulus).residues)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if cfg.format == "json":
            return _json({"target": cfg.target, "order": order, "modulus": cfg.modulus, "residues": values}), 0
        if cfg.format == "csv":
            return _csv(enumerate(values), ["index", "residue"]), 0
        return "".join(f"{n} {v}\n" for n, v in enumerate(values)), 0
    coeffs = series.coeffs
    if cfg.format == "json":
        return _json({"target": cfg.target, "order": order, "coefficients": [_frac(c) for c in coeffs]}), 0
    if cfg.format == "csv":
        return _csv(((n, c.numerator, c.denominator) for n, c in enumerate(coeffs)), ["index", "num", "den"]), 0
    return "".join(f"{n} {c}\n" for n, c in enumerate(coeffs)), 0


def cmd_coeffs(cfg: CliConfig) -> tuple[str, int]:
    target = cfg.target
    t = DEFAULT_T if cfg.t is None else cfg.t
    if target in ("v", "w"):
        if target == "v":
            if t < 1:
                raise UsageError("v needs --t >= 1")
            rows = list(enumerate(v_weights(t), start=1))
        else:
            rows = list(enumerate(w_weights(t)))
        if cfg.format == "json":
            return _json({"table": target, "t": t, "entries": [{"index": i, **_frac(v)} for i, v in rows]}), 0
        if cfg.format == "csv":
            return _csv(((i, v.numerator, v.denominator) for i, v in rows), ["index", "num", "den"]), 0
        return "".join(f"{target}_{t}({i}) = {v}\n" for i, v in rows), 0
    builders = {"cv": cv_table, "cc": cc_table, "cc_tilde": cc_tilde_table}
    if target not in builders:
        raise UsageError(f"unknown table {target!r}; known: {', '.join(TABLE_TARGETS)}")
    table = builders[target](t)
    entries = table.entries if cfg.full_table else table.level(t)
    rows = [(*key, entries[key]) for key in sorted(entries)]
    if cfg.format == "json":
        payload = [{"alpha": a, "beta": b, "gamma": g, **_frac(v)} for a, b, g, v in rows]
        return _json({"table": target, "t": t, "entries": payload}), 0
    if cfg.format == "csv":
        return _csv(((a, b, g, v.numerator, v.denominator) for a, b, g, v in rows),
                    ["alpha", "beta", "gamma", "num", "den"]), 0
    return "".join(f"{target}({a},{b},{g}) = {v}\n" for a, b, g, v in rows), 0


_REPORT_HEADER = ["identity_id", "order", "status", "n", "lhs", "rhs", "elapsed_ms", "detail"]


def _report_rows(reports, timings):
    for r in reports:
        d = r.to_dict(timings)
        m = d["first_mismatch"] or {"n": "", "lhs": "", "rhs": ""}
        yield [d["identity_id"], d["order"], d["status"], m["n"], m["lhs"], m["rhs"], d["elapsed_ms"], d["detail"]]


def _report_text(r: VerificationReport, timings: bool) -> str:
    line = f"{r.identity_id}: {r.status} (order {r.order})"
    if timings:
        line += f" [{r.elapsed_ms} ms]"
    if r.first_mismatch is not None:
        m = r.first_mismatch
        line += f"\n  first mismatch at n={m.n}: lhs={m.lhs} rhs={m.rhs}"
    if r.detail:
        line += f"\n  {r.detail}"
    return line + "\n"


def _render_reports(reports, fmt: str, timings: bool, single: bool) -> str:
    if fmt == "json":
        dicts = [r.to_dict(timings) for r in reports]
        return _json(dicts[0] if single else dicts)
    if fmt == "csv":
        return _csv(_report_rows(reports, timings), _REPORT_HEADER)
    return "".join(_report_text(r, timings) for r in reports)


def cmd_verify(cfg: CliConfig) -> tuple[str, int]:
    if cfg.target not in REGISTRY:
        raise UsageError(f"unknown identity {cfg.target!r}; known: {', '.join(REGISTRY)}")
    report = run_check(cfg.target, cfg.order, cfg.t)
    if report.status == "recorded-discrepancy":
        print(f"WARNING: {report.identity_id} is a recorded discrepancy: {report.detail}", file=sys.stderr)
    return _render_reports([report], cfg.format, cfg.timings, single=True), int(report.status == "fail")


def cmd_suite(cfg: CliConfig) -> tuple[str, int]:
    reports = run_suite(cfg.order, cfg.t)
    fmt = cfg.format
    text = _render_reports(reports, fmt, cfg.timings, single=False)
    if fmt == "text":
        counts = {s: sum(r.status == s for r in reports) for s in ("pass", "recorded-discrepancy", "fail")}
        text += f"{counts['pass']} pass, {counts['recorded-discrepancy']} recorded-discrepancy, {counts['fail']} fail\n"
    return text, int(any(r.status == "fail" for r in reports))


_COMMANDS = {"expand": cmd_expand, "coeffs": cmd_coeffs, "verify": cmd_verify, "suite": cmd_suite}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasiseries", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "expand": "print the q-expansion of a named series",
        "coeffs": "print a coefficient table (cv, cc, cc_tilde, v, w)",
        "verify": "run one identity check",
        "suite": "run every registered check",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--target", help="series, table or identity id")
        p.add_argument("--order", type=int, help="truncation order (default 60; checks use their own)")
        p.add_argument("--t", type=int, help="index or weight bound")
        p.add_argument("--mod", type=int, dest="modulus", help="reduce coefficients modulo this")
        p.add_argument("--format", choices=("text", "json", "csv"),
                       default="json" if name == "suite" else "text")
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--timings", action="store_true", help="report measured run times")
        if name == "coeffs":
            p.add_argument("--all", action="store_true", dest="full_table",
                           help="emit every weight up to --t, not just weight t")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = CliConfig(
            command=args.command,
            target=args.target,
            order=args.order,
            t=args.t,
            modulus=args.modulus,
            format=args.format,
            out=args.out,
            timings=args.timings,
            full_table=getattr(args, "full_table", False),
        )
        if cfg.modulus is not None and cfg.command != "expand":
            raise UsageError("--mod only applies to expand")
        text, status = _COMMANDS[cfg.command](cfg)
        if cfg.out:
            try:
                with open(cfg.out, "w", encoding="utf-8") as fh:
                    fh.write(text)
            except OSError as exc:
                raise UsageError(f"cannot write {cfg.out}: {exc}") from exc
        else:
            sys.stdout.write(text)
        return status
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
