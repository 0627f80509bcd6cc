"""Command-line front end: every table and figure dataset as csv or json.

All numeric output is fixed at 12 significant digits, so identical
invocations produce byte-identical files.  Exit codes: 0 success, 2
validation error, 3 computation-budget error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import classical, gpt, lp, qstates

FMT = "%.12g"


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return FMT % v


def emit(columns, rows, config) -> str:
    """Render a table as csv or json text (including trailing newline)."""
    cells = [[_fmt(v) for v in row] for row in rows]
    if config.format == "csv":
        lines = [",".join(columns)]
        lines += [",".join(row) for row in cells]
        return "\n".join(lines) + "\n"
    def cell(c):
        if c == "":
            return None
        try:
            return float(c)
        except ValueError:
            return c

    payload = {
        "command": config.command,
        "columns": list(columns),
        "rows": [[cell(c) for c in row] for row in cells],
    }
    return json.dumps(payload, indent=2) + "\n"


def _write(text: str, config):
    if config.out:
        with open(config.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands

_CLOSED_FORMS = {2: "3/2+sqrt(2)", 3: "2+sqrt(3)"}


def cmd_table1(config):
    rows = []
    for k in range(2, config.kmax + 1):
        f = (k + 1) * qstates.gram_success(qstates.cgu_ensemble(k + 1), k)
        rows.append((k, f, _CLOSED_FORMS.get(k, "")))
    return ("k", "f", "closed_form"), rows


def _fghl_rows(kmax):
    rows = []
    for k in range(1, kmax + 1):
        f = None
        if k >= 2:
            f = (k + 1) * qstates.gram_success(qstates.cgu_ensemble(k + 1), k)
        g = classical.bit_upper_bound_g(k)
        h = qstates.gu_lower_bound_h(k)
        l = classical.superbound_l(k)
        rows.append((k, f, g, h, l, "h>l" if h > l else ""))
    return ("k", "f", "g", "h", "l", "crossover"), rows


def cmd_compare_fg(config):
    return _fghl_rows(config.kmax)


def cmd_compare_hg(config):
    return _fghl_rows(config.kmax)


def cmd_trine_curves(config):
    e = qstates.trine()
    rows = []
    for k in range(1, config.kmax + 1):
        rows.append(
            (
                k,
                classical.bit_exact_3_k(k).value,
                qstates.gram_success(e, k),
                qstates.trine_closed_form(k),
            )
        )
    return ("k", "classical", "quantum_gram", "closed_form"), rows


def cmd_polygon_figure(config):
    rows = []
    for m in range(4, config.mmax_sep + 1):
        value, subset, _ = lp.optimize_over_subsets(gpt.polygon(m), 3, "SEP")
        rows.append((m, "SEP", "-".join(map(str, subset)), value))
    for m in range(4, config.mmax_global + 1):
        value, subset, _ = lp.optimize_over_subsets(gpt.polygon(m), 3, "GLOBAL")
        rows.append((m, "GLOBAL", "-".join(map(str, subset)), value))
    references = [
        ("bit", 5.0 / 6.0),
        ("double-trine-sep", 0.5 + math.sqrt(2.0) / 3.0),
        ("double-trine-ad", 0.5 + math.sqrt(3.0) / 4.0),
        ("double-trine-ad1", 0.8976),
        ("hexagon-fix", 8.0 / 9.0),
    ]
    for name, value in references:
        rows.append(("", "REF", name, value))
    return ("m", "kind", "subset_or_name", "value"), rows


_STRATEGY_TARGETS = {
    "double-trine-sep": (
        lambda config: qstates.pgm_success(qstates.trine(), 2),
        0.5 + math.sqrt(2.0) / 3.0,
        1e-9,
    ),
    "double-trine-ad": (
        lambda config: qstates.double_trine_adaptive()[0],
        0.5 + math.sqrt(3.0) / 4.0,
        1e-9,
    ),
    "double-trine-ad1": (
        lambda config: qstates.double_trine_ad1(resolution=config.resolution)[0],
        0.8976,
        1e-3,
    ),
    "hexagon-fix": (
        lambda config: gpt.evaluate_strategy(*gpt.hexagon_fix_strategy()).value,
        8.0 / 9.0,
        1e-12,
    ),
    "square-nad": (
        lambda config: gpt.evaluate_strategy(*gpt.square_nad_strategy()).value,
        1.0,
        1e-12,
    ),
    "hexagon-ad1": (
        lambda config: gpt.evaluate_strategy(*gpt.hexagon_ad1_strategy()).value,
        1.0,
        1e-12,
    ),
}


def cmd_strategies(config):
    if config.target == "all":
        targets = list(_STRATEGY_TARGETS)
    elif config.target in _STRATEGY_TARGETS:
        targets = [config.target]
    else:
        raise ValueError(
            f"unknown strategy {config.target!r}; choose from "
            + ", ".join(sorted(_STRATEGY_TARGETS) + ["all"])
        )
    rows = []
    for name in targets:
        compute, reference, tol = _STRATEGY_TARGETS[name]
        value = compute(config)
        status = "pass" if abs(value - reference) <= tol else "fail"
        rows.append((name, value, reference, status))
    return ("strategy", "value", "reference", "status"), rows


def cmd_classical_bound(config):
    n, k = config.n, config.k
    if n == 3:
        value = classical.bit_exact_3_k(k).value
    elif n > k:
        value = classical.bit_upper_bound_g(k) / n
    else:
        value = classical.bit_optimum_n_le_k(n, k).value
    return ("n", "k", "value"), [(n, k, value)]


def cmd_gu_success(config):
    value = qstates.gram_success(qstates.cgu_ensemble(config.n), config.k)
    return ("n", "k", "success", "n_times_success"), [
        (config.n, config.k, value, config.n * value)
    ]


def _ensemble(name: str):
    if name == "trine":
        return qstates.trine()
    if name == "tetrahedron":
        return qstates.tetrahedron()
    if name.startswith("cgu:"):
        return qstates.cgu_ensemble(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown ensemble {name!r}; use trine, tetrahedron, or cgu:<n>")


def cmd_pgm_run(config):
    e = _ensemble(config.ensemble)
    value = qstates.pgm_success(e, config.k)
    return ("ensemble", "k", "pgm_success"), [(config.ensemble, config.k, value)]


def cmd_polygon_optimize(config):
    t = gpt.polygon(config.m)
    value, subset, table = lp.optimize_over_subsets(t, config.n, config.kind)
    rows = [
        (m, "-".join(map(str, sub)), kind, val, status)
        for m, sub, kind, val, status in table
    ]
    rows.append((config.m, "best:" + "-".join(map(str, subset)), config.kind, value, "optimal"))
    return ("m", "subset", "kind", "value", "status"), rows


# ---------------------------------------------------------------------------
# argument parsing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="multicopy",
        description="Multi-copy state discrimination tables and figures",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output file (default stdout)")
    common.add_argument("--resolution", type=int, default=720)
    common.add_argument("--grid", type=int, default=1000)
    common.add_argument("--kmax", type=int, default=7)
    common.add_argument("--tolerance", type=float, default=1e-9)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table1", parents=[common]).set_defaults(func=cmd_table1)
    sub.add_parser("compare-fg", parents=[common]).set_defaults(func=cmd_compare_fg)
    sub.add_parser("compare-hg", parents=[common]).set_defaults(func=cmd_compare_hg)
    sub.add_parser("trine-curves", parents=[common]).set_defaults(func=cmd_trine_curves)

    p = sub.add_parser("polygon-figure", parents=[common])
    p.add_argument("--mmax-sep", type=int, default=8)
    p.add_argument("--mmax-global", type=int, default=8)
    p.set_defaults(func=cmd_polygon_figure)

    p = sub.add_parser("strategies", parents=[common])
    p.add_argument("target", nargs="?", default="all")
    p.set_defaults(func=cmd_strategies)

    p = sub.add_parser("classical-bound", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_classical_bound)

    p = sub.add_parser("gu-success", parents=[common])
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_gu_success)

    p = sub.add_parser("pgm-run", parents=[common])
    p.add_argument("ensemble")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_pgm_run)

    p = sub.add_parser("polygon-optimize", parents=[common])
    p.add_argument("m", type=int)
    p.add_argument("kind", choices=("sep", "global", "SEP", "GLOBAL"))
    p.add_argument("n", type=int, nargs="?", default=3)
    p.set_defaults(func=cmd_polygon_optimize)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    config = parser.parse_args(argv)
    try:
        columns, rows = config.func(config)
    except classical.PartialResultError as exc:
        print(f"computation budget exceeded: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"invalid parameters: {exc}", file=sys.stderr)
        return 2
    _write(emit(columns, rows, config), config)
    return 0


if __name__ == "__main__":
    sys.exit(main())
