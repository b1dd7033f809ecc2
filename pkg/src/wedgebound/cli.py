"""Command-line entry point: ``wedgebound {table1,bound,verify,pursuit}``.

Exit codes: 0 success, 1 numerical failure or failed verification, 2 usage error.
JSON output carries a ``schema_version`` field and contains no timings, so the
same command with the same seed prints byte-identical JSON.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .bound import BoundReport, payne_weinberger_bound, shoot_lambda_hyp
from .domains import DIAMETER, EDGE_LENGTH, hat_tetra, load_radius_csv, sector, tetra_triangle
from .eigensolver import eigenvalue
from .pursuit import PursuitConfig, exponent_report, simulate
from .suites import SUITES, run_suite

SCHEMA_VERSION = 1
TETRA_REFERENCE = "5.1590 (external reference)"
# tabulated eigenvalue bounds for hatT and T behind the a(3) reference exponents
REFERENCE_LAMBDAS = (5.10421518, 5.11641465)

EPILOG = """\
CSV columns
  table1   row, moment, r_star, lambda_star, lambda1_fe, lambda1_note, moment_infinite
  bound    label, alpha, moment, r_star, lambda_star, <residual names...>
  verify   suite, checks, passed, failed, failing
  pursuit  --out FILE writes t, survivors, p_hat (empirical survival function)
"""


class CommandError(RuntimeError):
    """Numerical failure reported with exit code 1."""


def _clean(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf"
        return f"{value:.8f}" if value == 0 or 1e-4 <= abs(value) < 1e6 else f"{value:.3e}"
    return str(value)


def render_rows(rows: list, columns: list, fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(columns)
        for row in rows:
            out.writerow(["" if row.get(c) is None else repr(row[c]) if isinstance(row.get(c), float) else row[c]
                          for c in columns])
        return buf.getvalue()
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) if cells else len(c) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.rjust(w) for v, w in zip(r, widths)) for r in cells]
    return "\n".join(lines) + "\n"


def dump_json(payload: dict) -> str:
    return json.dumps(_clean({"schema_version": SCHEMA_VERSION, **payload}), indent=2, allow_nan=False) + "\n"


# table1 ----------------------------------------------------------------------


def table1_rows(tol: float = 1e-9, fe_resolution: int = 128) -> list:
    alpha = 1.5
    rows = [{
        "row": "W", "moment": math.inf, "r_star": math.pi,
        "lambda_star": shoot_lambda_hyp(math.pi, alpha), "lambda1_fe": None,
        "lambda1_note": "alpha(alpha+1)", "moment_infinite": True,
    }]
    hat = hat_tetra()
    domains = [
        ("S(pi/2)", sector(math.pi / 2, alpha), "equality case"),
        ("S(delta)", sector(DIAMETER, alpha), "equality case"),
        ("S(epsilon)", sector(EDGE_LENGTH, alpha), "equality case"),
        ("S(r), r=1", sector(1.0, alpha), "r* = r"),
        ("T", tetra_triangle(), TETRA_REFERENCE),
        ("hatT", hat.domain, "?"),
    ]
    for name, G, note in domains:
        try:
            rep = payne_weinberger_bound(G, tol)
            fe = eigenvalue(G, fe_resolution)
        except Exception as exc:  # row-tagged diagnostics
            raise CommandError(f"table1 row {name}: {exc}") from exc
        rows.append({
            "row": name, "moment": rep.moment, "r_star": rep.r_star, "lambda_star": rep.lambda_star,
            "lambda1_fe": fe, "lambda1_note": note, "moment_infinite": False,
        })
    return rows


TABLE1_COLUMNS = ["row", "moment", "r_star", "lambda_star", "lambda1_fe", "lambda1_note", "moment_infinite"]


def cmd_table1(args) -> str:
    rows = table1_rows(args.tol)
    if args.format == "json":
        return dump_json({"command": "table1", "alpha": 1.5, "rows": rows})
    return render_rows(rows, TABLE1_COLUMNS, args.format)


# bound -----------------------------------------------------------------------


def parse_domain(text: str, alpha):
    """Domain from ``sector:<r>``, ``tetra``, ``hattetra`` or ``file:<path>``; raises ValueError."""
    kind, _, arg = text.partition(":")
    if kind in ("tetra", "hattetra"):
        if arg:
            raise ValueError(f"{kind} takes no argument")
        if alpha is not None and alpha != 1.5:
            raise ValueError(f"{kind} fixes alpha = 1.5")
        return tetra_triangle() if kind == "tetra" else hat_tetra().domain
    if kind not in ("sector", "file"):
        raise ValueError(f"unknown domain kind {kind!r}")
    if not arg:
        raise ValueError(f"{kind} needs an argument, e.g. {kind}:{'1.57' if kind == 'sector' else 'radius.csv'}")
    if alpha is None:
        raise ValueError(f"--alpha is required for {kind} domains")
    if not alpha > 1:
        raise ValueError("--alpha must exceed 1")
    if kind == "sector":
        try:
            r = float(arg)
        except ValueError:
            raise ValueError(f"bad sector radius {arg!r}") from None
        if not 0 < r < math.pi:
            raise ValueError("sector radius must lie in (0, pi)")
        return sector(r, alpha)
    return ("file", arg, alpha)


def cmd_bound(args) -> str:
    G = args.domain_obj
    if isinstance(G, tuple):
        try:
            G = load_radius_csv(G[1], G[2])
        except (OSError, ValueError) as exc:
            raise CommandError(str(exc)) from exc
    try:
        rep = payne_weinberger_bound(G, args.tol)
    except Exception as exc:
        raise CommandError(f"{G.label}: {exc}") from exc
    if args.format == "json":
        return dump_json({"command": "bound", "report": rep.to_dict()})
    row = {k: v for k, v in rep.to_dict().items() if k != "residuals"}
    row.update(rep.residuals)
    return render_rows([row], list(row), args.format)


def report_from_json(text: str) -> BoundReport:
    return BoundReport.from_dict(json.loads(text)["report"])


# verify ----------------------------------------------------------------------


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    results = [run_suite(n, args.seed, args.trials) for n in names]
    ok = all(r.ok for r in results)
    if args.format == "json":
        text = dump_json({
            "command": "verify", "seed": args.seed, "ok": ok,
            "suites": [{**r.summary(), "rows": r.rows} for r in results],
        })
    elif args.format == "csv":
        text = render_rows([r.summary() for r in results], ["suite", "checks", "passed", "failed", "failing"], "csv")
    else:
        parts = []
        for r in results:
            cols = list(r.rows[0]) if r.rows else ["id", "ok"]
            parts.append(f"[{r.name}]\n" + render_rows(r.rows, cols, "table"))
        parts.append(render_rows([r.summary() for r in results], ["suite", "checks", "passed", "failed", "failing"], "table"))
        text = "\n".join(parts)
    return text, (0 if ok else 1)


# pursuit ---------------------------------------------------------------------


def cmd_pursuit(args) -> str:
    config = PursuitConfig(args.n, args.paths, dt=args.dt, t_max=args.tmax, seed=args.seed)
    try:
        stats = simulate(config)
    except RuntimeError as exc:
        raise CommandError(str(exc)) from exc
    if args.out:
        stats.write_csv(args.out)
    summary = stats.summary()
    refs = [
        {"label": r.label, "lambda1": r.lambda1, "exponent": r.exponent, "reference": r.reference}
        for r in exponent_report(REFERENCE_LAMBDAS)
    ]
    if args.format == "json":
        return dump_json({"command": "pursuit", "stats": summary, "reference_exponents": refs})
    return render_rows([summary], list(summary), args.format)


# wiring ----------------------------------------------------------------------


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _nonneg_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return value


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--tol", type=_positive_float, default=1e-9, help="pipeline tolerance (default 1e-9)")

    parser = argparse.ArgumentParser(
        prog="wedgebound", description="Eigenvalue lower bounds for spherical wedge domains.",
        epilog=EPILOG, formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("table1", parents=[common], help="recompute the reference domain table")

    p = sub.add_parser("bound", parents=[common], help="moment-matched lower bound for one domain")
    p.add_argument("--domain", required=True, help="sector:<r> | tetra | hattetra | file:<path>")
    p.add_argument("--alpha", type=float, help="wedge parameter (fixed to 1.5 by tetra/hattetra)")

    p = sub.add_parser("verify", parents=[common], help="run seeded verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=_positive_int)

    p = sub.add_parser("pursuit", parents=[common], help="Monte Carlo capture-time tail")
    p.add_argument("--n", type=_positive_int, required=True, help="number of pursuers")
    p.add_argument("--paths", type=_nonneg_int, default=100_000)
    p.add_argument("--dt", type=_positive_float, default=1e-3)
    p.add_argument("--tmax", type=_positive_float, default=100.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write the survival curve CSV here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "bound":
        try:
            args.domain_obj = parse_domain(args.domain, args.alpha)
        except ValueError as exc:
            parser.error(str(exc))
    if args.command == "pursuit" and args.tmax <= args.dt:
        parser.error("--tmax must exceed --dt")
    code = 0
    try:
        if args.command == "table1":
            text = cmd_table1(args)
        elif args.command == "bound":
            text = cmd_bound(args)
        elif args.command == "verify":
            text, code = cmd_verify(args)
        else:
            text = cmd_pursuit(args)
    except CommandError as exc:
        print(f"wedgebound {args.command}: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
