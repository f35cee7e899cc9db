"""Command-line front end: classification, polytope geometry, verification, scans.

Couplings are given as ``r/s`` meaning (r/s)*pi, or ``rad:x`` for x radians.
Reports go to stdout (or --out), diagnostics to stderr.

Exit codes: 0 success, 1 verification failure, 2 invalid / ambiguous /
irregular input, 3 vertex enumeration cap (n > 8).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .coupling import Coupling, Verdict, classify, is_regular, type_one_intervals
from .errors import CompactRSError, EnumerationCap, IrregularCoupling
from .verification import SUITES, run_suite, toric_partner
from .zpolytope import (
    ENUM_CAP,
    ay_polytope,
    delzant_edge_counts,
    fixed_points,
    in_Ay_plus,
    membership_margin,
    z_vector,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3

SCAN_COLUMNS = ["y", "regular", "verdict", "p", "q", "n_vertices", "delzant", "min_vertex_component"]

SCAN_HELP = """\
Sweep y over a grid of exact rationals (units of pi) and write one row per y.

CSV columns:
  y                     y/pi as an exact fraction r/s
  regular               true iff exp(2imy) != 1 for m = 1..n
  verdict               irregular | type_i | type_ii
  p, q                  type (i) data (pq = 1 mod n), empty otherwise
  n_vertices            number of vertices of A_y (empty if irregular or n > 8)
  delzant               true iff every vertex of A_y meets exactly n-1 edges
  min_vertex_component  smallest vertex coordinate of A_y, units of pi
"""


@dataclass(frozen=True)
class RunConfig:
    n: int
    y: str | None
    lam: float = 1.0
    samples: int = 500
    seed: int = 0
    tol: float = 1e-9
    format: str = "json"

    def coupling(self) -> Coupling:
        if self.y is None:
            raise CompactRSError("--y is required")
        return Coupling.parse(self.n, self.y)


class UsageError(CompactRSError, ValueError):
    pass


# --------------------------------------------------------------------------
# serialization


def _plain(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, np.ndarray):
        return [_plain(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {k: _plain(x) for k, x in v.items()}
    return v


def _cell(v) -> str:
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def to_json(obj) -> str:
    return json.dumps(_plain(obj), indent=2) + "\n"


def to_csv(columns: list[str], rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def _units_of_pi(vec) -> list:
    return [v if isinstance(v, Fraction) else float(v) for v in vec]


def _coupling_fields(c: Coupling) -> dict:
    return {"n": c.n, "y": c.label()}


# --------------------------------------------------------------------------
# commands; each returns (exit code, JSON object, CSV columns, CSV rows)


def cmd_classify(cfg: RunConfig, table: bool = False):
    c = cfg.coupling()
    cl = classify(c)
    iv = cl.interval
    report = {
        **_coupling_fields(c),
        "regular": cl.verdict is not Verdict.IRREGULAR,
        "verdict": cl.verdict.value,
        "p": cl.p,
        "q": cl.q,
        "interval": [iv.a, iv.b] if iv is not None else None,
    }
    rows = [{**report, "a": iv.a if iv else None, "b": iv.b if iv else None}]
    cols = ["n", "y", "regular", "verdict", "p", "q", "a", "b"]
    if table:
        t = c.y_over_pi
        ivs = [{"p": i.p, "q": i.q, "a": i.a, "b": i.b, "contains_y": i.contains(t)} for i in type_one_intervals(c.n)]
        report["table"] = ivs
        rows = [{"n": c.n, **r} for r in ivs]
        cols = ["n", "p", "q", "a", "b", "contains_y"]
    return EXIT_OK, report, cols, rows


def _regular_coupling(cfg: RunConfig) -> Coupling:
    c = cfg.coupling()
    if not is_regular(c):
        raise IrregularCoupling(f"y = {c.label()} (units of pi) is not regular for n = {c.n}")
    return c


def _parse_point(text: str, n: int) -> np.ndarray:
    """Comma-separated coordinates in units of pi (fractions allowed), or rad:x1,x2,..."""
    text = text.strip()
    if text.startswith("rad:"):
        xi = np.array([float(t) for t in text[4:].split(",")])
    else:
        xi = math.pi * np.array([float(Fraction(t.strip())) for t in text.split(",")])
    if xi.shape[0] != n:
        raise UsageError(f"--point has {xi.shape[0]} coordinates, expected {n}")
    return xi


def cmd_geometry(cfg: RunConfig, sub: str, point: str | None = None):
    c = _regular_coupling(cfg)
    n = c.n
    base = {**_coupling_fields(c), "units": "pi"}
    cols_xi = [f"xi_{k + 1}" for k in range(n)]

    if sub == "membership":
        if point is None:
            raise UsageError("membership needs --point")
        xi = _parse_point(point, n)
        poly = ay_polytope(n, c)
        try:
            z = z_vector(xi, c).tolist()
        except CompactRSError:
            z = None
        report = {
            **base,
            "point": (xi / math.pi).tolist(),
            "in_ay_plus": in_Ay_plus(xi, c),
            "in_ay": poly.contains(xi / math.pi),
            "margin": membership_margin(xi, c) / math.pi,
            "z": z,
        }
        return EXIT_OK, report, ["n", "y", "point", "in_ay_plus", "in_ay", "margin", "z"], [report]

    poly = ay_polytope(n, c)
    if sub == "vertices":
        verts = [_units_of_pi(v) for v in poly.vertices]
        report = {**base, "exact": poly.exact, "n_vertices": len(verts), "vertices": verts}
        rows = [dict(zip(cols_xi, v)) for v in verts]
        return EXIT_OK, report, cols_xi, rows

    if sub == "fixed-points":
        exact = poly.vertices
        pts = []
        for fp in fixed_points(n, c):
            match = min(exact, key=lambda v: np.max(np.abs(np.array(v, dtype=float) * math.pi - fp.xi)))
            pts.append({"xi": _units_of_pi(match), "z": z_vector(fp.xi, c).tolist()})
        report = {**base, "n_fixed_points": len(pts), "fixed_points": pts}
        rows = [{**dict(zip(cols_xi, p["xi"])), "z": p["z"]} for p in pts]
        return EXIT_OK, report, cols_xi + ["z"], rows

    if sub == "delzant":
        counts = delzant_edge_counts(poly)
        ok = all(k == n - 1 for _, k in counts)
        per = [{"xi": _units_of_pi(v), "edge_count": k} for v, k in counts]
        report = {**base, "delzant": ok, "vertices": per}
        rows = [{**dict(zip(cols_xi, p["xi"])), "edge_count": p["edge_count"], "delzant": ok} for p in per]
        return EXIT_OK, report, cols_xi + ["edge_count", "delzant"], rows

    raise UsageError(f"unknown geometry subcommand {sub!r}")


def cmd_verify(cfg: RunConfig, suite: str):
    c = _regular_coupling(cfg)
    if suite == "toric" and toric_partner(c) is None:
        raise UsageError("the toric suite needs n >= 3 and a type (i) coupling with p in {1, n-1}")
    if cfg.samples < 1 or cfg.tol <= 0 or cfg.lam <= 0:
        raise UsageError("need --samples >= 1, --tol > 0 and --lambda > 0")
    reports = run_suite(suite, c, cfg.samples, cfg.seed, cfg.tol, cfg.lam)
    passed = all(r.passed for r in reports)
    out = {
        **_coupling_fields(c),
        "lambda": cfg.lam,
        "samples": cfg.samples,
        "seed": cfg.seed,
        "tol": cfg.tol,
        "passed": passed,
        "suites": [
            {"suite": r.suite, "passed": r.passed, "checks": [ch.as_dict() for ch in r.checks]} for r in reports
        ],
    }
    rows = [{"suite": r.suite, **ch.as_dict()} for r in reports for ch in r.checks]
    cols = ["suite", "name", "max_residual", "tol", "passed", "skipped", "failing_sample"]
    return (EXIT_OK if passed else EXIT_FAIL), out, cols, rows


def scan_grid(steps: int | None, rationals_only: int | None, lo: Fraction, hi: Fraction) -> list[Fraction]:
    if rationals_only is not None:
        grid = {Fraction(r, s) for s in range(2, rationals_only + 1) for r in range(1, s)}
    else:
        grid = {Fraction(k, steps) for k in range(1, steps)}
    return sorted(t for t in grid if lo <= t <= hi and 0 < t < 1)


def scan_row(n: int, t: Fraction) -> dict:
    c = Coupling(n, ratio=t)
    cl = classify(c)
    row = {"y": t, "regular": cl.verdict is not Verdict.IRREGULAR, "verdict": cl.verdict.value, "p": cl.p, "q": cl.q}
    if cl.verdict is not Verdict.IRREGULAR and n <= ENUM_CAP:
        poly = ay_polytope(n, c)
        counts = delzant_edge_counts(poly)
        row["n_vertices"] = len(counts)
        row["delzant"] = all(k == n - 1 for _, k in counts)
        row["min_vertex_component"] = min(min(v) for v, _ in counts)
    return row


def cmd_scan(cfg: RunConfig, steps: int | None, rationals_only: int | None, lo: str, hi: str):
    if steps is None and rationals_only is None:
        steps = 100
    if (steps is not None and steps < 2) or (rationals_only is not None and rationals_only < 2):
        raise UsageError("need --steps >= 2 or --rationals-only >= 2")
    grid = scan_grid(steps, rationals_only, Fraction(lo), Fraction(hi))
    rows = [scan_row(cfg.n, t) for t in grid]
    return EXIT_OK, {"n": cfg.n, "rows": rows}, SCAN_COLUMNS, rows


# --------------------------------------------------------------------------
# argument parsing


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--n", type=int, required=True, help="rank parameter: the group is SU(n)")
    p.add_argument("--y", help='coupling: "r/s" for (r/s)*pi, or "rad:x" for x radians')
    p.add_argument("--lambda", dest="lam", type=float, default=1.0, help="scale of the toric model (default 1)")
    p.add_argument("--samples", type=int, default=500, help="random samples per check (default 500)")
    p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
    p.add_argument("--tol", type=float, default=1e-9, help="residual tolerance (default 1e-9)")
    p.add_argument("--format", choices=("json", "csv"), default=None, help="output format")
    p.add_argument("--out", help="write the report to this file instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="compact-rs",
        description="Compactified trigonometric Ruijsenaars-Schneider systems on the SU(n) double.",
        epilog="Exit codes: 0 ok, 1 verification failure, 2 invalid/ambiguous/irregular input, 3 enumeration cap.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="regularity and type (i)/(ii) verdict")
    p.add_argument("--table", action="store_true", help="also list every type (i) interval for n")

    g = sub.add_parser("geometry", help="the moment polytope A_y")
    gsub = g.add_subparsers(dest="geometry", required=True)
    gsub.add_parser("vertices", parents=[common], help="vertices (exact when y is rational), units of pi")
    m = gsub.add_parser("membership", parents=[common], help="is a point in A_y^+ / A_y, with its z-vector")
    m.add_argument("--point", required=True, help='"a,b,..." in units of pi (fractions allowed) or "rad:x1,x2,..."')
    gsub.add_parser("fixed-points", parents=[common], help="torus fixed points over regular vertices")
    gsub.add_parser("delzant", parents=[common], help="edges per vertex and the Delzant verdict")

    v = sub.add_parser("verify", parents=[common], help="randomized invariant suites")
    v.add_argument("suite", choices=("all",) + SUITES)

    s = sub.add_parser(
        "scan",
        parents=[common],
        help="sweep y and tabulate classification and geometry",
        description=SCAN_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    grid = s.add_mutually_exclusive_group()
    grid.add_argument("--steps", type=int, help="y/pi = k/STEPS for k = 1..STEPS-1 (default 100)")
    grid.add_argument("--rationals-only", type=int, metavar="S", help="every y/pi = r/s with s <= S")
    s.add_argument("--y-min", default="0", help="lower end of the y/pi range (default 0)")
    s.add_argument("--y-max", default="1", help="upper end of the y/pi range (default 1)")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str, str | None]:
    """Parse and execute; returns (exit code, report text, --out path)."""
    args = build_parser().parse_args(argv)
    fmt = args.format or ("csv" if args.command == "scan" else "json")
    cfg = RunConfig(args.n, args.y, args.lam, args.samples, args.seed, args.tol, fmt)
    if args.command == "classify":
        result = cmd_classify(cfg, args.table)
    elif args.command == "geometry":
        result = cmd_geometry(cfg, args.geometry, getattr(args, "point", None))
    elif args.command == "verify":
        result = cmd_verify(cfg, args.suite)
    else:
        result = cmd_scan(cfg, args.steps, args.rationals_only, args.y_min, args.y_max)
    code, report, cols, rows = result
    text = to_json(report) if fmt == "json" else to_csv(cols, rows)
    return code, text, args.out


def main(argv: list[str] | None = None) -> int:
    try:
        code, text, out = run(argv)
    except EnumerationCap as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CompactRSError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL:
        print("error: verification failed", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
