"""Command-line front end: ``laststop <subcommand> ...``.

JSON goes to stdout with 12 significant digits; tables go to CSV with a
header row. Exit status is 0 on success, 2 for bad arguments or parameters
and 3 when a numerical routine fails.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from typing import Iterable, Sequence

import numpy as np

from laststop.advisor import Advisor
from laststop.appendix import Regime, appendix_asymptotics, near_boundary_solve
from laststop.errors import DomainError, InvalidArgs, NumericalError, ParamError
from laststop.incomplete import CONFINEMENT_FLOOR, CrossingCase, analytic_success, classic_count_dist, mstar_dist
from laststop.model import new_model
from laststop.montecarlo import monte_carlo
from laststop.regions import classify, gamma3, gamma_curve, gamma_endpoints, p_bullet
from laststop.success import w_closed
from laststop.thresholds import solve_thresholds
from laststop.xstrategy import x_star, x_star_unequal, xstrategy_asymptotic, xstrategy_exact

SIG = 12


def _round(obj):
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return float(f"{x:.{SIG}g}") if math.isfinite(x) else None
    return obj


def dumps(obj) -> str:
    return json.dumps(_round(obj), indent=2)


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return f"{float(x):.{SIG}g}"


def write_csv(out, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])


def _write_csv_file(path: str, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_csv(fh, header, rows)


# subcommands


def cmd_thresholds(a) -> None:
    sol = solve_thresholds(new_model(a.p, a.pprime), radius=a.radius)
    print(dumps({"p": a.p, "pprime": a.pprime, **sol.to_dict()}))


def cmd_classify(a) -> None:
    rc = classify(new_model(a.p, a.pprime))
    print(
        dumps(
            {
                "p": a.p,
                "pprime": a.pprime,
                "row": rc.row.name,
                "row_number": rc.row.value,
                "practical_c": rc.practical_c,
                "practical_d": rc.practical_d,
                "phi1_at_0": rc.phi1_at_0,
                "phi2_at_0": rc.phi2_at_0,
            }
        )
    )


def _curve_defaults(kind: str, cfix):
    # default abscissa range plus the endpoint rows known in closed position
    if kind == "gamma3":
        pb = p_bullet()
        return 0.01, pb[0], [], [pb]
    (lo, _), (hi, _) = gamma_endpoints(kind, cfix)
    return lo, hi, [(lo, lo)], [(hi, 0.0)]


def cmd_curve(a) -> None:
    if a.kind == "gammaC" and a.cfix is None:
        raise InvalidArgs("--kind gammaC needs --cfix")
    if a.steps < 2:
        raise InvalidArgs("--steps must be >= 2")
    head: list = []
    tail: list = []
    pmin, pmax = a.pmin, a.pmax
    if pmin is None or pmax is None:
        lo, hi, first, last = _curve_defaults(a.kind, a.cfix)
        if pmin is None:
            pmin, head = lo, first
        if pmax is None:
            pmax, tail = hi, last
    grid = np.linspace(pmin, pmax, a.steps)
    if head:
        grid = grid[1:]
    if tail:
        grid = grid[:-1]
    rows, skipped = list(head), 0
    for p in grid:
        try:
            pp = gamma3(p)[0] if a.kind == "gamma3" else gamma_curve(a.kind, p, a.cfix)
        except NumericalError:
            skipped += 1
            continue
        rows.append((p, pp))
    rows.extend(tail)
    write_csv(sys.stdout, ("p", "pprime"), rows)
    if skipped:
        print(f"note: {skipped} abscissae outside the curve's domain were skipped", file=sys.stderr)


def cmd_surface(a) -> None:
    model = new_model(a.p, a.pprime)
    if a.steps < 2:
        raise InvalidArgs("--steps must be >= 2")
    cs = np.linspace(0.0, a.cmax, a.steps)
    ds = np.linspace(0.0, a.dmax, a.steps)
    rows = ((c, d, w_closed(model, c, d)) for c in cs for d in ds)
    write_csv(sys.stdout, ("C", "D", "w"), rows)


def cmd_xstrategy(a) -> None:
    exact = xstrategy_exact(a.n, a.p)
    asym = xstrategy_asymptotic(a.n, a.p)
    out = {
        **exact.to_dict(),
        "asymptotic": {
            "x_star": asym.x_approx,
            "p_star": asym.p_star_approx,
            "p_tilde": asym.p_tilde_approx,
            "x_star_error": asym.x_approx - exact.x_star,
            "p_star_error": asym.p_star_approx - exact.p_star,
            "p_tilde_error": asym.p_tilde_approx - exact.p_tilde,
        },
    }
    if a.pprime is not None and a.pprime != a.p:
        u = x_star_unequal(new_model(a.p, a.pprime), a.n)
        out["unequal"] = {"pprime": a.pprime, "c_d": u.c_d, "x_star": u.x_star, "success": u.p_at_x_star}
    print(dumps(out))


def cmd_incomplete(a) -> None:
    case = CrossingCase.parse(a.case)
    dist = mstar_dist(case, a.n, a.p, normalize=a.normalize, floor=a.floor)
    success = analytic_success(case, a.n, a.p, floor=a.floor)
    path = a.csv or f"phi_{case.value}_n{a.n}_p{a.p:g}.csv"
    header = ["mu", "phi"]
    cols = [dist.mu, dist.phi]
    if a.classic or case is CrossingCase.P_KNOWN:
        header.append("phi_classic")
        cols.append(classic_count_dist(a.n, a.p))
    _write_csv_file(path, header, zip(*cols))
    print(
        dumps(
            {
                "case": case.value,
                "n": a.n,
                "p": a.p,
                "analytic_success": success,
                "raw_mass": dist.raw_mass,
                "mu_min": dist.mu_min,
                "phi_csv_path": path,
            }
        )
    )


def cmd_simulate(a) -> None:
    model = new_model(a.p, a.p if a.pprime is None else a.pprime)
    if a.case == "fixed":
        strategy = a.x if a.x is not None else x_star(a.n, a.p)
    else:
        if a.x is not None:
            raise InvalidArgs("--x only applies to --case fixed")
        strategy = CrossingCase.parse(a.case)
    report = monte_carlo(strategy, model, a.n, a.paths, a.seed, floor=a.floor, workers=a.threads)
    print(dumps(report.to_json_dict()))
    if a.csv:
        _write_csv_file(a.csv, ("mu", "count", "phi_analytic"), report.histogram_rows(a.smooth))


def cmd_appendix(a) -> None:
    given = {k: getattr(a, k) for k in ("eta", "xi", "eps", "delta") if getattr(a, k) is not None}
    if len(given) != 1:
        raise InvalidArgs("give exactly one of --eta, --xi, --eps, --delta")
    (name, value), = given.items()
    regime = Regime.parse(a.regime)
    small = {Regime.NEAR_P_ONE: "xi", Regime.DIAGONAL: "eps", Regime.ANTI_DIAGONAL: "delta"}[regime]
    if name not in ("eta", small):
        raise InvalidArgs(f"--{name} does not apply to regime {regime.value}; use --eta or --{small}")
    direction = "inverse" if name == "eta" else "forward"
    out = appendix_asymptotics(regime, direction, value, a.p, a.method).to_dict()
    exact = None
    if regime is Regime.DIAGONAL:
        exact = near_boundary_solve(regime, eta=a.eta, eps=a.eps)
    elif name == "eta":
        exact = near_boundary_solve(regime, eta=value, p=a.p)
    out["exact"] = exact
    print(dumps(out))


def cmd_advise(a, stdin=None, stdout=None) -> None:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    case = CrossingCase.parse(a.case)
    n_known = a.n if case is CrossingCase.N_KNOWN else None
    p_known = a.p if case is CrossingCase.P_KNOWN else None
    advisor = Advisor(case, n_known, p_known, a.floor)
    for lineno, line in enumerate(stdin, 1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        try:
            if parts[0] == "event" and len(parts) == 3:
                advisor.observe(float(parts[1]), int(parts[2]))
            elif parts[0] == "query" and len(parts) == 2:
                print(advisor.query(float(parts[1])).value, file=stdout, flush=True)
            else:
                raise InvalidArgs("expected 'event <time> <mark>' or 'query <time>'")
        except ValueError as exc:
            raise InvalidArgs(f"line {lineno}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="laststop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def pair(sp):
        sp.add_argument("--p", type=float, required=True)
        sp.add_argument("--pprime", type=float, required=True)

    sp = sub.add_parser("thresholds", help="optimal (C, D) thresholds as JSON")
    pair(sp)
    sp.add_argument("--radius", type=int, default=2, help="integer search window around the continuous optimum")
    sp.set_defaults(func=cmd_thresholds)

    sp = sub.add_parser("classify", help="region row and practical (C, D)")
    pair(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("curve", help="boundary curve as CSV p,pprime")
    sp.add_argument("--kind", choices=("gamma1", "gamma2", "gamma3", "gammaC"), required=True)
    sp.add_argument("--cfix", type=float)
    sp.add_argument("--pmin", type=float)
    sp.add_argument("--pmax", type=float)
    sp.add_argument("--steps", type=int, default=101)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("surface", help="success surface as CSV C,D,w")
    pair(sp)
    sp.add_argument("--cmax", type=float, default=20.0)
    sp.add_argument("--dmax", type=float, default=20.0)
    sp.add_argument("--steps", type=int, default=41)
    sp.set_defaults(func=cmd_surface)

    sp = sub.add_parser("xstrategy", help="optimal waiting time and success as JSON")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--pprime", type=float)
    sp.set_defaults(func=cmd_xstrategy)

    cases = [c.value for c in CrossingCase]

    sp = sub.add_parser("incomplete", help="crossing-count law (CSV) and analytic success (JSON)")
    sp.add_argument("--case", choices=cases, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--csv", help="where to write mu,phi (default phi_<case>_n<n>_p<p>.csv)")
    sp.add_argument("--classic", action="store_true", help="add the complete-information count law (always on for pknown)")
    sp.add_argument("--normalize", action="store_true")
    sp.add_argument("--floor", type=float, default=CONFINEMENT_FLOOR)
    sp.set_defaults(func=cmd_incomplete)

    sp = sub.add_parser("simulate", help="Monte Carlo report as JSON, histogram as CSV")
    sp.add_argument("--case", choices=[*cases, "fixed"], required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=float, required=True)
    sp.add_argument("--pprime", type=float, help="defaults to --p")
    sp.add_argument("--x", type=float, help="waiting time for --case fixed (default: the optimum)")
    sp.add_argument("--paths", type=int, default=500)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--csv", help="write the histogram as mu,count,phi_analytic")
    sp.add_argument("--smooth", action="store_true", help="merge successive pairs of histogram cells")
    sp.add_argument("--floor", type=float, default=CONFINEMENT_FLOOR)
    sp.add_argument("--threads", type=int)
    sp.set_defaults(func=cmd_simulate)

    sp = sub.add_parser("appendix", help="boundary asymptotics near C = -1 as JSON")
    sp.add_argument("--regime", choices=[r.value for r in Regime], required=True)
    for name in ("eta", "xi", "eps", "delta"):
        sp.add_argument(f"--{name}", type=float)
    sp.add_argument("--p", type=float)
    sp.add_argument("--method", choices=("lambert", "log"), default="lambert")
    sp.set_defaults(func=cmd_appendix)

    sp = sub.add_parser("advise", help="line protocol on stdin: 'event <t> <mark>' and 'query <t>'")
    sp.add_argument("--case", choices=cases, required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--p", type=float)
    sp.add_argument("--floor", type=float, default=CONFINEMENT_FLOOR)
    sp.set_defaults(func=cmd_advise)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except (ParamError, InvalidArgs, DomainError) as exc:
        print(f"laststop {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"laststop {args.command}: numerical failure: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"laststop {args.command}: {exc}", file=sys.stderr)
        return 2
    return 0
