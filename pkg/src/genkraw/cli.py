"""Command-line entry point: ``genkraw <command> ...``.

Exit codes: 0 success, 1 usage error, 2 singular trajectory,
3 certification failure (including an exact-mode method mismatch).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import certify as certify_mod
from . import dpsystem, experiments, limit, moments, tables
from .numerics import DEFAULT_PREC, EXACT, float_mode
from .weight import WeightParams

EXIT_OK, EXIT_USAGE, EXIT_SINGULAR, EXIT_CERT = 0, 1, 2, 3

METHODS = {"dpsystem": dpsystem.trajectory, "stieltjes": moments.stieltjes}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_mode(text: str):
    """``exact``, ``float`` (default precision) or ``float:P``."""
    if text == "exact":
        return EXACT
    if text == "float":
        return float_mode(DEFAULT_PREC)
    if text.startswith("float:"):
        try:
            return float_mode(int(text.split(":", 1)[1]))
        except ValueError as exc:
            raise UsageError(f"bad precision in mode {text!r}") from exc
    raise UsageError(f"mode must be 'exact' or 'float:P', got {text!r}")


def parse_ns(text: str | None, N: int):
    if text is None:
        return None
    out = []
    for part in text.split(","):
        if "-" in part.strip("-"):
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    if any(not 0 <= n <= N for n in out):
        raise UsageError(f"n values must lie in 0..{N}")
    return out


def params_from(args) -> WeightParams:
    try:
        return WeightParams(args.N, EXACT.parse(args.alpha), EXACT.parse(args.c))
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc


def _add_params(sp):
    sp.add_argument("--N", type=int, required=True, help="lattice size (support 0..N)")
    sp.add_argument("--alpha", required=True, help="alpha < 1, exact (e.g. -1, 1/2, 0.8)")
    sp.add_argument("--c", required=True, help="c > 0, exact")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_compute(args) -> int:
    p = params_from(args)
    mode = parse_mode(args.mode)
    coeffs = METHODS[args.method](p.to_mode(mode))
    if args.format == "json":
        _emit(tables.to_json(p, mode, coeffs), args.out)
    else:
        _emit(tables.to_csv(coeffs, args.digits), args.out)
    return EXIT_OK


def _first_difference(u, v):
    for k, (a, b) in enumerate(zip(u, v)):
        if a != b:
            return k
    return None


def cmd_compare(args) -> int:
    p = params_from(args)
    mode = parse_mode(args.mode)
    pm = p.to_mode(mode)
    t0 = time.perf_counter()
    st = moments.stieltjes(pm)
    t1 = time.perf_counter()
    report = {"params": p.as_dict(), "mode": mode.tag, "time_stieltjes": round(t1 - t0, 4)}
    try:
        dp = dpsystem.trajectory(pm)
    except dpsystem.SingularTrajectoryError as exc:
        if mode is EXACT:
            raise
        report.update(status="float-mode divergence (informational)", detail=str(exc))
        print(json.dumps(report, indent=2))
        return EXIT_OK
    report["time_dpsystem"] = round(time.perf_counter() - t1, 4)
    # a_0^2 is zero by definition in both methods; compare the computed entries
    entries = (p.N + 1) + (p.N + 1)
    if mode is EXACT:
        ka = _first_difference(st.a_sq[1:], dp.a_sq[1:])
        kb = _first_difference(st.b, dp.b)
        if ka is None and kb is None:
            report["status"] = f"identical ({entries} entries)"
            print(json.dumps(report, indent=2))
            return EXIT_OK
        report["status"] = "exact-mode mismatch"
        report["first_difference"] = {"a_sq": None if ka is None else ka + 1, "b": kb}
        print(json.dumps(report, indent=2))
        return EXIT_CERT
    gaps = [abs(a - b) for a, b in zip(st.a_sq, dp.a_sq)] + [abs(a - b) for a, b in zip(st.b, dp.b)]
    worst = max(gaps)
    report["max_abs_discrepancy"] = mode.render(worst, 10)
    report["status"] = "agree to precision" if worst <= mode.convert(2) ** (-(mode.prec // 2)) else (
        "float-mode divergence (informational)"
    )
    print(json.dumps(report, indent=2))
    return EXIT_OK


def cmd_perturb(args) -> int:
    p = params_from(args)
    rep = experiments.perturb(p, args.delta, args.prec, args.tol)
    doc = rep.as_dict(args.digits)
    if not args.profile:
        doc.pop("profile")
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_shoot(args) -> int:
    p = params_from(args)
    try:
        res = experiments.shoot(p, args.lo, args.hi, args.prec, args.subdivisions, refine_depth=args.refine_depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    doc = res.as_dict()
    closest = res.closest_to_closed_form()
    doc["distance_to_closed_form"] = None if closest is None else float_mode(args.prec).render(
        abs(closest - res.closed_form), 6
    )
    print(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_figures(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    ids = [1, 2, 3, 4] if args.id == "all" else [int(args.id)]
    summary = {}
    for fig in ids:
        series = experiments.figure_data(fig)
        gen = series["generalized"]
        p = experiments.figure_params(fig)
        (outdir / f"fig{fig}.csv").write_text(tables.to_csv(gen, args.digits))
        (outdir / f"fig{fig}.json").write_text(tables.to_json(p, EXACT, gen))
        info = {
            "params": p.as_dict(),
            "rows": len(gen.a_sq),
            "a_sq_unimodal": experiments.unimodal(list(gen.a_sq)),
        }
        if fig == 4:
            cl = series["classical"]
            (outdir / "fig4_classical.csv").write_text(tables.to_csv(cl, args.digits))
            info["classical_p"] = experiments.FIGURE4_P
            info["max_relative_gap"] = tables.decimal(limit.relative_gap(gen, cl), 6)
        summary[f"fig{fig}"] = info
    print(json.dumps(summary, indent=2))
    return EXIT_OK


def cmd_certify(args) -> int:
    p = params_from(args)
    ns = parse_ns(args.n, p.N)
    suites = certify_mod.SUITES if args.suites == "all" else tuple(s.strip() for s in args.suites.split(","))
    tamper = None
    if args.tamper:
        idx, delta = args.tamper.split(":", 1)
        tamper = (int(idx), EXACT.parse(delta))
    try:
        doc = certify_mod.certify(p, ns, suites, tamper, args.prec)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK if doc["passed"] else EXIT_CERT


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="genkraw", description="Recurrence coefficients for the generalized Krawtchouk weight.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("compute", help="coefficient table")
    _add_params(sp)
    sp.add_argument("--method", choices=sorted(METHODS), default="dpsystem")
    sp.add_argument("--mode", default="exact", help="exact | float | float:P")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.add_argument("--digits", type=int, default=17, help="CSV decimal digits")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("compare", help="dpsystem vs Stieltjes")
    _add_params(sp)
    sp.add_argument("--mode", default="exact")
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("perturb", help="perturb y0 and report the first failure")
    _add_params(sp)
    sp.add_argument("--delta", required=True)
    sp.add_argument("--prec", type=int, default=DEFAULT_PREC)
    sp.add_argument("--tol", default="1e-20", help="tolerance on |a_{N+1}^2|")
    sp.add_argument("--digits", type=int, default=20)
    sp.add_argument("--profile", action="store_true", help="include the a_n^2 profile")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("shoot", help="bisection on y0 for a_{N+1}^2 = 0")
    _add_params(sp)
    sp.add_argument("--lo", required=True)
    sp.add_argument("--hi", required=True)
    sp.add_argument("--prec", type=int, default=DEFAULT_PREC)
    sp.add_argument("--subdivisions", type=int, default=64)
    sp.add_argument("--refine-depth", type=int, default=4, help="levels of grid refinement where admissibility changes")
    sp.set_defaults(func=cmd_shoot)

    sp = sub.add_parser("figures", help="write figure data as CSV/JSON")
    sp.add_argument("--id", default="all", choices=("1", "2", "3", "4", "all"))
    sp.add_argument("--out", default="figures")
    sp.add_argument("--digits", type=int, default=17)
    sp.set_defaults(func=cmd_figures)

    sp = sub.add_parser("certify", help="run certification suites")
    _add_params(sp)
    sp.add_argument("--n", help="indices, e.g. 3 or 1-4 or 2,5")
    sp.add_argument("--suites", default="all", help=f"comma list from {','.join(certify_mod.SUITES)} or all")
    sp.add_argument("--tamper", help="INDEX:DELTA, add DELTA to y_INDEX (negative control)")
    sp.add_argument("--prec", type=int, default=256)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_certify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"genkraw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except dpsystem.SingularTrajectoryError as exc:
        print(f"genkraw: singular trajectory: {exc}", file=sys.stderr)
        return EXIT_SINGULAR


if __name__ == "__main__":
    sys.exit(main())
