"""Command-line interface: ``quadproj classify|project|sample|bench``.

Exit codes: 0 success, 2 I/O or parse error, 3 unsupported or invalid
quadric, 4 verification failure under ``--check`` / ``--oracle``.
"""
import argparse
import csv
import io
import json
import logging
import sys

import numpy as np

from .bench import run_bench
from .errors import QuadprojError, UnsupportedQuadric
from .oracle import oracle_project_secular
from .projection import AXIS_TOL, kkt_residual, project, secular_problem
from .quadric import FEAS_TOL, classify, is_feasible, new_quadric, standardize
from .sampling import sample_quadric

log = logging.getLogger("quadproj")

EXIT_OK, EXIT_IO, EXIT_UNSUPPORTED, EXIT_VERIFY = 0, 2, 3, 4
KKT_TOL = 1e-8
ORACLE_TOL = 1e-7
ORACLE_MAX_DIM = 8


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _num(x):
    return format(float(x) + 0.0, ".17g")  # no "-0"


def load_quadric(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
        A, b, c = data["A"], data["b"], data["c"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise CliError(f"cannot read quadric from {path}: {exc}", EXIT_IO) from exc
    try:
        return new_quadric(A, b, c)
    except (QuadprojError, ValueError) as exc:
        raise CliError(f"invalid quadric: {exc}", EXIT_UNSUPPORTED) from exc


def load_points(path, fmt="json"):
    """Read points from JSON (array of arrays) or CSV. The file extension wins over ``fmt``."""
    if path.endswith(".csv"):
        fmt = "csv"
    elif path.endswith(".json"):
        fmt = "json"
    try:
        with open(path) as fh:
            text = fh.read()
        if fmt == "csv":
            rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].lstrip().startswith("#")]
            try:
                [float(v) for v in rows[0]]
            except ValueError:
                rows = rows[1:]  # header
            pts = np.array([[float(v) for v in r] for r in rows], dtype=float)
        else:
            pts = np.array(json.loads(text), dtype=float)
    except (OSError, ValueError, IndexError) as exc:
        raise CliError(f"cannot read points from {path}: {exc}", EXIT_IO) from exc
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.ndim != 2:
        raise CliError(f"points must be a list of vectors, got shape {pts.shape}", EXIT_IO)
    return pts


def _standard_form(q):
    try:
        return standardize(q)
    except UnsupportedQuadric as exc:
        raise CliError(f"unsupported quadric: {exc}", EXIT_UNSUPPORTED) from exc


def cmd_classify(args, out):
    q = load_quadric(args.quadric)
    cls = classify(q)
    n = q.dim
    print(cls.describe(), file=out)
    print(f"kind: {cls.kind.value}", file=out)
    print(f"cylindrical: {str(cls.cylindrical).lower()}", file=out)
    print(f"rank_A: {cls.rank_A}", file=out)
    print(f"rank_Ab: {cls.rank_Ab}", file=out)
    print(f"rank_Astar: {cls.rank_Astar}", file=out)
    print(f"signature: +{cls.positives} -{cls.negatives} 0:{n - cls.positives - cls.negatives}", file=out)
    supported = True
    if cls.kind.value == "central" and cls.rank_A == n:
        try:
            sf = standardize(q)
            print("center: " + " ".join(_num(v) for v in sf.center), file=out)
            # gamma of the quadric as given, before sign normalization
            print(f"gamma: {_num(-sf.gamma if sf.flipped else sf.gamma)}", file=out)
        except UnsupportedQuadric as exc:
            print(f"unsupported: {exc}", file=out)
            supported = False
    else:
        supported = False
    print(f"supported: {str(supported).lower()}", file=out)
    if args.require_supported and not supported:
        return EXIT_UNSUPPORTED
    return EXIT_OK


def cmd_project(args, out):
    q = load_quadric(args.quadric)
    pts = load_points(args.points, args.format)
    n = q.dim
    if pts.shape[1] != n:
        raise CliError(f"points have dimension {pts.shape[1]}, quadric has {n}", EXIT_IO)
    if args.oracle and n > ORACLE_MAX_DIM:
        raise CliError(f"--oracle supports n <= {ORACLE_MAX_DIM}", EXIT_IO)
    sf = _standard_form(q)
    failed = 0
    writer = None
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(
            ["index"] + [f"x{i + 1}" for i in range(n)] + ["distance", "multiplier", "degenerate", "iterations"]
        )
    for k, x0 in enumerate(pts):
        res = project(q, x0, axis_tol=args.tol_axis, standard_form=sf)
        rec = {
            "index": k,
            "point": [float(v) for v in res.point],
            "distance": res.distance,
            "multiplier": float(res.multiplier),
            "degenerate": res.degenerate,
            "iterations": res.newton_iterations,
            "candidates": len(res.candidates),
        }
        if args.check or args.oracle:
            sp = secular_problem(sf.values, sf.to_std(x0), axis_tol=args.tol_axis)
        if args.check:
            feas = bool(is_feasible(q, res.point, args.tol_feas))
            kkt = kkt_residual(sp, res.chosen.y, res.chosen.mu)
            rec["feasible"] = feas
            rec["kkt_residual"] = kkt
            if not feas or kkt > KKT_TOL:
                failed += 1
                log.error("point %d failed verification (feasible=%s, kkt=%.3g)", k, feas, kkt)
        if args.oracle:
            _, d2 = oracle_project_secular(sp)
            d_or = float(np.sqrt(d2)) * sf.scale
            rec["oracle_distance"] = d_or
            if abs(res.distance - d_or) > ORACLE_TOL * (1.0 + d_or):
                failed += 1
                log.error("point %d: distance %.17g disagrees with oracle %.17g", k, res.distance, d_or)
        if writer is None:
            out.write(json.dumps(rec) + "\n")
        else:
            writer.writerow(
                [k]
                + [_num(v) for v in res.point]
                + [_num(res.distance), _num(res.multiplier), int(res.degenerate), res.newton_iterations]
            )
    return EXIT_VERIFY if failed else EXIT_OK


def cmd_sample(args, out):
    q = load_quadric(args.quadric)
    try:
        pts, branch = sample_quadric(q, args.count, t_max=args.t_max)
    except UnsupportedQuadric as exc:
        raise CliError(f"unsupported quadric: {exc}", EXIT_UNSUPPORTED) from exc
    except QuadprojError as exc:
        raise CliError(str(exc), EXIT_UNSUPPORTED) from exc
    fh = open(args.out, "w", newline="") if args.out else out
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([f"x{i + 1}" for i in range(q.dim)] + ["branch"])
        for p, br in zip(pts, branch):
            w.writerow([_num(v) for v in p] + [int(br)])
    finally:
        if args.out:
            fh.close()
    return EXIT_OK


def cmd_bench(args, out):
    report = run_bench(n=args.n, count=args.count, seed=args.seed)
    out.write(json.dumps(report) + "\n")
    return EXIT_OK if report["feasible"] == report["count"] else EXIT_VERIFY


def build_parser():
    parser = argparse.ArgumentParser(prog="quadproj", description="Project points onto quadric hypersurfaces.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="classify a quadric (conical / central / parabolic)")
    p.add_argument("quadric")
    p.add_argument("--require-supported", action="store_true", help="exit 3 unless non-cylindrical central")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("project", help="project points onto a quadric")
    p.add_argument("quadric")
    p.add_argument("--points", required=True, help="JSON array of points, or CSV")
    p.add_argument("--check", action="store_true", help="verify feasibility and KKT residual")
    p.add_argument("--oracle", action="store_true", help="cross-check distances by brute force (n <= 8)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--tol-feas", type=float, default=FEAS_TOL)
    p.add_argument("--tol-axis", type=float, default=AXIS_TOL)
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("sample", help="emit points on a 2D/3D quadric as CSV")
    p.add_argument("quadric")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--t-max", type=float, default=2.0, help="range of hyperbolic parameters")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bench", help="time eigendecomposition vs. secular solve")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        return args.func(args, out)
    except CliError as exc:
        log.error("%s", exc)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
