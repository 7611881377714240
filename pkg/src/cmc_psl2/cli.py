"""Command-line front end.

Subcommands::

    cmc-psl2 classify --family rotational --H 1 --d -2
    cmc-psl2 profile  --family parabolic --H 0 --d 1 --out p.csv
    cmc-psl2 mesh     --family rotational --H 1 --d -2 --reflect --out s.obj
    cmc-psl2 verify   --family rotational --H 0.5 --d -1 --grid pts.csv --oracle both
    cmc-psl2 growth   --d -4 --tau 0 --rho 20

Exit status is 0 on success, 2 when the requested family is empty (the
violated condition goes to stderr), 1 on IO or numerical failure.  Usage
errors are reported by argparse, which also exits with 2.  ``CMC_PSL2_TOL``
overrides the quadrature tolerance.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from typing import Optional, Sequence

import numpy as np

from . import surface_builder as sb
from .ambient import AmbientSpace, Model
from .curvature import disk_graph_to_half_plane, mean_curvature
from .errors import CMCError, EmptyFamily
from .par_profiles import ParabolicProfile, ParScrewParams, classify_parabolic
from .rot_profiles import RotationalProfile, RotScrewParams, classify_rotational, end_growth, growth_coefficient

CLI_DEFAULT_TOL = 1e-10
ROTATIONAL = "rotational"
PARABOLIC = "parabolic"


def _tolerance() -> float:
    raw = os.environ.get("CMC_PSL2_TOL")
    return float(raw) if raw else CLI_DEFAULT_TOL


def _common(sp: argparse.ArgumentParser, family: bool = True) -> None:
    if family:
        sp.add_argument("--family", choices=(ROTATIONAL, PARABOLIC), default=ROTATIONAL)
        sp.add_argument("--H", type=float, required=True, help="mean curvature, H >= 0")
    sp.add_argument("--d", type=float, required=True, help="integration constant")
    sp.add_argument("--tau", type=float, default=-0.5, help="bundle curvature (default -1/2)")
    sp.add_argument("--pitch", type=float, default=0.0, help="screw-motion pitch")
    sp.add_argument("--samples", type=int, default=512)
    sp.add_argument("--out", default=None, help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cmc-psl2", description="Invariant CMC surfaces in PSL2(R, tau).")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="report the regime of (H, d)")
    _common(sp)
    sp.add_argument("--format", choices=("json",), default="json")

    sp = sub.add_parser("profile", help="sample a generating curve")
    _common(sp)
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--rho-max", type=float, default=None, help="truncation radius for unbounded rotational profiles")
    sp.add_argument("--y-min", type=float, default=None, help="lower cut for parabolic profiles")
    sp.add_argument("--y-max", type=float, default=None, help="upper cut for parabolic profiles")

    sp = sub.add_parser("mesh", help="sweep a generating curve into an OBJ mesh")
    _common(sp)
    sp.add_argument("--format", choices=("obj",), default="obj")
    sp.add_argument("--rho-max", type=float, default=None)
    sp.add_argument("--y-min", type=float, default=None)
    sp.add_argument("--y-max", type=float, default=None)
    sp.add_argument("--n-theta", type=int, default=128)
    sp.add_argument("--n-x", type=int, default=128)
    sp.add_argument("--x-range", type=float, nargs=2, default=(-1.0, 1.0))
    sp.add_argument("--reflect", action="store_true", help="add the mirror image across t=0")
    sp.add_argument("--periods", type=int, default=1, help="periods to stack for periodic regimes")

    sp = sub.add_parser("verify", help="measure H of the graph at grid points")
    _common(sp)
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--grid", required=True, help="CSV with columns x,y in model coordinates")
    sp.add_argument("--oracle", choices=("div", "pde", "both"), default="div")
    sp.add_argument("--step", type=float, default=1e-4, help="finite-difference step")

    sp = sub.add_parser("growth", help="end growth of the H=1/2 annulus with d=-alpha")
    _common(sp, family=False)
    sp.add_argument("--format", choices=("json",), default="json")
    sp.add_argument("--rho", type=float, default=20.0)
    return ap


# --------------------------------------------------------------------------

def _emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)


def _dump(data: dict) -> str:
    clean = {k: (v if not (isinstance(v, float) and not math.isfinite(v)) else None) for k, v in data.items()}
    return json.dumps(clean, sort_keys=True, separators=(",", ":")) + "\n"


def _params(args):
    if args.family == ROTATIONAL:
        return RotScrewParams(args.H, args.d, args.tau, args.pitch)
    return ParScrewParams(args.H, args.d, args.tau, args.pitch)


def _profile(args, tol):
    if args.family == ROTATIONAL:
        prof = RotationalProfile(_params(args), tol)
        return prof, prof.sample(args.samples, args.rho_max)
    prof = ParabolicProfile(_params(args), tol)
    return prof, prof.sample(args.samples, args.y_min, args.y_max)


def _cmd_classify(args, tol) -> int:
    fn = classify_rotational if args.family == ROTATIONAL else classify_parabolic
    _emit(sb.json_text(fn(args.H, args.d)), args.out)
    return 0


def _cmd_profile(args, tol) -> int:
    prof, curve = _profile(args, tol)
    if args.format == "csv":
        _emit(sb.csv_text(curve), args.out)
    else:
        data = prof.report.to_dict()
        data.update({
            curve.header[0]: curve.abscissa.tolist(),
            "u": curve.u.tolist(),
            curve.header[2]: [v if math.isfinite(v) else None for v in curve.slope.tolist()],
            "reference": curve.reference,
        })
        _emit(json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    return 0


def _cmd_mesh(args, tol) -> int:
    _, curve = _profile(args, tol)
    p = curve.params
    shape = curve
    if args.reflect:
        shape = sb.reflect_union(sb.normalize_for_reflection(curve))
        if args.periods > 1:
            shape = shape.periodic_extension(args.periods)
    if args.family == ROTATIONAL:
        mesh = sb.sweep_rotational(shape, p, args.n_theta)
    else:
        mesh = sb.sweep_parabolic(shape, p, tuple(args.x_range), args.n_x)
    _emit(sb.obj_text(mesh), args.out)
    return 0


def read_grid(path: str) -> np.ndarray:
    """Read ``x,y`` points from a CSV with a header row naming the columns."""
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or not {"x", "y"} <= set(rows[0]):
        raise ValueError(f"{path}: expected a header with columns x,y")
    return np.array([[float(r["x"]), float(r["y"])] for r in rows])


def _stats(values: list, target: float) -> dict:
    if not values:
        return {"count": 0}
    a = np.asarray(values)
    return {
        "count": int(a.size),
        "mean": float(a.mean()),
        "min": float(a.min()),
        "max": float(a.max()),
        "max_abs_dev": float(np.abs(a - target).max()),
    }


def _cmd_verify(args, tol) -> int:
    prof = RotationalProfile(_params(args), tol) if args.family == ROTATIONAL else ParabolicProfile(_params(args), tol)
    graph = prof.graph()
    model = Model.DISK if args.family == ROTATIONAL else Model.HALF_PLANE
    space = AmbientSpace(model, args.tau)
    oracles = ("div", "pde") if args.oracle == "both" else (args.oracle,)
    grid = read_grid(args.grid)

    # the second-order oracle lives on the half-plane; disk graphs go through the Cayley lift
    pde_space, pde_graph, to_pde = space, graph, (lambda x, y: (x, y))
    if "pde" in oracles and model is Model.DISK:
        from .ambient import cayley_lift

        pde_space = AmbientSpace(Model.HALF_PLANE, args.tau)
        pde_graph = disk_graph_to_half_plane(args.tau, graph)

        def to_pde(x, y):
            q = cayley_lift(args.tau, (x, y, 0.0))
            return q.x, q.y

    measured = {name: [] for name in oracles}
    skipped = 0
    for x, y in grid:
        try:
            row = {}
            for name in oracles:
                if name == "div":
                    row[name] = mean_curvature(space, graph, x, y, oracle="div", h=args.step)
                else:
                    px, py = to_pde(x, y)
                    row[name] = mean_curvature(pde_space, pde_graph, px, py, oracle="pde", h=args.step)
        except (CMCError, ValueError, ArithmeticError):
            skipped += 1
            continue
        for name, v in row.items():
            measured[name].append(v)

    report = {
        "schema": "cmc-psl2/verify-report",
        "version": 1,
        "family": args.family,
        "H_target": args.H,
        "d": args.d,
        "tau": args.tau,
        "pitch": args.pitch,
        "points": int(len(grid)),
        "skipped": skipped,
        "step": args.step,
    }
    for name in oracles:
        report[name] = _stats(measured[name], args.H)
    if len(oracles) == 2 and measured["div"]:
        report["max_oracle_gap"] = float(np.abs(np.subtract(measured["div"], measured["pde"])).max())
    _emit(json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n", args.out)
    return 0


def _cmd_growth(args, tol) -> int:
    alpha = -args.d
    u, ratio = end_growth(alpha, args.tau, args.rho, tol)
    beta = growth_coefficient(alpha, args.tau)
    report = {
        "alpha": alpha,
        "tau": args.tau,
        "rho": args.rho,
        "u": u,
        "ratio": ratio,
        "beta": beta,
        "relative_error": abs(ratio - beta) / beta,
    }
    _emit(_dump(report), args.out)
    return 0


COMMANDS = {
    "classify": _cmd_classify,
    "profile": _cmd_profile,
    "mesh": _cmd_mesh,
    "verify": _cmd_verify,
    "growth": _cmd_growth,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tol = _tolerance()
        return COMMANDS[args.command](args, tol)
    except EmptyFamily as exc:
        print(f"empty family: {exc}", file=sys.stderr)
        return 2
    except (CMCError, OSError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
