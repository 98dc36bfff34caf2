"""Command-line front end.

Data goes to stdout (or ``--out``), diagnostics to stderr.  Exit status is 0
on success, 1 on a domain error and 2 when a threshold scan finds nothing.
Floats are written with 17 significant digits so CSV output round-trips.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import channel_mc as mc
from . import violation as vio
from .entropy import renyi_entropy
from .errors import ConditioningError, DomainError, NotFoundError
from .kkt_geometry import AscentConfig, membership, support_necessary_test
from .tnorm import gradient, hessian, phi, tnorm

SWEEP_FIELDS = ["k", "t", "p", "bound", "D_nats", "a_star", "gamma_top"]


def fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return f"{float(v):.17g}"
    if isinstance(v, (list, tuple, np.ndarray)):
        return ";".join(fmt(x) for x in np.asarray(v).ravel().tolist())
    return str(v)


def _jsonable(v):
    if isinstance(v, np.ndarray):
        return [_jsonable(x) for x in v.tolist()]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (np.floating, float)):
        v = float(v)
        return v if math.isfinite(v) else str(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_rows(rows: list[dict], fields: list[str], fmt_name: str, stream) -> None:
    if fmt_name == "json":
        json.dump([{f: _jsonable(r[f]) for f in fields} for r in rows], stream, indent=1)
        stream.write("\n")
        return
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([fmt(r[f]) for f in fields])


def read_sweep_csv(text: str) -> list[vio.SweepRecord]:
    """Parse sweep CSV back into records (nats header only)."""
    rows = csv.DictReader(io.StringIO(text))
    return [vio.SweepRecord(int(r["k"]), float(r["t"]), float(r["p"]), r["bound"], float(r["D_nats"]),
                            float(r["a_star"]), float(r["gamma_top"])) for r in rows]


def _floats(s: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in s.split(",") if v.strip()])
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {s!r}")


def _ints(s: str) -> list[int]:
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {s!r}")


def _krange(s: str) -> list[int]:
    try:
        if ".." in s:
            a, b = s.split("..")
            return list(range(int(a), int(b) + 1))
        return [int(s)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected K or K1..K2, got {s!r}")


def _order(s: str) -> float:
    return math.inf if s.lower() in ("inf", "infinity") else float(s)


def _t_mode(s: str):
    if s in ("free", "inverse-k"):
        return s
    if s.startswith("fixed="):
        return float(s.split("=", 1)[1])
    raise argparse.ArgumentTypeError("t-mode is free, inverse-k or fixed=T")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--bits", action="store_true", help="report entropies in bits")
    common.add_argument("--out", help="write data here instead of stdout")

    ap = argparse.ArgumentParser(prog="freemoe", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tnorm", parents=[common])
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--x", type=_floats, required=True)
    p.add_argument("--gradient", action="store_true")
    p.add_argument("--hessian", action="store_true")

    p = sub.add_parser("phi", parents=[common])
    p.add_argument("--u", type=float, required=True)
    p.add_argument("--t", type=float, required=True)

    p = sub.add_parser("xopt", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--p", type=_order, default=1.0)

    p = sub.add_parser("membership", parents=[common])
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=_floats, required=True)
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)

    pv = sub.add_parser("violation")
    vsub = pv.add_subparsers(dest="action", required=True)
    p = vsub.add_parser("sweep", parents=[common])
    p.add_argument("--k", type=_krange, required=True)
    p.add_argument("--t-grid", type=int, default=vio.GRID_N)
    p.add_argument("--p", type=_order, default=1.0)
    p.add_argument("--bound", choices=["exact", "hw"], default="exact")
    p = vsub.add_parser("threshold", parents=[common])
    p.add_argument("--p", type=_order, default=1.0)
    p.add_argument("--bound", choices=["exact", "hw"], default="exact")
    p.add_argument("--t-mode", type=_t_mode, default="free")
    p.add_argument("--k-max", type=int, default=1000)
    p = vsub.add_parser("asymptote", parents=[common])
    p.add_argument("--t", required=True, help="a value in (0,1) or inverse-k")
    p.add_argument("--k-list", type=_ints, required=True)

    p = sub.add_parser("simulate", parents=[common])
    p.add_argument("what", choices=["bell", "moe", "outputset"])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--p", type=_order, default=1.0)
    p.add_argument("--slack", type=float, default=0.05)
    p.add_argument("--refine", action="store_true", help="locally optimise the best MOE inputs")
    return ap


def _cmd_tnorm(a, unit):
    res = tnorm(a.x, a.t)
    row = {"value": res.value, "w": res.w if res.w is not None else "", "branch": res.branch.value}
    fields = ["value", "w", "branch"]
    if a.gradient:
        row["gradient"] = gradient(a.x, a.t)
        fields.append("gradient")
    if a.hessian:
        row["hessian"] = hessian(a.x, a.t)
        fields.append("hessian")
    return [row], fields


def _cmd_phi(a, unit):
    return [{"u": a.u, "t": a.t, "phi": phi(a.u, a.t)}], ["u", "t", "phi"]


def _cmd_xopt(a, unit):
    x = vio.x_opt(a.k, a.t)
    return ([{"k": a.k, "t": a.t, "p": a.p, "x_star": x, "H_p": renyi_entropy(x, a.p) / unit}],
            ["k", "t", "p", "x_star", "H_p"])


def _cmd_membership(a, unit):
    lam = a.lam
    v = membership(lam, a.t, AscentConfig(restarts=a.restarts, seed=a.seed))
    ok, m, margin = support_necessary_test(np.sort(lam)[::-1], a.t)
    row = {"status": v.status.value, "slack": v.slack, "gap": v.gap, "certificate": v.certificate,
           "necessary_pass": ok, "worst_m": m, "margin": margin}
    return [row], list(row)


def _cmd_violation(a, unit):
    dcol = "D_nats" if unit == 1.0 else "D_bits"
    if a.action == "sweep":
        recs = vio.sweep(a.k, a.p, vio.Bound.parse(a.bound), a.t_grid)
        rows = [dict(r.as_dict(), **{dcol: r.D / unit}) for r in recs]
        return rows, [dcol if f == "D_nats" else f for f in SWEEP_FIELDS]
    if a.action == "threshold":
        k, t, d = vio.threshold_k(a.p, vio.Bound.parse(a.bound), a.t_mode, a.k_max)
        mode = a.t_mode if isinstance(a.t_mode, str) else f"fixed={a.t_mode}"
        return ([{"p": a.p, "bound": vio.Bound.parse(a.bound).value, "t_mode": mode, "k": k, "t": t, dcol: d / unit}],
                ["p", "bound", "t_mode", "k", "t", dcol])
    t = a.t if a.t == "inverse-k" else float(a.t)
    rows = vio.asymptotic_check(t, a.k_list)
    extra = "ratio" if t == "inverse-k" else "gap"
    for r in rows:
        for f in ("D", "limit", extra):
            if f != "ratio":
                r[f] = r[f] / unit
    return rows, ["k", "t", "D", "limit", extra]


def _cmd_simulate(a, unit):
    d = mc.input_dimension(a.k, a.n, a.t)

    def one(trial):
        s = mc.sample_isometry(a.k, a.n, d, a.seed, trial)
        base = {"kind": a.what, "k": a.k, "n": a.n, "d": d, "t": a.t, "seed": a.seed, "trial": trial}
        if a.what == "bell":
            ev = mc.bell_output_spectrum(s).eigenvalues
            return dict(base, top=ev[0], value=renyi_entropy(ev, a.p) / unit, eigenvalues=ev)
        if a.what == "moe":
            h = mc.empirical_moe(s, a.p, a.samples, refine=a.refine)
            lim = renyi_entropy(vio.x_opt(a.k, a.t), a.p)
            return dict(base, value=h / unit, limit=lim / unit)
        return dict(base, value=mc.empirical_output_set_check(s, a.t, a.samples, a.slack))

    rows = mc.map_trials(one, range(a.trials))
    fields = ["kind", "k", "n", "d", "t", "seed", "trial", "value"]
    if a.what == "bell":
        fields = fields[:-1] + ["top", "value", "eigenvalues"]
    elif a.what == "moe":
        fields.append("limit")
    return rows, fields


COMMANDS = {"tnorm": _cmd_tnorm, "phi": _cmd_phi, "xopt": _cmd_xopt, "membership": _cmd_membership,
            "violation": _cmd_violation, "simulate": _cmd_simulate}


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    unit = math.log(2) if getattr(args, "bits", False) else 1.0
    if args.command == "violation" and args.action == "sweep" and not args.out:
        print("error: violation sweep needs --out FILE", file=sys.stderr)
        return 1
    try:
        rows, fields = COMMANDS[args.command](args, unit)
    except NotFoundError as e:
        print(f"not found: {e}", file=sys.stderr)
        return 2
    except (DomainError, ConditioningError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_rows(rows, fields, args.format, fh)
    else:
        write_rows(rows, fields, args.format, stdout)
    return 0


def main() -> None:
    sys.exit(run())
