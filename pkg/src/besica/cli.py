"""Command-line entry point: ``besica <command> [flags]``.

CSV columns
  growth     n, gamma, boundary, ratio_num, ratio_den, ratio
  dist/weyl  n, H, size, ratio_num, ratio_den
  lipschitz  n, mode, lhs, rhs, ok
  eca-sweep  code, surjective, preinjective, injective, balanced, goe_word, witness_len
  verify     status, suite, name, anchor, count, detail

Exit status is 0 on success, 1 when a verification check fails and 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from .automaton import lipschitz_check, parse_ca
from .config import parse_config
from .decide1d import eca_sweep, is_injective_z, is_preinjective_z, goe_word
from .errors import BesicaError
from .group import parse_group
from .metrics import besicovitch_profile, fraction_json, weyl_profile
from .sequences import Disks, boundary_size, parse_sequence
from . import verify as _verify


def _emit(out, fmt: str, header: list, rows: list, meta: dict | None = None):
    if fmt == "json":
        records = [dict(zip(header, r)) for r in rows]
        payload = dict(meta or {})
        payload["rows"] = records
        out.write(json.dumps(payload, sort_keys=True, default=_json_default) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([str(x) if not isinstance(x, bool) else str(x).lower() for x in r])
    out.write(buf.getvalue())


def _json_default(x):
    if isinstance(x, Fraction):
        return fraction_json(x)
    raise TypeError(type(x).__name__)


def _group(args):
    return parse_group(args.group, args.cap)


def cmd_growth(args, out) -> int:
    G = _group(args)
    seq = Disks(G)
    E = G.ball(1).elements
    rows = []
    for n in range(args.nmax + 1):
        size = G.growth(n)
        b = boundary_size(seq, n, E)
        q = Fraction(b, size)
        rows.append([n, size, b, q.numerator, q.denominator, f"{float(q):.10f}"] if args.format == "csv"
                    else [n, size, b, q])
    header = ["n", "gamma", "boundary", "ratio_num", "ratio_den", "ratio"] if args.format == "csv" \
        else ["n", "gamma", "boundary", "ratio"]
    _emit(out, args.format, header, rows, {"group": G.describe()})
    return 0


def _pair(args):
    G = _group(args)
    seq = parse_sequence(args.seq, G)
    c1 = parse_config(args.config_a, G, args.states)
    c2 = parse_config(args.config_b, G, args.states)
    return G, seq, c1, c2


def _profile_out(args, out, prof) -> int:
    if args.format == "json":
        out.write(json.dumps(prof.to_dict(), sort_keys=True) + "\n")
    else:
        out.write(prof.to_csv())
    return 0


def cmd_dist(args, out) -> int:
    _, seq, c1, c2 = _pair(args)
    return _profile_out(args, out, besicovitch_profile(c1, c2, seq, args.nmax, args.tail))


def cmd_weyl(args, out) -> int:
    G, seq, c1, c2 = _pair(args)
    window = G.ball(args.window).elements
    return _profile_out(args, out, weyl_profile(c1, c2, seq, args.nmax, window, args.tail))


def cmd_lipschitz(args, out) -> int:
    G, seq, c1, c2 = _pair(args)
    A = parse_ca(args.ca, G)
    rows = []
    ok = True
    for mode in ("disks", "amenable"):
        rep = lipschitz_check(A, c1, c2, seq, range(args.nmax + 1), mode)
        ok = ok and rep.ok
        rows += [[r.n, mode, r.lhs, r.rhs, r.ok] for r in rep.rows]
    _emit(out, args.format, ["n", "mode", "lhs", "rhs", "ok"], rows)
    return 0 if ok else 1


def cmd_eca_sweep(args, out) -> int:
    rows = []
    for r in eca_sweep():
        goe = "".join(map(str, r.goe)) if r.goe is not None else ""
        wl = len(r.witness[0]) if r.witness else 0
        rows.append([r.code, r.surjective, r.preinjective, r.injective, r.balanced, goe, wl])
    _emit(out, args.format, ["code", "surjective", "preinjective", "injective", "balanced", "goe_word",
                             "witness_len"], rows)
    return 0


def cmd_decide(args, out) -> int:
    G = parse_group("Z1", args.cap)
    A = parse_ca(args.ca, G)
    goe = goe_word(A)
    pre, witness = is_preinjective_z(A)
    row = [A.describe(), goe is None, pre, is_injective_z(A),
           "".join(map(str, goe)) if goe is not None else "", len(witness[0]) if witness else 0]
    _emit(out, args.format, ["ca", "surjective", "preinjective", "injective", "goe_word", "witness_len"], [row])
    return 0


_SIZE_KEYS = {
    "pseudometric": ("count", "n_max"),
    "lipschitz": ("count", "n_max"),
    "invariance": ("count", "n_max"),
    "main-theorem": ("candidates",),
}


def cmd_verify(args, out) -> int:
    sizes = {}
    keys = _SIZE_KEYS.get(args.suite, ())
    if args.count is not None and "count" in keys:
        sizes["count"] = args.count
    if args.count is not None and "candidates" in keys:
        sizes["candidates"] = args.count
    if args.nmax is not None and "n_max" in keys:
        sizes["n_max"] = args.nmax
    checks = _verify.run_suite(args.suite, args.seed, **sizes)
    rows = [["PASS" if c.ok else "FAIL", c.suite, c.name, c.anchor, c.count, c.detail] for c in checks]
    _emit(out, args.format, ["status", "suite", "name", "anchor", "count", "detail"], rows,
          {"suite": args.suite, "seed": args.seed, "ok": all(c.ok for c in checks)})
    return 0 if all(c.ok for c in checks) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="besica", description="Besicovitch pseudodistances and cellular automata")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--cap", type=int, default=None, help="ball enumeration cap (default $BESICA_CAP)")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("growth", parents=[common], help="growth and Folner ratio of disks")
    g.add_argument("--group", default="Z2:vn")
    g.add_argument("--nmax", type=int, default=10)
    g.set_defaults(func=cmd_growth)

    pair = argparse.ArgumentParser(add_help=False)
    pair.add_argument("--group", default="Z1")
    pair.add_argument("--seq", default="disks")
    pair.add_argument("--config-a", default="const:0")
    pair.add_argument("--config-b", default="halfline")
    pair.add_argument("--states", type=int, default=2)
    pair.add_argument("--nmax", type=int, default=20)
    pair.add_argument("--tail", type=int, default=1)

    d = sub.add_parser("dist", parents=[common, pair], help="Besicovitch profile of a pair")
    d.set_defaults(func=cmd_dist)
    w = sub.add_parser("weyl", parents=[common, pair], help="Weyl profile over a disk of shifts")
    w.add_argument("--window", type=int, default=2, help="radius of the shift window")
    w.set_defaults(func=cmd_weyl)
    lp = sub.add_parser("lipschitz", parents=[common, pair], help="per-n Lipschitz inequalities")
    lp.add_argument("--ca", default="eca:110")
    lp.set_defaults(func=cmd_lipschitz)

    s = sub.add_parser("eca-sweep", parents=[common], help="decide all 256 elementary rules")
    s.set_defaults(func=cmd_eca_sweep)
    dc = sub.add_parser("decide", parents=[common], help="decide one CA over Z")
    dc.add_argument("--ca", default="eca:110")
    dc.set_defaults(func=cmd_decide)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=_verify.SUITES)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--count", type=int, default=None)
    v.add_argument("--nmax", type=int, default=None)
    v.add_argument("--tol", type=float, default=None, help="unused by suites with exact checks")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except BesicaError as exc:
        print(f"besica: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
