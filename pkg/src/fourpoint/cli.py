"""Command-line entry point: ``fourpoint <subcommand> ...``.

Exit codes: 0 when every checked property passed, 1 when one failed (the
report is still written), 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import mappings as mp
from . import quad, space as sp, theorem_lab as lab
from .funcdsl import FuncDslError, control, dyadic

PROPERTIES = ("ptolemaic", "additive", "hyperbolic", "roundness", "cat0", "reshetnyak", "custom")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9, help="relative tolerance")
    p.add_argument("--out", help="write output here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="fourpoint", description="Four-point inequalities on finite semimetric spaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="check one property of a space")
    p.add_argument("--space", required=True)
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--delta", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--phi")
    p.add_argument("--psi")
    p.add_argument("--distinct", action="store_true", help="scan mutually distinct quadruples only")

    p = sub.add_parser("analyze", parents=[common], help="classify a space")
    p.add_argument("--space", required=True)
    p.add_argument("--q-cap", type=float, default=64.0)

    p = sub.add_parser("gen", parents=[common], help="generate a space")
    p.add_argument("kind", choices=("random", "tree", "ultrametric", "semimetric", "lp-points"))
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--p", type=float, default=2.0)
    p.add_argument("--leaves-only", action="store_true")

    p = sub.add_parser("transform", parents=[common], help="snowflake or scale a space")
    p.add_argument("--space", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--alpha", type=float, help="snowflake exponent")
    g.add_argument("--lambda", dest="lam", type=float, help="scale factor")
    p.add_argument("--map", action="store_true", help="emit the map JSON instead of the target space")

    p = sub.add_parser("map-verify", parents=[common], help="verify a map")
    p.add_argument("--map", required=True, dest="map_path")
    p.add_argument("--kind", required=True, choices=("qs", "qm", "mobius"))
    p.add_argument("--eta", default="t")

    p = sub.add_parser("envelope", parents=[common], help="write the (t, r) envelope CSV of a map")
    p.add_argument("--map", required=True, dest="map_path")

    p = sub.add_parser("theorem", parents=[common], help="grid-check a transfer hypothesis")
    p.add_argument("--hyp", required=True, choices=("qs", "qs-add", "qm", "ptolemy-qs"))
    p.add_argument("--phi", default="u+v")
    p.add_argument("--psi", default="u*v")
    p.add_argument("--eta", default="t")
    p.add_argument("--kmin", type=int, default=-6)
    p.add_argument("--kmax", type=int, default=6)

    p = sub.add_parser("experiment", parents=[common], help="run an experiment battery config")
    p.add_argument("--config", required=True)
    return parser


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _check(args):
    s = sp.load_space(args.space)
    prop = args.property
    inc = not args.distinct
    if prop == "ptolemaic":
        rep = quad.check_ptolemaic(s, inc, args.tol)
    elif prop == "additive":
        rep = quad.check_additive(s, inc, args.tol)
    elif prop == "hyperbolic":
        if args.delta is None:
            raise UsageError("--property hyperbolic needs --delta")
        rep = quad.check_delta_hyperbolic(s, args.delta, inc, args.tol)
    elif prop == "roundness":
        if args.q is None:
            raise UsageError("--property roundness needs --q")
        rep = quad.check_roundness_at(s, args.q, args.tol)
    elif prop == "cat0":
        rep = quad.check_cat0_quadrilateral(s, args.tol)
    elif prop == "reshetnyak":
        rep = quad.check_reshetnyak(s, args.tol)
    else:
        if not args.phi or not args.psi:
            raise UsageError("--property custom needs --phi and --psi")
        rep = quad.check_quadruple_pair(s, dyadic(args.phi), dyadic(args.psi), inc, args.tol)
    return rep.to_dict(), rep.passed


def _analyze(args):
    s = sp.load_space(args.space)
    c = quad.classify(s, rtol=args.tol, q_cap=args.q_cap)
    out = {"pass": True, "space": {"labels": list(s.labels), "n": s.n}, "classification": c.to_dict()}
    return out, True


def _gen(args):
    k, n, seed = args.kind, args.n, args.seed
    if k == "random":
        s = sp.gen_random_metric(n, seed)
    elif k == "tree":
        s = sp.gen_random_tree_metric(n, seed, leaves_only=args.leaves_only)
    elif k == "ultrametric":
        s = sp.gen_random_ultrametric(n, seed)
    elif k == "semimetric":
        s = sp.gen_random_semimetric(n, seed)
    else:
        s = sp.from_points_lp(sp.gen_random_points(n, args.dim, seed), args.p)
    return sp.space_to_dict(s), True


def _transform(args):
    s = sp.load_space(args.space)
    if args.alpha is not None:
        m = mp.make_transform_map(s, "snowflake", args.alpha)
    else:
        m = mp.make_transform_map(s, "scale", args.lam)
    return (mp.map_to_dict(m) if args.map else sp.space_to_dict(m.target)), True


def _load_map(path):
    with open(path) as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise sp.SpaceError(f"invalid JSON in {path}: {exc}") from None
    return mp.map_from_dict(obj)


def _map_verify(args):
    m = _load_map(args.map_path)
    if args.kind == "qs":
        rep = mp.verify_quasisymmetric(m, control(args.eta), args.tol)
        return rep.to_dict(), rep.passed
    if args.kind == "qm":
        rep = mp.verify_quasimobius(m, control(args.eta), args.tol)
        return rep.to_dict(), rep.passed
    dev = mp.mobius_deviation(m)
    ok = dev <= args.tol
    return {"property": "mobius", "pass": ok, "max_deviation": dev, "tol": args.tol}, ok


def _theorem(args):
    grid = lab.t_grid(args.kmin, args.kmax)
    if args.hyp == "qs":
        rep = lab.check_hyp_qs_general(args.phi, args.psi, args.eta, grid, args.tol)
    elif args.hyp == "qs-add":
        rep = lab.check_hyp_qs_additive(args.phi, args.eta, grid, args.tol)
    elif args.hyp == "qm":
        rep = lab.check_hyp_qm(args.phi, args.eta, grid, args.tol)
    else:
        rep = lab.check_hyp_ptolemy_qs(args.eta, grid, args.tol)
    return rep.to_dict(), rep.passed


def _experiment(args):
    try:
        cfg = lab.load_battery(args.config)
    except json.JSONDecodeError as exc:
        raise sp.SpaceError(f"invalid JSON in {args.config}: {exc}") from None
    out = lab.run_battery(cfg)
    return out, out["pass"]


_HANDLERS = {
    "check": _check,
    "analyze": _analyze,
    "gen": _gen,
    "transform": _transform,
    "map-verify": _map_verify,
    "theorem": _theorem,
    "experiment": _experiment,
}


def run(argv=None) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "envelope":
            m = _load_map(args.map_path)
            _emit(mp.envelope_to_csv(m), args.out)
            return 0
        report, ok = _HANDLERS[args.command](args)
    except UsageError as exc:
        print(f"fourpoint: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError, TypeError, FuncDslError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"fourpoint: error: {type(exc).__name__}: {msg}", file=sys.stderr)
        return 2
    _emit(_dump(report), args.out)
    return 0 if ok else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
