"""Command-line front end.

Every subcommand writes deterministic JSON (or CSV for ``rootdata --table``)
to stdout or ``--out``. Exit codes: 0 success, 1 validation error, 2
numerical failure or a failed verification.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import causal, fock, liealg, nets, rootdata, verify
from .errors import NumericalError, ValidationError
from .hilbert import subspace_distance
from .io import csv_text, dumps, encode_matrix, frame_from_json, frame_to_json, read_json
from .modular import modular_pair, standard_from_pair

EXIT_OK, EXIT_INVALID, EXIT_NUMERICAL = 0, 1, 2


def _vector(text, dtype=float):
    """Parse a JSON list of numbers; complex entries are [re, im] pairs."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as err:
        raise ValidationError(f"not a JSON list: {text!r}") from err
    if not isinstance(obj, list) or not obj:
        raise ValidationError(f"expected a non-empty JSON list, got {text!r}")
    arr = np.asarray(obj, dtype=float)
    if dtype is complex:
        if arr.ndim == 2 and arr.shape[1] == 2:
            return arr[:, 0] + 1j * arr[:, 1]
        if arr.ndim == 1:
            return arr.astype(complex)
    if arr.ndim != 1:
        raise ValidationError(f"expected a flat list of numbers, got shape {arr.shape}")
    return arr


def _emit(args, payload):
    text = payload if isinstance(payload, str) else dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_modular(args):
    v = frame_from_json(read_json(args.from_frame))
    pair = modular_pair(v)
    back = standard_from_pair(pair)
    return {
        "delta": encode_matrix(pair.delta),
        "j_matrix": encode_matrix(pair.j.matrix),
        "modular_residual": pair.modular_residual(),
        "round_trip_distance": subspace_distance(back, v),
        "subspace": frame_to_json(v),
    }


def cmd_euler(args):
    g = liealg.catalog(args.algebra)
    if args.element.lstrip().startswith("["):
        h = _vector(args.element)
    else:
        h = g.named(args.element)
    chk = liealg.euler_check(g, h)
    out = {"algebra": args.algebra, "element": args.element, "is_euler": chk.is_euler, "reason": chk.reason,
           "symmetric": None, "symmetry_verdict": "n/a"}
    if chk.is_euler:
        res = liealg.symmetric_euler_search(g, chk.datum, budget=args.budget, seed=args.seed)
        out["symmetry_verdict"] = res.symmetric.value
        out["symmetric"] = {"confirmed": True, "refuted": False}.get(res.symmetric.value)
        out["grading_dims"] = {str(k): v for k, v in chk.datum.dims().items()}
    return out


def cmd_rootdata(args):
    if args.table:
        return rootdata.classification_table()
    if not args.type or args.rank is None:
        raise ValidationError("rootdata needs --table or both --type and --rank")
    rs = rootdata.root_system(args.type, args.rank)
    return {
        "type": rs.type,
        "rank": rs.rank,
        "euler": rootdata.euler_indices(args.type, args.rank),
        "symmetric_euler": rootdata.symmetric_indices(args.type, args.rank),
    }


def cmd_wedge(args):
    x = _vector(args.point)
    if args.model == "affine":
        spaces = {s.name: s for s in causal.affine_catalog()}
        if args.space not in spaces:
            raise ValidationError(f"unknown space {args.space!r}; choose from {sorted(spaces)}")
        return {"model": "affine", "space": args.space, "inside": spaces[args.space].contains(x, args.tol)}
    if args.model == "rindler":
        return {"model": "rindler", "inside": causal.rindler_contains(x)}
    if args.model == "de-sitter":
        return {"model": "de-sitter", "inside": causal.ds_positivity_contains(x)}
    if args.model == "anti-de-sitter":
        inside, comp = causal.ads2_positivity_contains(x)
        return {"model": "anti-de-sitter", "inside": inside, "component": comp}
    return {"model": "flag", "inside": causal.flag_wedge_contains(x)}


def cmd_semigroup(args):
    spec = read_json(args.input)
    rng = np.random.default_rng(args.seed)
    try:
        kind = spec.get("kind", "rindler")
        if kind == "rindler":
            v, lam = np.asarray(spec["translation"], dtype=float), np.asarray(spec["lorentz"], dtype=float)
        elif kind == "sl2":
            gm = np.asarray(spec["element"], dtype=float)
        else:
            raise ValidationError(f"unknown semigroup kind {kind!r}")
    except (KeyError, TypeError, AttributeError) as err:
        raise ValidationError(f"semigroup input needs kind and its fields ({err})") from err
    if kind == "sl2":
        g = liealg.catalog("sl2")
        inside = causal.group_type_wedge_contains(gm, g.named("h"), g.cones["invariant"], g)
        return {"kind": "sl2", "member": inside}
    member = causal.rindler_compression_contains(v, lam)
    out = {"kind": "rindler", "member": member, "witness": None}
    if not member:
        w = causal.rindler_escape_witness(v, lam, rng)
        out["witness"] = None if w is None else w
    return out


def cmd_net(args):
    if args.scenario:
        scenario = nets.Scenario.from_json(read_json(args.scenario))
        v = nets.bgl_pair(scenario.rep.generator, scenario.rep.j).subspace
    else:
        scenario, build = nets.toy_scenario(rotation_steps=args.rotation_steps)
        v = build.subspace
    mx = nets.net_max(scenario.regions, scenario.rep, v)
    mn = nets.net_min(scenario.regions, scenario.rep, v)
    bw = nets.bw_check(scenario.rep, v)
    return {
        "dims": {k: {"net_max": mx[k].dim, "net_min": mn[k].dim} for k in mx},
        "net_max": mx.to_json(),
        "net_min": mn.to_json(),
        "bw": {"holds": bw.holds, "witness": bw.witness, "defect": bw.defect},
    }


def cmd_fock(args):
    x = _vector(args.x, complex)
    out = {"modes": int(x.size), "degree": args.degree}
    if args.y is not None:
        y = _vector(args.y, complex)
        out["weyl_relation_residual"] = fock.weyl_relation_residual(x, y, args.degree)
    if args.v is not None:
        v = _vector(args.v, complex)
        psi = fock.weyl_apply(x, fock.ExpVector(v, args.degree), tol=args.tol)
        space = fock.fock_space(x.size, args.degree)
        out["weyl_exp_vector"] = fock.fock_vector_to_json(space, psi.coefficients())
        out["tail_bound"] = psi.tail_bound()
    out["weyl_tail"] = fock.weyl_tail(x, args.degree)
    return out


def cmd_verify(args):
    if not args.all and not args.criterion:
        raise ValidationError("verify needs --all or --criterion")
    numbers = sorted(verify.CHECKS) if args.all else sorted(set(args.criterion))
    bad = [k for k in numbers if k not in verify.CHECKS]
    if bad:
        raise ValidationError(f"unknown criteria {bad}")
    results = verify.run_checks(numbers, seed=args.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    report = {"seed": args.seed, "all_passed": all(r.passed for r in results),
              "criteria": [r.to_json() for r in results]}
    return report


def cmd_plot(args):
    from .plotting import PlotConfig, plot_ds2

    config = PlotConfig(orbits=args.orbits, t_max=args.t_max, samples=args.samples, seed=args.seed)
    orbits = plot_ds2(config, args.out)
    if args.csv:
        rows = [(k, t, *p) for k, (ts, pts) in enumerate(orbits) for t, p in zip(ts, pts)]
        with open(args.csv, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(csv_text(["orbit", "t", "x0", "x1", "x2"], rows))
    return None


COMMANDS = {
    "modular": cmd_modular,
    "euler": cmd_euler,
    "rootdata": cmd_rootdata,
    "wedge": cmd_wedge,
    "semigroup": cmd_semigroup,
    "net": cmd_net,
    "fock": cmd_fock,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def build_parser():
    p = argparse.ArgumentParser(prog="modwedge", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="RNG seed (MODWEDGE_SEED overrides)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("modular", help="modular pair of a standard subspace")
    s.add_argument("--from-frame", required=True, help="frame JSON {ambient_dim, columns}")
    s.add_argument("--out")

    s = sub.add_parser("euler", help="Euler test and symmetry search in a catalog algebra")
    s.add_argument("--algebra", required=True, help="e.g. sl3, so(1,3), sp4")
    s.add_argument("--element", required=True, help="basis name (h1) or JSON coordinate list")
    s.add_argument("--budget", type=int, default=40)
    s.add_argument("--out")

    s = sub.add_parser("rootdata", help="Euler coweights from root data")
    s.add_argument("--table", action="store_true", help="CSV classification table")
    s.add_argument("--type")
    s.add_argument("--rank", type=int)
    s.add_argument("--out")

    s = sub.add_parser("wedge", help="wedge-region membership of a point")
    s.add_argument("--model", choices=["affine", "rindler", "de-sitter", "anti-de-sitter", "flag"], default="rindler")
    s.add_argument("--space", default="minkowski4", help="affine catalog space")
    s.add_argument("--point", required=True, help="JSON list of coordinates")
    s.add_argument("--tol", type=float, default=1e-12)
    s.add_argument("--out")

    s = sub.add_parser("semigroup", help="compression-semigroup membership")
    s.add_argument("--input", required=True,
                   help='JSON {"kind": "rindler", "translation", "lorentz"} or {"kind": "sl2", "element"}')
    s.add_argument("--out")

    s = sub.add_parser("net", help="maximal and minimal nets on a region scenario")
    s.add_argument("--scenario", help="scenario JSON; omit for the built-in toy")
    s.add_argument("--rotation-steps", type=int, default=0)
    s.add_argument("--out")

    s = sub.add_parser("fock", help="truncated Weyl operators")
    s.add_argument("--x", required=True, help="JSON vector; complex entries as [re, im]")
    s.add_argument("--y", help="second vector for the Weyl relation residual")
    s.add_argument("--v", help="apply W(x) to the exponential vector Exp(v)")
    s.add_argument("--degree", type=int, default=20)
    s.add_argument("--tol", type=float, default=fock.DEFAULT_TAIL_TOL)
    s.add_argument("--out")

    s = sub.add_parser("verify", help="run acceptance criteria 1-13")
    s.add_argument("--all", action="store_true")
    s.add_argument("--criterion", type=int, action="append")
    s.add_argument("--out")

    s = sub.add_parser("plot", help="SVG of the dS^2 wedge with modular flow orbits")
    s.add_argument("--out", required=True, help="SVG path")
    s.add_argument("--csv", help="also write orbit samples (orbit, t, x0, x1, x2)")
    s.add_argument("--orbits", type=int, default=6)
    s.add_argument("--t-max", type=float, default=2.5)
    s.add_argument("--samples", type=int, default=121)
    return p


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    env = os.environ.get("MODWEDGE_SEED")
    if env is not None:
        try:
            args.seed = int(env)
        except ValueError:
            print(f"error: MODWEDGE_SEED={env!r} is not an integer", file=sys.stderr)
            return EXIT_INVALID
    try:
        payload = COMMANDS[args.command](args)
        if payload is not None:
            _emit(args, payload)
    except ValidationError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    except (NumericalError, np.linalg.LinAlgError) as err:
        print(f"numerical failure: {err}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INVALID
    if args.command == "verify" and not payload["all_passed"]:
        return EXIT_NUMERICAL
    return EXIT_OK


def main():
    sys.exit(run())
