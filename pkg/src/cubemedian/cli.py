"""Command-line front end: build, analyze and classify.

Exit codes: 0 success, 1 input or precondition error, 2 budget exhausted
or the window too small to decide.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

import numpy as np

from . import __version__, config
from . import classification as cls_mod
from . import serialization as ser
from .errors import Inconclusive, InputError, ResourceError, StructuralError
from .median_core import classify_subset, hull
from .presentations import (DefiningGraph, finite_type, presentation_from_json,
                            presentation_to_json)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


# --------------------------------------------------------------------------
# plumbing

def _common(p):
    p.add_argument("--budget-states", type=int, default=None)
    p.add_argument("--budget-geodesics", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="output directory for artifacts")
    p.add_argument("--dot", action="store_true", help="also write a DOT drawing")
    p.add_argument("--timing", action="store_true",
                   help="record wall-clock time (reports are then not byte-stable)")


def _config(args) -> dict:
    skip = {"func", "timing"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(args, name, doc, extra_files=()):
    text = ser.dumps(doc)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
            fh.write(text)
        for fname, content in extra_files:
            with open(os.path.join(args.out, fname), "w", encoding="utf-8") as fh:
                fh.write(content)
    sys.stdout.write(text)


def _json_arg(text, what):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} is not valid JSON: {exc}") from None


def _graph_from_doc(doc) -> DefiningGraph:
    if "graph6" in doc:
        return cls_mod.graph_from_graph6(doc["graph6"])
    try:
        return DefiningGraph.from_edges([str(v) for v in doc["vertices"]],
                                        [tuple(map(str, e)) for e in doc.get("edges", [])])
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad graph document: {exc}") from None


# --------------------------------------------------------------------------
# build

def cmd_build(args) -> int:
    from .builders import cayley, hexagon, tilings, walls
    t0 = time.perf_counter()
    extra = []
    result = {}
    cert = {}
    if args.racg or args.raag or args.graph_product or args.presentation:
        path = args.racg or args.raag or args.graph_product or args.presentation
        pres = presentation_from_json(ser.read_json(path))
        if args.radius is None:
            raise InputError("--radius is required")
        if pres.kind in ("RACG", "RAAG"):
            ball = cayley.standard_ball(pres, args.radius, args.budget_states)
        else:
            ball = cayley.graph_product_ball(pres, args.radius, args.budget_states)
        result = {"presentation": presentation_to_json(pres), "ball": ser.ball_to_json(ball)}
        cert = {"exact": ball.exact, "median_host": ball.median_host}
        summary = {"vertices": ball.n, "edges": ball.m, "hyperplanes": len(ball.theta)}
    elif args.tiling or args.grid:
        if args.halfwidth is None:
            raise InputError("--halfwidth is required")
        if args.tiling:
            action = tilings.AffineAction.from_json(ser.read_json(args.tiling))
        else:
            action = tilings.translation_action(args.grid)
        ball = tilings.tiling_window(action, args.halfwidth)
        exact = action.check_relations()
        windowed = {r: tilings.window_relation_holds(ball, r) for r in action.relations_declared}
        result = {"ball": ser.ball_to_json(ball), "relations": exact, "window_relations": windowed}
        cert = {"exact": True, "relations_verified": all(exact.values()) and all(windowed.values())}
        summary = {"vertices": ball.n, "hyperplanes": len(ball.theta)}
        if not cert["relations_verified"]:
            _emit(args, "window.json", ser.report("build", _config(args), cert, result))
            return EXIT_INPUT
    elif args.hexagon is not None:
        c = hexagon.hexagon_complex(args.hexagon)
        link = hexagon.npc_link_check(c)
        src, tgt, phi, psi = hexagon.hexagon_isomorphism(args.hexagon)
        tz = hexagon.tietze_verify(src, tgt, phi, psi, budget=args.budget_states)
        result = {"labels": list(c.labels), "squares": [hexagon.show(s) for s in c.squares],
                  "npc": {"status": link.status, "reason": link.reason},
                  "display": tgt.display(), "tietze": tz.status}
        cert = {"npc": link.status, "tietze": tz.status}
        summary = {"squares": len(c.squares)}
        ball = None
    elif args.niblo_reeves:
        pres = presentation_from_json(ser.read_json(args.niblo_reeves))
        if args.radius is None:
            raise InputError("--radius is required")
        ws = walls.niblo_reeves_walls(pres, args.radius, args.budget_states)
        stabs = walls.wall_stabilizers(ws)
        ball = ws.ball
        result = {"walls": ws.to_json(),
                  "stabilizers": [{"wall": s.wall, "agrees": s.agrees, "tested": s.tested,
                                   "undecided": s.undecided} for s in stabs]}
        cert = {"stabilizers_agree": sum(s.agrees for s in stabs), "stabilizers": len(stabs)}
        summary = {"points": ball.n, "walls": len(ws.walls)}
    else:
        raise InputError("nothing to build: give one of --racg, --raag, --graph-product, "
                         "--tiling, --grid, --hexagon, --niblo-reeves")
    result["summary"] = summary
    if args.dot and ball is not None:
        extra.append(("artifact.dot", ser.to_dot(ball)))
    timing = {"seconds": time.perf_counter() - t0} if args.timing else None
    _emit(args, "artifact.json", ser.report("build", _config(args), cert, result, timing), extra)
    return EXIT_OK


# --------------------------------------------------------------------------
# analyze

def _members(ball, args):
    from .builders import tilings
    if args.members:
        out = []
        for tok in args.members.split(";"):
            tok = tok.strip()
            if not tok:
                continue
            out.append(int(tok) if tok.isdigit() else ball.vid(tok))
        return out
    if args.orbit:
        names = args.names.split(",") if args.names else None
        return sorted(tilings.path_orbit(ball, args.orbit, names=names, cyclic=args.cyclic))
    raise InputError("give --members or --orbit")


def _halfspace_json(ball, hs):
    return {"class": int(hs[0]), "sign": int(hs[1])}


def cmd_analyze(args) -> int:
    from . import subalgebra as sa
    t0 = time.perf_counter()
    doc = ser.read_json(args.artifact)
    if "result" in doc and "ball" in doc["result"]:
        doc = doc["result"]["ball"]
    ball = ser.ball_from_json(doc)
    members = _members(ball, args)
    try:
        view = sa.analyze_subalgebra(ball, members)
    except StructuralError as exc:
        labels = [ball.labels[v] for v in exc.witness] if exc.witness else [None] * 4
        _emit(args, "analysis.json", ser.report(
            "analyze", _config(args), {}, {"error": str(exc), "witness_triple": labels[:3],
                                           "missing_median": labels[3]}))
        return EXIT_INPUT
    verdict, c = classify_subset(ball, members)
    H, hcert, hull_iters = hull(ball, members)
    result = {"members": len(view.member_list), "verdict": verdict,
              "hull_size": len(H), "hull_iterations": hull_iters,
              "edge_connected": view.edge_connected, "res_injective": view.res_injective,
              "walls_of_M": len(view.walls_of_M)}
    certs = {"classification": c.status, "hull": hcert.status}
    witnesses = []
    if view.edge_connected and verdict != "convex":
        for n in range(args.grids + 1):
            w = sa.find_grid(view, n)
            if w is None:
                break
            witnesses.append({"n": n, "center": ball.labels[w.center],
                              "center_distance": w.center_distance,
                              "h_chain": [_halfspace_json(ball, h) for h in w.h_chain],
                              "k_chain": [_halfspace_json(ball, k) for k in w.k_chain]})
    result["grid_witnesses"] = witnesses
    if args.qc is not None:
        prof = sa.qc_profile(view, args.qc)
        result["escape"] = prof["escape"]
        certs["qc_truncated_pairs"] = prof["truncated_pairs"]
    if witnesses and not args.no_alpha:
        h = tuple(witnesses[0]["h_chain"][0].values())
        k = tuple(witnesses[0]["k_chain"][0].values())
        r = sa.minimal_geodesic_alpha(view, h, k, budget=args.budget_geodesics)
        result["alpha"] = {
            "h": _halfspace_json(ball, h), "k": _halfspace_json(ball, k),
            "p": ball.labels[r.p], "q": ball.labels[r.q],
            "path": [ball.labels[v] for v in r.path], "profile": r.profile,
            "segments": [[kd, ln] for kd, ln in r.segments], "minimal": r.minimal,
            "exhaustive": r.exhaustive, "transverse_ok": r.transverse_ok,
            "disjoint_ok": r.disjoint_ok, "k_observed": r.k_observed,
            "carrier_density": r.carrier_density}
    extra = []
    if args.dot:
        hs = [(h["class"], h["sign"]) for w in witnesses[-1:] for h in w["h_chain"] + w["k_chain"]]
        extra.append(("analysis.dot", ser.to_dot(ball, view.member_list, hs)))
    timing = {"seconds": time.perf_counter() - t0} if args.timing else None
    _emit(args, "analysis.json", ser.report("analyze", _config(args), certs, result, timing), extra)
    return EXIT_OK


# --------------------------------------------------------------------------
# classify

def _graphs_for(args):
    if args.graph6:
        return [cls_mod.graph_from_graph6(args.graph6)]
    if args.graph:
        return [_graph_from_doc(ser.read_json(args.graph))]
    return []


def cmd_classify(args) -> int:
    t0 = time.perf_counter()
    what = args.what
    cert = {}
    if what == "vb":
        A = _json_arg(args.matrix, "--matrix")
        vb = cls_mod.virtual_basis_of_matrix(A)
        if args.act:
            vb = cls_mod.pgl_act(_json_arg(args.act, "--act"), vb)
        result = vb.to_json()
    elif what == "dinf":
        result = cls_mod.dinf_classify(_json_arg(args.images, "--images")).to_json()
    elif what == "squares":
        if args.all_graphs is not None:
            g, s, bad = cls_mod.square_sweep(args.all_graphs)
            result = {"graphs": g, "squares": s, "disagreements": len(bad),
                      "examples": [list(b) for b in bad[:10]]}
        elif args.random_graphs:
            rng = random.Random(args.seed)
            n = args.vertices
            edges = n * (n - 1) // 2
            codes = [rng.getrandbits(edges) for _ in range(args.random_graphs)]
            g, s, bad = cls_mod.square_sweep(n, codes)
            result = {"graphs": g, "squares": s, "disagreements": len(bad)}
        else:
            graphs = _graphs_for(args)
            if not graphs:
                raise InputError("give --all-graphs, --random-graphs, --graph or --graph6")
            result = {"squares": [c.to_json() for c in cls_mod.classify_squares(graphs[0])],
                      "maximal_hyperoctahedra": [sorted(h) for h in
                                                 cls_mod.maximal_hyperoctahedra(graphs[0])]}
        cert = {"conditions_agree": result.get("disagreements", 0) == 0}
    elif what == "twists":
        graphs = _graphs_for(args)
        if not graphs:
            raise InputError("give --graph or --graph6")
        gr = graphs[0]
        pairs = cls_mod.twist_pairs(gr)
        result = {"twist_pairs": [list(p) for p in pairs], "twistless": not pairs,
                  "kappa": {v: sorted(cls_mod.kappa(gr, v)) for v in gr.vertices}}
    elif what == "richardson":
        if args.type:
            pres, name = finite_type(args.type), args.type
        elif args.coxeter:
            pres, name = presentation_from_json(ser.read_json(args.coxeter)), args.coxeter
        else:
            raise InputError("give --type or --coxeter")
        rep = cls_mod.richardson_check(pres, budget=args.budget_states, name=name)
        result = rep.to_json(pres.labels)
        cert = {"all_verified": rep.all_verified}
    else:  # pragma: no cover - argparse restricts the choices
        raise InputError(f"unknown classification {what!r}")
    timing = {"seconds": time.perf_counter() - t0} if args.timing else None
    _emit(args, f"classify-{what}.json", ser.report("classify", _config(args), cert, result, timing))
    return EXIT_OK


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubemedian", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"cubemedian {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="materialise a window, complex or wall system")
    src = b.add_mutually_exclusive_group()
    src.add_argument("--racg")
    src.add_argument("--raag")
    src.add_argument("--graph-product")
    src.add_argument("--presentation")
    src.add_argument("--tiling", help="affine action JSON")
    src.add_argument("--grid", type=int, help="box window of Z^n with translations")
    src.add_argument("--hexagon", type=int, metavar="N")
    src.add_argument("--niblo-reeves", help="Coxeter presentation JSON")
    b.add_argument("--radius", type=int)
    b.add_argument("--halfwidth", type=int)
    _common(b)
    b.set_defaults(func=cmd_build)

    a = sub.add_parser("analyze", help="subalgebra diagnostics on a window artifact")
    a.add_argument("artifact")
    a.add_argument("--members", help="';'-separated vertex ids or labels")
    a.add_argument("--orbit", action="append", help="word; orbit of the geodesic base → word·base")
    a.add_argument("--names", help="restrict the orbit to these generators (comma-separated)")
    a.add_argument("--cyclic", action="store_true", help="orbit under the given words only")
    a.add_argument("--grids", type=int, default=8, help="largest grid size to search for")
    a.add_argument("--qc", type=int, default=None, metavar="L", help="escape profile up to L")
    a.add_argument("--no-alpha", action="store_true")
    _common(a)
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("classify", help="discrete classification procedures")
    c.add_argument("what", choices=["vb", "dinf", "squares", "twists", "richardson"])
    c.add_argument("--matrix")
    c.add_argument("--act", help="rational matrix applied to the basis afterwards")
    c.add_argument("--images", help="JSON list of signed permutation matrices")
    c.add_argument("--all-graphs", type=int, metavar="N")
    c.add_argument("--random-graphs", type=int, metavar="K")
    c.add_argument("--vertices", type=int, default=8)
    c.add_argument("--graph")
    c.add_argument("--graph6")
    c.add_argument("--type")
    c.add_argument("--coxeter")
    _common(c)
    c.set_defaults(func=cmd_classify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.budget_states is not None and args.budget_states <= 0:
        print("error: budgets must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, StructuralError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceError, Inconclusive) as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
