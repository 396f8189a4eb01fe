"""Command-line entry point.

Results go to stdout as JSON. Exit status is 0 on success, 2 when the input
is well formed but the computation rejects it, and 1 on usage errors.
Errors are reported on stderr as ``{"error": {"kind": ..., "message": ...}}``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import io
from .dixon import DixonLinkage, dixon_flex, dixon_flexible
from .framework import Framework, check_flex, flex_from_nac, pframework_flex, symmetric_flex
from .nac import CycleOracle, enumerate_nac, is_cartesian, is_nac, tower_chain
from .penrose import (
    PentagridParams,
    brace,
    generate_patch,
    patch_rigidity,
    select_faces,
    symmetric_patch,
)
from .render import RenderStyle, render_frames
from .ribbons import compute_ribbons, decide_rigidity, decide_symmetric_rigidity, is_ribbon_cutting


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _emit(doc) -> None:
    json.dump(doc, sys.stdout, indent=None, separators=(",", ":"))
    sys.stdout.write("\n")


def _load(path: str, kind: str):
    if not os.path.exists(path):
        raise UsageError(f"no such file: {path}")
    return io.from_json(io.load_file(path), kind)


def _edge_list(edges) -> list:
    return io._edges_out(edges)


def _verdict_doc(v) -> dict:
    doc = {"verdict": v.verdict, "scope": v.scope, "components": [sorted(c) for c in v.components]}
    if v.rigid:
        doc["spanning_tree"] = [list(e) for e in v.spanning_tree]
    else:
        doc["split"] = {str(r): col for r, col in sorted(v.split.items())}
        doc["coloring"] = io.coloring_to_json(v.coloring)
    return doc


# ------------------------------------------------------------- commands


def cmd_nac_check(a) -> dict:
    g = _load(a.graph, "graph")
    c = _load(a.coloring, "coloring")
    nac = CycleOracle(g)(c) if a.oracle else is_nac(g, c)
    return {"nac": nac, "cartesian": is_cartesian(g, c) if nac else None}


def cmd_nac_enumerate(a) -> dict:
    g = _load(a.graph, "graph")
    action = io.action_from_json(io.load_file(a.symmetry), g.vertices) if a.symmetry else None
    found = enumerate_nac(g, a.limit, action)
    return {"count": len(found), "colorings": [io.coloring_to_json(c) for c in found]}


def cmd_nac_tower(a) -> dict:
    t = _load(a.tower, "tower")
    action = io.action_from_json(io.load_file(a.symmetry)) if a.symmetry else None
    chain = tower_chain(t, a.mode, action)
    return {"mode": a.mode, "chain": None if chain is None else [io.coloring_to_json(c) for c in chain]}


def cmd_ribbons(a) -> dict:
    b = _load(a.graph, "braced")
    rd = compute_ribbons(b.base)
    report = is_ribbon_cutting(b.base, rd) if b.base.vertices else None
    return {
        "ribbons": [_edge_list(r) for r in rd.ribbons],
        "simple": list(rd.simple),
        "ribbon_cutting": None if report is None else report.ok,
    }


def cmd_rigidity(a) -> dict:
    b = _load(a.graph, "braced")
    if a.symmetry:
        action = io.action_from_json(io.load_file(a.symmetry), b.base.vertices)
        return _verdict_doc(decide_symmetric_rigidity(b, action))
    return _verdict_doc(decide_rigidity(b))


def _params(a) -> PentagridParams:
    gamma = [Fraction(g) for g in a.gamma]
    window = [tuple(a.window)] * 5 if a.window else None
    radius = Fraction(a.radius) if a.radius else None
    return PentagridParams(gamma, window=window, radius=radius, perturbation=a.perturbation)


def _write_or_embed(doc: dict, out: str | None, summary: dict) -> dict:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)
        return {**summary, "file": out}
    return {**summary, "patch": doc}


def cmd_penrose_generate(a) -> dict:
    p = generate_patch(_params(a))
    summary = {"faces": len(p.faces), "vertices": len(p.graph.vertices), "edges": len(p.graph.edges)}
    return _write_or_embed(io.patch_to_json(p), a.output, summary)


def cmd_penrose_brace(a) -> dict:
    p = _load(a.patch, "patch")
    kw = {"kind": a.kind}
    if a.strategy == "two_ribbons":
        if not a.ribbons or len(a.ribbons) != 4:
            raise UsageError("two_ribbons needs --ribbons J1 K1 J2 K2")
        kw.update(r1=tuple(a.ribbons[:2]), r2=tuple(a.ribbons[2:]))
    elif a.strategy == "all_but_orientation":
        if not a.orientation:
            raise UsageError("all_but_orientation needs --orientation I J")
        kw["orientation"] = a.orientation
    elif a.strategy == "random":
        kw.update(p=a.p, seed=a.seed)
    elif a.strategy == "explicit":
        kw["faces"] = a.faces or []
    faces = select_faces(p, a.strategy, **kw)
    b = brace(p, a.strategy, **kw)
    verdict = patch_rigidity(p, faces)
    fw = Framework(b.graph, exact=p.framework.exact, braces=b.braces)
    doc = {"braced_faces": faces, "verdict": verdict.verdict, "scope": verdict.scope,
           "components": [[list(ln) for ln in sorted(c)] for c in verdict.components]}
    if a.output:
        with open(a.output, "w", encoding="utf-8") as fh:
            json.dump(io.framework_to_json(fw), fh)
        doc["file"] = a.output
    else:
        doc["framework"] = io.framework_to_json(fw)
    return doc


def cmd_penrose_symmetric(a) -> dict:
    p, action = symmetric_patch(Fraction(a.radius), a.variant)
    summary = {"variant": a.variant, "faces": len(p.faces), "vertices": len(p.graph.vertices),
               "symmetry": io.action_to_json(action)}
    return _write_or_embed(io.patch_to_json(p), a.output, summary)


def _load_framework(path: str) -> Framework:
    doc = io.load_file(path)
    if isinstance(doc, dict) and "faces" in doc:
        return io.patch_from_json(doc).framework
    return io.framework_from_json(doc)


def cmd_flex_build(a) -> dict:
    f = _load_framework(a.framework)
    c = _load(a.coloring, "coloring")
    base = _parse_vertex(a.base, f) if a.base is not None else None
    if a.symmetry:
        action = io.action_from_json(io.load_file(a.symmetry), f.graph.vertices)
        x = symmetric_flex(f, action, c, base)
    elif a.mode == "nac":
        x = flex_from_nac(f.graph, c, base_vertex=base)
    else:
        x = pframework_flex(f, c, base)
    return io.flex_to_json(x)


def _parse_vertex(raw: str, f: Framework):
    for v in f.graph.vertices:
        if str(v) == raw:
            return v
    raise ValueError(f"unknown vertex {raw!r}")


def _report_doc(r) -> dict:
    return {
        "max_length_deviation": r.max_length_deviation,
        "nontrivial": r.nontrivial,
        "witness": None if r.witness is None else [list(e) for e in r.witness],
        "max_angle_variation": r.max_angle_variation,
        "equivariance_residual": r.equivariance_residual,
    }


def cmd_flex_check(a) -> dict:
    f = _load_framework(a.framework)
    x = _load(a.flex, "flex")
    action = io.action_from_json(io.load_file(a.symmetry), f.graph.vertices) if a.symmetry else None
    return _report_doc(check_flex(f, x, a.samples, a.tol, action))


def cmd_dixon(a) -> dict:
    d = DixonLinkage(a.x, a.y, a.tail_inf_x, a.tail_inf_y)
    verdict = dixon_flexible(d)
    doc = {"verdict": verdict, "inf_x": d.inf_x, "inf_y": d.inf_y}
    if verdict == "rigid":
        raise DomainError("rigid", doc)
    x = dixon_flex(d)
    frames = []
    for i in range(a.frames):
        t = i / (a.frames - 1) if a.frames > 1 else 0.0
        xs, ys = x.coordinates(t)
        frames.append({"t": t, "x": xs, "y": ys})
    report = check_flex(d.framework(), x, samples=max(a.frames, 64))
    doc.update(c=x.c, shrink=x.shrink, frames=frames, check=_report_doc(report))
    return doc


class DomainError(Exception):
    def __init__(self, message: str, payload: dict | None = None):
        super().__init__(message)
        self.payload = payload or {}


def cmd_render(a) -> dict:
    style = RenderStyle(frames=a.frames, scale=a.scale, ribbon_overlay=a.ribbons)
    coloring = _load(a.coloring, "coloring") if a.coloring else None
    doc = io.load_file(a.input)
    if a.what == "flex":
        x = io.flex_from_json(doc)
        times = [a.t] if a.t is not None else None
        if times is not None and a.frames != 1:
            raise UsageError("--t renders exactly one frame; use --frames 1")
        svgs = render_frames(x, style, coloring, times)
    else:
        f = io.patch_from_json(doc).framework if "faces" in doc else io.framework_from_json(doc)
        svgs = render_frames(f, style, coloring)
    if not a.output:
        return {"frames": svgs}
    files = []
    for i, svg in enumerate(svgs):
        path = a.output if len(svgs) == 1 else _frame_name(a.output, i)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
        files.append(path)
    return {"files": files}


def _frame_name(out: str, i: int) -> str:
    stem, ext = os.path.splitext(out)
    return f"{stem}_{i:03d}{ext or '.svg'}"


# --------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rigidity-kit", description="NAC-colorings, ribbons, bracing and flexes of frameworks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    nac = sub.add_parser("nac", help="NAC-colorings").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = nac.add_parser("check")
    s.add_argument("graph")
    s.add_argument("coloring")
    s.add_argument("--oracle", action="store_true", help="use cycle enumeration")
    s.set_defaults(func=cmd_nac_check)
    s = nac.add_parser("enumerate")
    s.add_argument("graph")
    s.add_argument("--limit", type=int, default=None)
    s.add_argument("--symmetry", help="keep only colorings invariant under this action")
    s.set_defaults(func=cmd_nac_enumerate)
    s = nac.add_parser("tower")
    s.add_argument("tower")
    s.add_argument("--mode", choices=["plain", "monochromatic-ribbons", "symmetric"], default="plain")
    s.add_argument("--symmetry")
    s.set_defaults(func=cmd_nac_tower)

    rib = sub.add_parser("ribbons").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = rib.add_parser("compute")
    s.add_argument("graph")
    s.set_defaults(func=cmd_ribbons)

    rig = sub.add_parser("rigidity").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = rig.add_parser("decide")
    s.add_argument("graph", help="braced graph or framework JSON")
    s.add_argument("--symmetry", help="action JSON")
    s.set_defaults(func=cmd_rigidity)

    pen = sub.add_parser("penrose").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = pen.add_parser("generate")
    s.add_argument("--gamma", nargs=5, required=True)
    win = s.add_mutually_exclusive_group(required=True)
    win.add_argument("--window", nargs=2, type=int, metavar=("KMIN", "KMAX"))
    win.add_argument("--radius")
    s.add_argument("--perturbation", nargs=5, type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_penrose_generate)
    s = pen.add_parser("brace")
    s.add_argument("patch")
    s.add_argument("--strategy", required=True,
                   choices=["two_ribbons", "all_tiles", "all_but_orientation", "random", "explicit"])
    s.add_argument("--kind", choices=["T", "t", "all"], default="T")
    s.add_argument("--ribbons", nargs=4, type=int, metavar=("J1", "K1", "J2", "K2"))
    s.add_argument("--orientation", nargs=2, type=int)
    s.add_argument("--p", type=float, default=0.5)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--faces", nargs="*", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_penrose_brace)
    s = pen.add_parser("symmetric")
    s.add_argument("--variant", choices=["sun", "star"], default="sun")
    s.add_argument("--radius", required=True)
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_penrose_symmetric)

    fl = sub.add_parser("flex").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = fl.add_parser("build")
    s.add_argument("framework")
    s.add_argument("coloring")
    s.add_argument("--mode", choices=["pframework", "nac"], default="pframework")
    s.add_argument("--symmetry")
    s.add_argument("--base")
    s.set_defaults(func=cmd_flex_build)
    s = fl.add_parser("check")
    s.add_argument("framework")
    s.add_argument("flex")
    s.add_argument("--samples", type=int, default=64)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--symmetry")
    s.set_defaults(func=cmd_flex_check)

    dx = sub.add_parser("dixon").add_subparsers(dest="action", required=True, parser_class=_Parser)
    s = dx.add_parser("flex")
    s.add_argument("--x", nargs="+", type=float, required=True)
    s.add_argument("--y", nargs="+", type=float, required=True)
    s.add_argument("--tail-inf-x", type=float)
    s.add_argument("--tail-inf-y", type=float)
    s.add_argument("--frames", type=int, default=8)
    s.set_defaults(func=cmd_dixon)

    rn = sub.add_parser("render")
    rn.add_argument("what", choices=["framework", "flex"])
    rn.add_argument("input")
    rn.add_argument("--coloring")
    rn.add_argument("--frames", type=int, default=1)
    rn.add_argument("--t", type=float)
    rn.add_argument("--scale", type=float, default=40.0)
    rn.add_argument("--ribbons", action="store_true", help="color edges by ribbon")
    rn.add_argument("-o", "--output", help="SVG path; frames get a _NNN suffix")
    rn.set_defaults(func=cmd_render)
    return p


def _fail(kind: str, message: str, code: int, extra: dict | None = None) -> int:
    doc = {"error": {"kind": kind, "message": message, **(extra or {})}}
    sys.stderr.write(json.dumps(doc) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "frames", 1) is not None and getattr(args, "frames", 1) < 1:
            raise UsageError("--frames must be at least 1")
        _emit(args.func(args))
        return 0
    except UsageError as exc:
        return _fail("usage", str(exc), 1)
    except DomainError as exc:
        return _fail("domain", str(exc), 2, exc.payload)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        return _fail(type(exc).__name__, str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
