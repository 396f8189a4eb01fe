"""JSON interchange for the domain types.

Every document may carry ``"format": "rigidity-kit/1"``; any other value, and
any key not listed for the document kind, is rejected. Object keys that name
vertices are strings and are matched back to vertex ids through ``str(v)``.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .cyclotomic import Cyclo5
from .dixon import DixonLinkage
from .framework import Flex, Framework
from .graph import Graph, SymmetryAction, edge_key, ekey, vkey
from .nac import EdgeColoring, TowerInstance
from .penrose import Face, PenrosePatch, PentagridParams
from .ribbons import BracedGraph

FORMAT = "rigidity-kit/1"


class SchemaError(ValueError):
    """Document does not match the interchange schema."""


def _check_keys(doc: Any, kind: str, required: set, optional: set = frozenset()) -> dict:
    if not isinstance(doc, dict):
        raise SchemaError(f"{kind} document must be a JSON object")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise SchemaError(f"unsupported format {fmt!r}; expected {FORMAT!r}")
    keys = set(doc) - {"format"}
    missing = required - keys
    if missing:
        raise SchemaError(f"{kind} document is missing {sorted(missing)}")
    unknown = keys - required - set(optional)
    if unknown:
        raise SchemaError(f"{kind} document has unknown fields {sorted(unknown)}")
    return doc


def _vertex(x) -> Any:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(f"vertex ids must be integers or strings, got {x!r}")
    return x


def _edges_out(edges) -> list:
    return [list(e) for e in sorted(edges, key=ekey)]


def _edges_in(raw, kind: str) -> list[tuple]:
    if not isinstance(raw, list):
        raise SchemaError(f"{kind} must be a list of vertex pairs")
    out = []
    for e in raw:
        if not isinstance(e, list) or len(e) != 2:
            raise SchemaError(f"{kind} entries must be [u, v] pairs")
        out.append((_vertex(e[0]), _vertex(e[1])))
    return out


def _keyed(raw: dict, vertices, kind: str) -> dict:
    if not isinstance(raw, dict):
        raise SchemaError(f"{kind} must be an object keyed by vertex")
    by_name = {str(v): v for v in vertices}
    out = {}
    for k, val in raw.items():
        if k not in by_name:
            raise SchemaError(f"{kind} names unknown vertex {k!r}")
        out[by_name[k]] = val
    return out


def _point_in(p, kind: str) -> tuple:
    if not isinstance(p, list) or len(p) != 2 or not all(isinstance(c, (int, float)) for c in p):
        raise SchemaError(f"{kind} points must be [x, y]")
    return (float(p[0]), float(p[1]))


def _sorted_vertices(vs) -> list:
    return sorted(vs, key=vkey)


# ---------------------------------------------------------------- graphs


def graph_to_json(g: Graph) -> dict:
    return {"format": FORMAT, "vertices": list(g.vertices), "edges": _edges_out(g.edges)}


def graph_from_json(doc: dict) -> Graph:
    _check_keys(doc, "graph", {"vertices", "edges"})
    return _graph(doc)


def _graph(doc: dict) -> Graph:
    if not isinstance(doc.get("vertices"), list):
        raise SchemaError("vertices must be a list")
    return Graph([_vertex(v) for v in doc["vertices"]], _edges_in(doc["edges"], "edges"))


def braced_to_json(b: BracedGraph) -> dict:
    return {**graph_to_json(b.base), "braces": _edges_out(b.braces)}


def braced_from_json(doc: dict) -> BracedGraph:
    """Reads a braced graph, or the graph and braces of a framework document."""
    if isinstance(doc, dict) and "graph" in doc:
        f = framework_from_json(doc)
        return BracedGraph(f.unbraced, f.braces)
    _check_keys(doc, "braced graph", {"vertices", "edges"}, {"braces"})
    return BracedGraph(_graph(doc), _edges_in(doc.get("braces", []), "braces"))


def coloring_to_json(c: EdgeColoring) -> dict:
    return {"format": FORMAT, "red": _edges_out(c.red), "blue": _edges_out(c.blue)}


def coloring_from_json(doc: dict) -> EdgeColoring:
    _check_keys(doc, "coloring", {"red", "blue"})
    return EdgeColoring(_edges_in(doc["red"], "red"), _edges_in(doc["blue"], "blue"))


def action_to_json(a: SymmetryAction) -> dict:
    gen = {str(v): a.generator[v] for v in _sorted_vertices(a.generator)}
    return {"format": FORMAT, "k": a.k, "generator": gen}


def action_from_json(doc: dict, vertices=None) -> SymmetryAction:
    _check_keys(doc, "action", {"k", "generator"})
    raw = doc["generator"]
    if not isinstance(raw, dict):
        raise SchemaError("generator must be an object")
    if vertices is None:
        images = list(raw.values())
        vertices = {_vertex(w) for w in images}
    gen = _keyed(raw, vertices, "generator")
    return SymmetryAction(doc["k"], {v: _vertex(w) for v, w in gen.items()})


def tower_to_json(t: TowerInstance) -> dict:
    return {
        "format": FORMAT,
        "levels": [{"vertices": list(g.vertices), "edges": _edges_out(g.edges)} for g in t.levels],
        "e1": list(t.e1),
        "e2": list(t.e2),
    }


def tower_from_json(doc: dict) -> TowerInstance:
    _check_keys(doc, "tower", {"levels", "e1", "e2"})
    levels = [graph_from_json(lv) for lv in doc["levels"]]
    (e1,) = _edges_in([doc["e1"]], "e1")
    (e2,) = _edges_in([doc["e2"]], "e2")
    return TowerInstance(levels, e1, e2)


# ------------------------------------------------------------ frameworks


def framework_to_json(f: Framework) -> dict:
    order = f.graph.vertices
    doc = {
        "format": FORMAT,
        "graph": {"vertices": list(order), "edges": _edges_out(f.unbraced.edges)},
        "placement": {str(v): list(f.placement[v]) for v in order},
    }
    if f.exact is not None:
        doc["exact"] = {str(v): list(f.exact[v].k) for v in order}
    if f.braces:
        doc["braces"] = _edges_out(f.braces)
    return doc


def framework_from_json(doc: dict, extra: set = frozenset()) -> Framework:
    _check_keys(doc, "framework", {"graph", "placement"}, {"exact", "braces"} | set(extra))
    g = graph_from_json(doc["graph"])
    braces = _edges_in(doc.get("braces", []), "braces")
    full = g.with_edges(braces)
    if "exact" in doc:
        raw = _keyed(doc["exact"], g.vertices, "exact")
        exact = {}
        for v, k in raw.items():
            if not isinstance(k, list) or len(k) != 5 or not all(isinstance(x, int) for x in k):
                raise SchemaError("exact coordinates must be 5 integers")
            exact[v] = Cyclo5(k)
        return Framework(full, exact=exact, braces=braces)
    placement = {v: _point_in(p, "placement") for v, p in _keyed(doc["placement"], g.vertices, "placement").items()}
    return Framework(full, placement, braces=braces)


def _frac_out(x: Fraction) -> str:
    return str(x)


def _params_to_json(p: PentagridParams) -> dict:
    doc = {"gamma": [_frac_out(g) for g in p.gamma]}
    if p.window is not None:
        doc["window"] = [list(w) for w in p.window]
    else:
        doc["radius"] = _frac_out(p.radius)
    if p.perturbation is not None:
        doc["perturbation"] = list(p.perturbation)
    return doc


def _params_from_json(doc: dict) -> PentagridParams:
    _check_keys(doc, "pentagrid", {"gamma"}, {"window", "radius", "perturbation"})
    try:
        gamma = [Fraction(g) for g in doc["gamma"]]
        radius = Fraction(doc["radius"]) if "radius" in doc else None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad pentagrid number: {exc}") from exc
    return PentagridParams(gamma, window=doc.get("window"), radius=radius, perturbation=doc.get("perturbation"))


def patch_to_json(p: PenrosePatch) -> dict:
    doc = framework_to_json(p.framework)
    doc["pentagrid"] = _params_to_json(p.params)
    doc["faces"] = [[f.r, f.kr, f.s, f.ks, list(f.vertices)] for f in p.faces]
    doc["ribbon_labels"] = [[u, w, j, k] for (u, w), (j, k) in sorted(p.ribbon_labels.items(), key=lambda kv: ekey(kv[0]))]
    doc["core_lines"] = [list(ln) for ln in sorted(p.core_lines)]
    return doc


def patch_from_json(doc: dict) -> PenrosePatch:
    fw = framework_from_json(doc, {"pentagrid", "faces", "ribbon_labels", "core_lines"})
    for key in ("pentagrid", "faces", "ribbon_labels", "core_lines"):
        if key not in doc:
            raise SchemaError(f"patch document is missing {key!r}")
    params = _params_from_json(doc["pentagrid"])
    faces = tuple(Face(r, kr, s, ks, tuple(vs)) for r, kr, s, ks, vs in doc["faces"])
    labels = {(u, w): (j, k) for u, w, j, k in doc["ribbon_labels"]}
    core = frozenset((j, k) for j, k in doc["core_lines"])
    return PenrosePatch(params, fw, faces, labels, core)


def flex_to_json(x: Flex) -> dict:
    order = x.graph.vertices
    return {
        "format": FORMAT,
        "graph": {"vertices": list(order), "edges": _edges_out(x.graph.edges - x.braces)},
        "braces": _edges_out(x.braces),
        "base_vertex": x.base_vertex,
        "rotating": {str(v): list(x.rotating[v]) for v in order},
        "fixed": {str(v): list(x.fixed[v]) for v in order},
        "center_rotating": list(x.center_rotating),
        "center_fixed": list(x.center_fixed),
        "domain": list(x.domain),
    }


def flex_from_json(doc: dict) -> Flex:
    _check_keys(doc, "flex", {"graph", "base_vertex", "rotating", "fixed"},
                {"braces", "center_rotating", "center_fixed", "domain"})
    base = graph_from_json(doc["graph"])
    braces = _edges_in(doc.get("braces", []), "braces")
    g = base.with_edges(braces)
    rot = {v: _point_in(p, "rotating") for v, p in _keyed(doc["rotating"], g.vertices, "rotating").items()}
    fix = {v: _point_in(p, "fixed") for v, p in _keyed(doc["fixed"], g.vertices, "fixed").items()}
    if set(rot) != set(g.vertices) or set(fix) != set(g.vertices):
        raise SchemaError("flex offsets must cover every vertex")
    bv = _vertex(doc["base_vertex"])
    if bv not in g:
        raise SchemaError(f"base vertex {bv!r} is not in the graph")
    return Flex(
        g, bv, rot, fix,
        _point_in(doc.get("center_rotating", [0.0, 0.0]), "center_rotating"),
        _point_in(doc.get("center_fixed", [0.0, 0.0]), "center_fixed"),
        _point_in(doc.get("domain", [0.0, 6.283185307179586]), "domain"),
        frozenset(edge_key(*e) for e in braces),
    )


def dixon_to_json(d: DixonLinkage) -> dict:
    return {"format": FORMAT, "x": list(d.x), "y": list(d.y), "tail_inf_x": d.tail_inf_x, "tail_inf_y": d.tail_inf_y}


def dixon_from_json(doc: dict) -> DixonLinkage:
    _check_keys(doc, "dixon", {"x", "y"}, {"tail_inf_x", "tail_inf_y"})
    return DixonLinkage(doc["x"], doc["y"], doc.get("tail_inf_x"), doc.get("tail_inf_y"))


# ------------------------------------------------------------- plumbing

WRITERS = {
    Graph: graph_to_json,
    BracedGraph: braced_to_json,
    EdgeColoring: coloring_to_json,
    SymmetryAction: action_to_json,
    TowerInstance: tower_to_json,
    Framework: framework_to_json,
    PenrosePatch: patch_to_json,
    Flex: flex_to_json,
    DixonLinkage: dixon_to_json,
}

READERS = {
    "graph": graph_from_json,
    "braced": braced_from_json,
    "coloring": coloring_from_json,
    "action": action_from_json,
    "tower": tower_from_json,
    "framework": framework_from_json,
    "patch": patch_from_json,
    "flex": flex_from_json,
    "dixon": dixon_from_json,
}


def to_json(obj) -> dict:
    try:
        return WRITERS[type(obj)](obj)
    except KeyError:
        raise TypeError(f"no JSON form for {type(obj).__name__}") from None


def from_json(doc: dict, kind: str):
    if kind not in READERS:
        raise ValueError(f"unknown document kind {kind!r}")
    return READERS[kind](doc)


def dumps(obj, **kw) -> str:
    return json.dumps(obj if isinstance(obj, dict) else to_json(obj), sort_keys=False, **kw)


def load_file(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
