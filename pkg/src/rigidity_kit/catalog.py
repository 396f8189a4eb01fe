"""Small named graphs, frameworks and colorings used by tests and the CLI."""

from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources

from .cyclotomic import Cyclo5
from .framework import Framework
from .graph import Graph, SymmetryAction
from .nac import EdgeColoring, TowerInstance
from .ribbons import BracedGraph


def path(n: int) -> Graph:
    """Path on n vertices."""
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite(m: int, n: int) -> Graph:
    return Graph(range(m + n), [(i, m + j) for i in range(m) for j in range(n)])


def cube() -> Graph:
    return Graph(range(8), [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def cube_framework() -> Framework:
    """Oblique projection of the cube; every face lands on a parallelogram."""
    vecs = ((1.0, 0.0), (0.0, 1.0), (0.45, 0.3))
    place = {}
    for u in range(8):
        x = sum(vecs[b][0] for b in range(3) if u >> b & 1)
        y = sum(vecs[b][1] for b in range(3) if u >> b & 1)
        place[u] = (x, y)
    return Framework(cube(), place)


def grid_vertex(i: int, j: int, cols: int) -> int:
    return i * (cols + 1) + j


def grid(rows: int, cols: int) -> Graph:
    """Square grid with rows x cols cells; vertex (i, j) has id i*(cols+1)+j."""
    edges = []
    for i in range(rows + 1):
        for j in range(cols + 1):
            v = grid_vertex(i, j, cols)
            if j < cols:
                edges.append((v, v + 1))
            if i < rows:
                edges.append((v, grid_vertex(i + 1, j, cols)))
    return Graph(range((rows + 1) * (cols + 1)), edges)


def grid_framework(rows: int, cols: int) -> Framework:
    place = {grid_vertex(i, j, cols): (float(j), float(i)) for i in range(rows + 1) for j in range(cols + 1)}
    return Framework(grid(rows, cols), place)


def grid_cell_braces(rows: int, cols: int) -> list[tuple]:
    """One diagonal per cell, in row-major cell order."""
    return [(grid_vertex(i, j, cols), grid_vertex(i + 1, j + 1, cols)) for i in range(rows) for j in range(cols)]


def grid_rotation(n: int) -> SymmetryAction:
    """Clockwise quarter turn of the n x n grid about its centre."""
    gen = {grid_vertex(i, j, n): grid_vertex(n - j, i, n) for i in range(n + 1) for j in range(n + 1)}
    return SymmetryAction(4, gen)


def grid_spoke_coloring() -> EdgeColoring:
    """On the 2x2 grid: the outer 8-cycle blue, the four edges at the centre red."""
    g = grid(2, 2)
    centre = grid_vertex(1, 1, 2)
    red = [e for e in g.edges if centre in e]
    return EdgeColoring(red, [e for e in g.edges if centre not in e])


def _rot(deg: float, v: tuple) -> tuple:
    a = math.radians(deg)
    return (math.cos(a) * v[0] - math.sin(a) * v[1], math.sin(a) * v[0] + math.cos(a) * v[1])


def _add(*vs):
    return (sum(v[0] for v in vs), sum(v[1] for v in vs))


def _neg(v):
    return (-v[0], -v[1])


def five_square_framework() -> tuple[Framework, BracedGraph]:
    """Five parallelograms with braces ac, bf, ej; rigid."""
    p = {"a": (0.0, 0.0), "b": (1.0, 0.0), "c": (1.0, 1.0)}
    p["d"] = _add(p["a"], p["c"], _neg(p["b"]))
    p["e"] = _add(p["b"], _rot(30, (0.8, 0.0)))
    p["f"] = _add(p["e"], p["c"], _neg(p["b"]))
    p["g"] = _add(p["e"], _rot(-20, (1.1, 0.0)))
    p["h"] = _add(p["g"], p["f"], _neg(p["e"]))
    p["j"] = _add(p["b"], p["g"], _neg(p["e"]))
    p["k"] = _add(p["d"], p["f"], _neg(p["c"]))
    edges = [tuple(s) for s in "ab bc cd da be ef fc eg gh hf gj bj dk fk".split()]
    braces = [tuple(s) for s in "ac bf ej".split()]
    g = Graph(p, edges)
    b = BracedGraph(g, braces)
    return Framework(b.graph, p, braces=b.braces), b


def six_square_framework() -> tuple[Framework, BracedGraph]:
    """Six parallelograms with braces ac, eh, fl; flexible."""
    fw, _ = five_square_framework()
    p = {v: fw.placement[v] for v in "abcdefghk"}
    p["l"] = _add(p["k"], _rot(105, (0.9, 0.0)))
    p["m"] = _add(p["f"], p["l"], _neg(p["k"]))
    p["n"] = _add(p["k"], _rot(25, _add(p["m"], (1.3, 0.0), _neg(p["k"]))))
    p["o"] = _add(p["f"], p["n"], _neg(p["m"]))
    edges = [tuple(s) for s in "ab bc cd da be ef fc eg gh hf dk fk kl lm mf mn no of".split()]
    braces = [tuple(s) for s in "ac eh fl".split()]
    g = Graph(p, edges)
    b = BracedGraph(g, braces)
    return Framework(b.graph, p, braces=b.braces), b


def nested_grid_tower() -> TowerInstance:
    """1x1, 1x2 and 2x2 grids nested by inclusion, sharing a corner of the unit square."""
    big = grid(2, 2)
    ids = {(i, j): grid_vertex(i, j, 2) for i in range(3) for j in range(3)}
    one = big.induced([ids[0, 0], ids[0, 1], ids[1, 0], ids[1, 1]])
    two = big.induced([ids[i, j] for i in range(2) for j in range(3)])
    e1 = (ids[0, 0], ids[0, 1])
    e2 = (ids[0, 1], ids[1, 1])
    return TowerInstance([one, two, big], e1, e2)


@lru_cache(maxsize=1)
def _c5_document() -> dict:
    text = resources.files(__package__).joinpath("data/penrose_c5_126.json").read_text(encoding="utf-8")
    return json.loads(text)


def penrose_c5_patch() -> tuple[Framework, SymmetryAction, EdgeColoring]:
    """The 126-vertex five-fold Penrose patch with a symmetric cartesian NAC-coloring."""
    doc = _c5_document()
    exact = {int(v): Cyclo5(k) for v, k in doc["exact"].items()}
    red = [tuple(e) for e in doc["red"]]
    blue = [tuple(e) for e in doc["blue"]]
    g = Graph(exact, red + blue)
    action = SymmetryAction(doc["symmetry"]["k"], {int(v): w for v, w in doc["symmetry"]["generator"].items()})
    return Framework(g, exact=exact), action, EdgeColoring(red, blue)


def acceptance_graphs() -> dict[str, Graph]:
    """Named graphs for the exhaustive NAC cross-check."""
    return {
        "path5": path(5),
        "path9": path(9),
        "cycle4": cycle(4),
        "cycle7": cycle(7),
        "k4": complete(4),
        "k33": complete_bipartite(3, 3),
        "cube": cube(),
        "grid2x2": grid(2, 2),
        "five_squares": five_square_framework()[1].base,
        "six_squares": six_square_framework()[1].base,
    }


NAMED = {
    "square": lambda: cycle(4),
    "k4": lambda: complete(4),
    "cube": cube,
    "grid2x2": lambda: grid(2, 2),
    "grid2x3": lambda: grid(2, 3),
}
