"""Frameworks, parallelogram checks and closed-form flexes.

Every flex here has the shape

    p_t(v) = R(t) a(v) + b(v) - (R(t) c_a + c_b)

with R(t) the clockwise rotation by t. Edges whose ends share a(v) keep
their vector; edges whose ends share b(v) rotate rigidly, so all edge
lengths are constant in t.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Protocol

from .cyclotomic import Cyclo5
from .graph import Edge, Graph, SymmetryAction, edge_key, ekey, four_cycles, vkey
from .nac import (
    BLUE,
    RED,
    EdgeColoring,
    is_cartesian,
    is_nac,
    is_symmetric_nac,
    monochromatic_components,
)

EXACT_TOL = 1e-12
GEOM_TOL = 1e-9
ANGLE_TOL = 1e-3

Vec = tuple


class WalkSumError(ValueError):
    """Blue/red displacement sums depend on the walk: not a valid P-framework."""


def rotation(t: float) -> tuple:
    """Clockwise rotation by t radians as a row-major 2x2 tuple."""
    c, s = math.cos(t), math.sin(t)
    return (c, s, -s, c)


def rotate(m: tuple, v: Vec) -> Vec:
    return (m[0] * v[0] + m[1] * v[1], m[2] * v[0] + m[3] * v[1])


def _sub(p: Vec, q: Vec) -> Vec:
    return (p[0] - q[0], p[1] - q[1])


def _add(p: Vec, q: Vec) -> Vec:
    return (p[0] + q[0], p[1] + q[1])


def _norm(p: Vec) -> float:
    return math.hypot(p[0], p[1])


@dataclass(frozen=True)
class Framework:
    """A graph with a plane placement.

    ``exact`` optionally holds canonical cyclotomic coordinates; when present
    the float placement is derived from it. ``braces`` names the edges of the
    graph that are braces, so parallelogram checks use the unbraced part.
    """

    graph: Graph
    placement: Mapping
    exact: Mapping | None = None
    braces: frozenset = frozenset()

    def __init__(self, graph: Graph, placement: Mapping | None = None, exact: Mapping | None = None,
                 braces: Iterable[Edge] = ()):
        if exact is not None:
            exact = {v: p if isinstance(p, Cyclo5) else Cyclo5(p) for v, p in exact.items()}
            placement = {v: p.to_float() for v, p in exact.items()}
        if placement is None:
            raise ValueError("framework needs a placement or exact coordinates")
        placement = {v: (float(p[0]), float(p[1])) for v, p in placement.items()}
        if set(placement) != set(graph.vertices):
            raise ValueError("placement must cover exactly the graph's vertices")
        bset = frozenset(edge_key(*e) for e in braces)
        if not bset <= graph.edges:
            raise ValueError("braces must be edges of the graph")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "placement", placement)
        object.__setattr__(self, "exact", exact)
        object.__setattr__(self, "braces", bset)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def unbraced(self) -> Graph:
        return self.graph.without_edges(self.braces) if self.braces else self.graph

    def point(self, v) -> Vec:
        return self.placement[v]

    def length(self, e: Edge) -> float:
        return _norm(_sub(self.placement[e[0]], self.placement[e[1]]))

    def lengths(self) -> dict:
        return {e: self.length(e) for e in self.graph.edges}

    def translated(self, offset: Vec) -> Framework:
        return Framework(self.graph, {v: _add(p, offset) for v, p in self.placement.items()},
                         braces=self.braces)


def validate_framework(f: Framework) -> bool:
    """Every edge has distinct endpoints in the plane."""
    if f.exact is not None:
        return all(f.exact[u] != f.exact[v] for u, v in f.graph.edges)
    return all(f.length(e) > EXACT_TOL for e in f.graph.edges)


@dataclass(frozen=True)
class ParallelogramReport:
    ok: bool
    cycle: tuple | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_parallelogram(f: Framework) -> ParallelogramReport:
    """Injective placement with every 4-cycle of the unbraced graph a parallelogram."""
    g = f.unbraced
    if f.exact is not None:
        if len(set(f.exact.values())) != len(f.exact):
            return ParallelogramReport(False, None, "placement is not injective")
        for cyc in four_cycles(g):
            u1, u2, u3, u4 = (f.exact[v] for v in cyc)
            if u2 - u1 != u3 - u4:
                return ParallelogramReport(False, cyc, "4-cycle is not a parallelogram")
        return ParallelogramReport(True)
    pts = sorted(f.placement.items(), key=lambda kv: kv[1])
    for (v, p), (w, q) in zip(pts, pts[1:]):
        if _norm(_sub(p, q)) <= GEOM_TOL:
            return ParallelogramReport(False, (v, w), "placement is not injective")
    if not _injective_float(f.placement):
        return ParallelogramReport(False, None, "placement is not injective")
    for cyc in four_cycles(g):
        u1, u2, u3, u4 = (f.placement[v] for v in cyc)
        if _norm(_sub(_sub(u2, u1), _sub(u3, u4))) > GEOM_TOL:
            return ParallelogramReport(False, cyc, "4-cycle is not a parallelogram")
    return ParallelogramReport(True)


def _injective_float(placement: Mapping) -> bool:
    cells: dict = {}
    for v, p in placement.items():
        key = (round(p[0] / GEOM_TOL / 1e3), round(p[1] / GEOM_TOL / 1e3))
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for q in cells.get((key[0] + dx, key[1] + dy), ()):
                    if _norm(_sub(p, q)) <= GEOM_TOL:
                        return False
        cells.setdefault(key, []).append(p)
    return True


def ribbon_directions(f: Framework, ribbons: Iterable[Iterable[Edge]]) -> list[Vec]:
    """A unit normal per ribbon, sign-normalized to be lexicographically positive."""
    out = []
    for i, r in enumerate(ribbons):
        r = sorted(r, key=ekey)
        if not r:
            raise ValueError(f"ribbon {i} is empty")
        d = _sub(f.point(r[0][1]), f.point(r[0][0]))
        n = _norm(d)
        normal = (-d[1] / n, d[0] / n)
        if normal[0] < -GEOM_TOL or (abs(normal[0]) <= GEOM_TOL and normal[1] < 0):
            normal = (-normal[0], -normal[1])
        for u, v in r[1:]:
            w = _sub(f.point(v), f.point(u))
            if abs(normal[0] * w[0] + normal[1] * w[1]) > GEOM_TOL * max(1.0, _norm(w)):
                raise ValueError(f"ribbon {i} has non-parallel edges")
        out.append(normal)
    return out


def are_parallel(u: Vec, w: Vec) -> bool:
    return abs(abs(u[0] * w[0] + u[1] * w[1]) - 1.0) <= GEOM_TOL


# --------------------------------------------------------------------- flexes


class FlexLike(Protocol):
    domain: tuple

    def evaluate(self, t: float) -> Framework: ...


@dataclass(frozen=True)
class Flex:
    """Closed-form motion p_t(v) = R(t) rotating[v] + fixed[v] - centering."""

    graph: Graph
    base_vertex: object
    rotating: Mapping
    fixed: Mapping
    center_rotating: Vec = (0.0, 0.0)
    center_fixed: Vec = (0.0, 0.0)
    domain: tuple = (0.0, 2 * math.pi)
    braces: frozenset = field(default=frozenset())

    def evaluate(self, t: float) -> Framework:
        m = rotation(t)
        shift = _add(rotate(m, self.center_rotating), self.center_fixed)
        placement = {
            v: _sub(_add(rotate(m, self.rotating[v]), self.fixed[v]), shift) for v in self.graph.vertices
        }
        return Framework(self.graph, placement, braces=self.braces)


def evaluate_flex(x: FlexLike, t: float) -> Framework:
    return x.evaluate(t)


def _as_vec(p) -> Vec:
    return (float(p[0]), float(p[1]))


def flex_from_nac(
    g: Graph,
    c: EdgeColoring,
    red_points: Mapping[int, Vec] | None = None,
    blue_points: Mapping[int, Vec] | None = None,
    base_vertex=None,
) -> Flex:
    """Flex from a NAC-coloring with one chosen point per monochromatic component.

    Red and blue components are indexed in canonical order (by least vertex).
    A vertex in red component i and blue component j moves as
    R(t) blue_points[j] + red_points[i]. The components of ``base_vertex``
    (default: least vertex) must be assigned the origin. Missing point maps
    are filled with distinct points on a parabola.
    """
    if not is_nac(g, c):
        raise ValueError("flex_from_nac requires a NAC-coloring")
    base = g.vertices[0] if base_vertex is None else base_vertex
    red = monochromatic_components(g, c, RED)
    blue = monochromatic_components(g, c, BLUE)
    red_of = {v: i for i, comp in enumerate(red) for v in comp}
    blue_of = {v: i for i, comp in enumerate(blue) for v in comp}
    red_points = _fill_points(red_points, len(red), red_of[base], shear=1.0)
    blue_points = _fill_points(blue_points, len(blue), blue_of[base], shear=-0.5)
    for name, pts in (("red", red_points), ("blue", blue_points)):
        if len(set(pts.values())) != len(pts):
            raise ValueError(f"{name} component points must be pairwise distinct")
    if red_points[red_of[base]] != (0.0, 0.0) or blue_points[blue_of[base]] != (0.0, 0.0):
        raise ValueError("components of the base vertex must sit at the origin")
    rotating = {v: blue_points[blue_of[v]] for v in g.vertices}
    fixed = {v: red_points[red_of[v]] for v in g.vertices}
    return Flex(g, base, rotating, fixed)


def _fill_points(points, n: int, base_index: int, shear: float) -> dict:
    if points is None:
        out, step = {}, 1
        for i in range(n):
            if i == base_index:
                out[i] = (0.0, 0.0)
            else:
                out[i] = (float(step), shear * step * step)
                step += 1
        return out
    points = {int(i): _as_vec(p) for i, p in points.items()}
    if set(points) != set(range(n)):
        raise ValueError(f"expected points for components 0..{n - 1}")
    return points


def _walk_sums(f: Framework, c: EdgeColoring, base) -> tuple[dict, dict]:
    """Per-vertex sums of blue and of red displacements along walks from ``base``.

    Walks use the unbraced graph. Consistency over every edge certifies that
    the sums do not depend on the walk.
    """
    g = f.unbraced
    exact = f.exact is not None
    pos = f.exact if exact else f.placement
    zero = Cyclo5.zero() if exact else (0.0, 0.0)

    def diff(u, v):
        return pos[v] - pos[u] if exact else _sub(pos[v], pos[u])

    def plus(p, q):
        return p + q if exact else _add(p, q)

    def close(p, q) -> bool:
        if exact:
            return p == q
        return _norm(_sub(p, q)) <= GEOM_TOL * max(1.0, _norm(p), _norm(q))

    blue_sum = {base: zero}  # sum of blue displacements: rotates
    red_sum = {base: zero}
    queue = deque([base])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u), key=vkey):
            if w in blue_sum:
                continue
            d = diff(u, w)
            if c.color(u, w) == BLUE:
                blue_sum[w], red_sum[w] = plus(blue_sum[u], d), red_sum[u]
            else:
                blue_sum[w], red_sum[w] = blue_sum[u], plus(red_sum[u], d)
            queue.append(w)
    if len(blue_sum) != len(g.vertices):
        raise ValueError("unbraced graph is disconnected")
    for u, w in g.edges:
        d = diff(u, w)
        if c.color(u, w) == BLUE:
            ok = close(plus(blue_sum[u], d), blue_sum[w]) and close(red_sum[u], red_sum[w])
        else:
            ok = close(plus(red_sum[u], d), red_sum[w]) and close(blue_sum[u], blue_sum[w])
        if not ok:
            raise WalkSumError(f"walk sums disagree across edge {(u, w)!r}")
    return blue_sum, red_sum


def pframework_flex(f: Framework, c: EdgeColoring, base_vertex=None) -> Flex:
    """Flex of a (braced) P-framework from a cartesian NAC-coloring.

    The red component of v sits at the sum of blue edge vectors on any walk
    from the base vertex, the blue component at the sum of red edge vectors;
    at t = 0 every vertex is at p(v) - p(base).
    """
    report = validate_parallelogram(f)
    if not report.ok:
        raise ValueError(f"not a parallelogram placement: {report.reason}")
    if not is_cartesian(f.graph, c):
        raise ValueError("pframework_flex requires a cartesian NAC-coloring")
    base = f.graph.vertices[0] if base_vertex is None else base_vertex
    blue_sum, red_sum = _walk_sums(f, c, base)
    if f.exact is not None:
        rotating = {v: p.to_float() for v, p in blue_sum.items()}
        fixed = {v: p.to_float() for v, p in red_sum.items()}
    else:
        rotating, fixed = dict(blue_sum), dict(red_sum)
    return Flex(f.graph, base, rotating, fixed, braces=f.braces)


def exact_walk_sums(f: Framework, c: EdgeColoring, base_vertex=None) -> tuple[dict, dict]:
    """Exact (rotating, fixed) offsets for a framework with cyclotomic coordinates."""
    if f.exact is None:
        raise ValueError("framework has no exact coordinates")
    base = f.graph.vertices[0] if base_vertex is None else base_vertex
    return _walk_sums(f, c, base)


def symmetric_rotation(k: int) -> tuple:
    return rotation(2 * math.pi / k)


def is_symmetric_placement(f: Framework, a: SymmetryAction) -> bool:
    """p(gen v) equals the clockwise 2*pi/k rotation of p(v) for every v."""
    if f.exact is not None and a.k == 5:
        return all(f.exact[a.apply(v)] == f.exact[v].rotate(1) for v in f.graph.vertices)
    m = symmetric_rotation(a.k)
    return all(
        _norm(_sub(f.point(a.apply(v)), rotate(m, f.point(v)))) <= GEOM_TOL for v in f.graph.vertices
    )


def symmetric_flex(f: Framework, a: SymmetryAction, c: EdgeColoring, base_vertex=None) -> Flex:
    """Symmetry-preserving flex: the P-framework flex recentred on the orbit of the base."""
    if not is_symmetric_placement(f, a):
        raise ValueError("placement is not C_k-symmetric")
    if not is_symmetric_nac(f.graph, a, c):
        raise ValueError("symmetric_flex requires a C_k-symmetric NAC-coloring")
    x = pframework_flex(f, c, base_vertex)
    orbit = [a.apply(x.base_vertex, i) for i in range(a.k)]
    cr = (sum(x.rotating[v][0] for v in orbit) / a.k, sum(x.rotating[v][1] for v in orbit) / a.k)
    cf = (sum(x.fixed[v][0] for v in orbit) / a.k, sum(x.fixed[v][1] for v in orbit) / a.k)
    return Flex(f.graph, x.base_vertex, x.rotating, x.fixed, cr, cf, x.domain, x.braces)


# ------------------------------------------------------------------- checking


@dataclass(frozen=True)
class FlexReport:
    max_length_deviation: float
    nontrivial: bool
    witness: tuple | None
    max_angle_variation: float
    equivariance_residual: float | None = None

    def ok(self, tol: float = GEOM_TOL) -> bool:
        return self.max_length_deviation <= tol and self.nontrivial


def sample_times(domain: tuple, samples: int) -> list[float]:
    lo, hi = domain
    return [lo + (hi - lo) * i / samples for i in range(samples)]


def _angle(v: Vec) -> float:
    return math.atan2(v[1], v[0])


def _wrap(a: float) -> float:
    return (a + math.pi) % (2 * math.pi) - math.pi


def equivariance_residual(frame: Framework, a: SymmetryAction) -> float:
    m = symmetric_rotation(a.k)
    return max(
        (_norm(_sub(frame.point(a.apply(v)), rotate(m, frame.point(v)))) for v in frame.graph.vertices),
        default=0.0,
    )


def check_flex(
    f: Framework,
    x: FlexLike,
    samples: int = 64,
    tol: float = GEOM_TOL,
    action: SymmetryAction | None = None,
    angle_threshold: float = ANGLE_TOL,
) -> FlexReport:
    """Sample a flex: length deviation, angle-change witness, equivariance residual."""
    edges = sorted(f.graph.edges, key=ekey)
    target = {e: f.length(e) for e in edges}
    frames = [x.evaluate(t) for t in sample_times(x.domain, samples)]
    dev = 0.0
    for fr in frames:
        for e in edges:
            dev = max(dev, abs(fr.length(e) - target[e]))

    witness, variation = None, 0.0
    if len(edges) >= 2:
        ref = edges[0]
        start = frames[0]

        def rel(fr, e):
            return _angle(_sub(fr.point(e[1]), fr.point(e[0]))) - _angle(_sub(fr.point(ref[1]), fr.point(ref[0])))

        base_rel = {e: rel(start, e) for e in edges[1:]}
        for fr in frames[1:]:
            for e in edges[1:]:
                delta = abs(_wrap(rel(fr, e) - base_rel[e]))
                if delta > variation:
                    variation = delta
                    witness = (ref, e)
    nontrivial = variation > max(angle_threshold, 10 * tol)
    residual = None
    if action is not None:
        residual = max(equivariance_residual(fr, action) for fr in frames)
    return FlexReport(dev, nontrivial, witness if nontrivial else None, variation, residual)
