"""Ribbons, ribbon and bracing graphs, and the connectivity rigidity tests.

A ribbon is a class of the transitive closure of "opposite edges of a
4-cycle". For a braced graph the base graph (V, E_c) carries the ribbons and
every brace is a diagonal of one of its 4-cycles.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping

from .graph import (
    Edge,
    Graph,
    SymmetryAction,
    UnionFind,
    connected_components,
    edge_key,
    ekey,
    four_cycles,
    is_connected,
    validate_symmetry_action,
    vkey,
)
from .nac import BLUE, RED, EdgeColoring, is_cartesian, is_nac, is_symmetric_nac


class PreconditionError(ValueError):
    """Input violates a structural requirement of a rigidity decision."""


@dataclass(frozen=True)
class RibbonDecomposition:
    """Edge partition into ribbons, ordered by each ribbon's least edge."""

    ribbons: tuple
    simple: tuple

    @property
    def ribbon_of(self) -> dict:
        return {e: i for i, r in enumerate(self.ribbons) for e in r}

    def __len__(self) -> int:
        return len(self.ribbons)


def compute_ribbons(g: Graph) -> RibbonDecomposition:
    uf = UnionFind(g.edges)
    for a, b, c, d in four_cycles(g):
        uf.union(edge_key(a, b), edge_key(c, d))
        uf.union(edge_key(b, c), edge_key(d, a))
    ribbons = sorted(uf.groups(), key=lambda r: min(ekey(e) for e in r))
    simple = tuple(not four_cycles(Graph(_endpoints(r), r)) for r in ribbons)
    return RibbonDecomposition(tuple(ribbons), simple)


def _endpoints(edges: Iterable[Edge]) -> set:
    return {v for e in edges for v in e}


@dataclass(frozen=True)
class RibbonCutReport:
    ok: bool
    witness: int | None
    component_counts: tuple

    def __bool__(self) -> bool:
        return self.ok


def is_ribbon_cutting(g: Graph, rd: RibbonDecomposition | None = None) -> RibbonCutReport:
    """Whether removing each ribbon disconnects ``g``.

    ``component_counts`` holds the number of components left by each
    ribbon's removal; P-framework graphs give exactly 2 everywhere.
    """
    if not is_connected(g):
        raise ValueError("ribbon-cutting is defined for connected graphs")
    rd = rd or compute_ribbons(g)
    counts = []
    witness = None
    for i, r in enumerate(rd.ribbons):
        n = len(connected_components(g, g.edges - r))
        counts.append(n)
        if n < 2 and witness is None:
            witness = i
    return RibbonCutReport(witness is None, witness, tuple(counts))


# ------------------------------------------------------------ braced graphs


def square_diagonals(g: Graph) -> dict:
    """Map each diagonal (as a sorted pair) of a 4-cycle to the cycles it spans."""
    out: dict = defaultdict(list)
    for cyc in four_cycles(g):
        a, b, c, d = cyc
        out[edge_key(a, c)].append(cyc)
        out[edge_key(b, d)].append(cyc)
    return out


@dataclass(frozen=True)
class BracedGraph:
    """A ribbon-cutting graph (V, E_c) with braces E_d on its 4-cycles."""

    base: Graph
    braces: frozenset

    def __init__(self, base: Graph, braces: Iterable[Iterable] = (), check_cutting: bool = True):
        bset = frozenset(edge_key(*e) for e in braces)
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "braces", bset)
        if bset & base.edges:
            raise ValueError("a brace duplicates an edge of the base graph")
        diags = square_diagonals(base)
        for e in bset:
            if e not in diags:
                raise ValueError(f"brace {e!r} is not a diagonal of any 4-cycle")
        if check_cutting:
            report = is_ribbon_cutting(base)
            if not report.ok:
                raise PreconditionError(f"base graph is not ribbon-cutting (ribbon {report.witness})")

    @property
    def graph(self) -> Graph:
        return self.base.with_edges(self.braces)


def braced_ribbons(b: BracedGraph, rd: RibbonDecomposition | None = None) -> list[frozenset]:
    """Base ribbons, each extended by the braces of its 4-cycles.

    The brace u1u3 of a 4-cycle (u1, u2, u3, u4) joins the ribbon holding
    u1u2 and u3u4; relabelling the same cycle as (u1, u4, u3, u2) qualifies
    the other side pair too, so a brace lies in both ribbons of its square.
    """
    rd = rd or compute_ribbons(b.base)
    owner = rd.ribbon_of
    extended = [set(r) for r in rd.ribbons]
    diags = square_diagonals(b.base)
    for brace in b.braces:
        for a, bb, c, d in diags[brace]:
            extended[owner[edge_key(a, bb)]].add(brace)
            extended[owner[edge_key(bb, c)]].add(brace)
    return [frozenset(r) for r in extended]


@dataclass(frozen=True)
class RibbonGraph:
    """Ribbon graph on ribbon ids with its braced edge subset E_b."""

    vertices: tuple
    edges: frozenset
    braced: frozenset

    def as_graph(self) -> Graph:
        return Graph(self.vertices, self.edges)

    def bracing_graph(self) -> Graph:
        return Graph(self.vertices, self.braced)


def ribbon_graph(b: BracedGraph, rd: RibbonDecomposition | None = None) -> RibbonGraph:
    """Adjacency from alternating 4-cycles of the unbraced graph.

    A ribbon pair is braced when the two braced ribbons intersect, i.e. some
    4-cycle alternating between them carries a brace.
    """
    rd = rd or compute_ribbons(b.base)
    owner = rd.ribbon_of
    edges, braced = set(), set()
    for a, bb, c, d in four_cycles(b.base):
        r1, r2 = owner[edge_key(a, bb)], owner[edge_key(bb, c)]
        if r1 == r2:
            continue
        pair = (min(r1, r2), max(r1, r2))
        edges.add(pair)
        if edge_key(a, c) in b.braces or edge_key(bb, d) in b.braces:
            braced.add(pair)
    return RibbonGraph(tuple(range(len(rd))), frozenset(edges), frozenset(braced))


def _spanning_tree(g: Graph) -> list[tuple]:
    if not g.vertices:
        return []
    root = g.vertices[0]
    seen, tree = {root}, []
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(g.neighbors(u), key=vkey):
            if w not in seen:
                seen.add(w)
                tree.append((u, w))
                queue.append(w)
    return tree


@dataclass(frozen=True)
class RigidityVerdict:
    """Outcome of a connectivity decision with its certificate.

    Rigid verdicts carry a spanning tree of the (quotient) bracing graph;
    flexible ones carry the ribbon split and the induced cartesian
    NAC-coloring.
    """

    verdict: Literal["rigid", "flexible"]
    components: tuple
    spanning_tree: tuple = ()
    split: Mapping | None = None
    coloring: EdgeColoring | None = None
    scope: str = "exact"

    @property
    def rigid(self) -> bool:
        return self.verdict == "rigid"


def _check_base(b: BracedGraph) -> RibbonDecomposition:
    if not is_connected(b.base):
        raise PreconditionError("base graph is disconnected")
    rd = compute_ribbons(b.base)
    report = is_ribbon_cutting(b.base, rd)
    if not report.ok:
        raise PreconditionError(f"base graph is not ribbon-cutting (ribbon {report.witness})")
    return rd


def decide_rigidity(b: BracedGraph) -> RigidityVerdict:
    """Rigid iff the bracing graph is connected.

    Meaningful for braced P-frameworks; parallelogram realizability of the
    base is the caller's responsibility.
    """
    rd = _check_base(b)
    rg = ribbon_graph(b, rd)
    bracing = rg.bracing_graph()
    comps = connected_components(bracing)
    if len(comps) <= 1:
        return RigidityVerdict("rigid", tuple(comps), tuple(_spanning_tree(bracing)))
    split = _default_split(comps)
    coloring = cartesian_nac_from_partition(b, split, rd)
    return RigidityVerdict("flexible", tuple(comps), split=split, coloring=coloring)


def _default_split(comps: list[frozenset]) -> dict:
    # component of the least ribbon is red
    return {r: (RED if i == 0 else BLUE) for i, comp in enumerate(comps) for r in comp}


def cartesian_nac_from_partition(
    b: BracedGraph, split: Mapping[int, str], rd: RibbonDecomposition | None = None
) -> EdgeColoring:
    """Color every edge (braces included) by its ribbon's side of ``split``.

    ``split`` maps ribbon ids to colors; it must use both colors and be
    constant on bracing-graph components.
    """
    rd = rd or compute_ribbons(b.base)
    if set(split) != set(range(len(rd))):
        raise ValueError("split must assign a color to every ribbon")
    if set(split.values()) - {RED, BLUE}:
        raise ValueError("split colors must be 'red' or 'blue'")
    if len(set(split.values())) < 2:
        raise ValueError("split is monochromatic")
    rg = ribbon_graph(b, rd)
    for r1, r2 in rg.braced:
        if split[r1] != split[r2]:
            raise ValueError(f"split cuts the bracing component containing ribbons {r1} and {r2}")
    assignment = {}
    for i, r in enumerate(braced_ribbons(b, rd)):
        for e in r:
            assignment[e] = split[i]
    return EdgeColoring.from_mapping(assignment)


# ----------------------------------------------------------------- symmetry


def ribbon_permutation(b: BracedGraph, a: SymmetryAction, rd: RibbonDecomposition | None = None) -> dict:
    """The permutation of ribbon ids induced by the generator."""
    rd = rd or compute_ribbons(b.base)
    owner = rd.ribbon_of
    perm = {}
    for i, r in enumerate(rd.ribbons):
        images = set()
        for e in r:
            img = a.apply_edge(e)
            if img not in owner:
                raise PreconditionError("action does not map base edges to base edges")
            images.add(owner[img])
        if len(images) != 1:
            raise PreconditionError(f"action splits ribbon {i}")
        perm[i] = images.pop()
    for e in b.braces:
        if a.apply_edge(e) not in b.braces:
            raise PreconditionError("action does not map braces to braces")
    return perm


def ribbon_orbits(perm: Mapping[int, int]) -> list[tuple]:
    seen, orbits = set(), []
    for r in sorted(perm):
        if r in seen:
            continue
        orbit = [r]
        s = perm[r]
        while s != r:
            orbit.append(s)
            s = perm[s]
        seen.update(orbit)
        orbits.append(tuple(sorted(orbit)))
    return orbits


def quotient_bracing_graph(b: BracedGraph, a: SymmetryAction, rd: RibbonDecomposition | None = None) -> Graph:
    """Bracing graph modulo ribbon orbits; vertices are least ribbon ids of orbits."""
    rd = rd or compute_ribbons(b.base)
    perm = ribbon_permutation(b, a, rd)
    rep = {r: orbit[0] for orbit in ribbon_orbits(perm) for r in orbit}
    rg = ribbon_graph(b, rd)
    edges = {(rep[r1], rep[r2]) for r1, r2 in rg.braced if rep[r1] != rep[r2]}
    return Graph(set(rep.values()), edges)


def decide_symmetric_rigidity(b: BracedGraph, a: SymmetryAction) -> RigidityVerdict:
    """C_k-symmetrically rigid iff the quotient bracing graph is connected."""
    rd = _check_base(b)
    g = b.graph
    if not validate_symmetry_action(g, a).valid:
        raise PreconditionError("invalid symmetry action on the braced graph")
    quotient = quotient_bracing_graph(b, a, rd)
    comps = connected_components(quotient)
    if len(comps) <= 1:
        return RigidityVerdict("rigid", tuple(comps), tuple(_spanning_tree(quotient)))
    perm = ribbon_permutation(b, a, rd)
    rep = {r: orbit[0] for orbit in ribbon_orbits(perm) for r in orbit}
    side = {q: (RED if i == 0 else BLUE) for i, comp in enumerate(comps) for q in comp}
    split = {r: side[rep[r]] for r in range(len(rd))}
    coloring = cartesian_nac_from_partition(b, split, rd)
    if not (is_nac(g, coloring) and is_cartesian(g, coloring) and is_symmetric_nac(g, a, coloring)):
        raise AssertionError("lifted coloring is not a cartesian symmetric NAC-coloring")
    return RigidityVerdict("flexible", tuple(comps), split=split, coloring=coloring)
