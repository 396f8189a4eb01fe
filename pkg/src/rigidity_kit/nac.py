"""NAC-colorings: validity, enumeration, cartesian and symmetric variants, tower chains."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Mapping

import networkx as nx

from .graph import (
    Edge,
    Graph,
    SymmetryAction,
    UnionFind,
    connected_components,
    edge_key,
    ekey,
    is_connected,
    validate_symmetry_action,
    vkey,
)

RED = "red"
BLUE = "blue"
Color = Literal["red", "blue"]

ORACLE_MAX_EDGES = 20
TOWER_MAX_EDGES = 16


def other(color: str) -> str:
    return BLUE if color == RED else RED


@dataclass(frozen=True)
class EdgeColoring:
    """A red/blue assignment on edges, stored as the two color classes."""

    red: frozenset
    blue: frozenset

    def __init__(self, red: Iterable[Iterable] = (), blue: Iterable[Iterable] = ()):
        r = frozenset(edge_key(*e) for e in red)
        b = frozenset(edge_key(*e) for e in blue)
        if r & b:
            raise ValueError(f"edges colored both red and blue: {sorted(r & b, key=ekey)}")
        object.__setattr__(self, "red", r)
        object.__setattr__(self, "blue", b)

    @classmethod
    def from_mapping(cls, assignment: Mapping[Edge, str]) -> EdgeColoring:
        red, blue = [], []
        for e, c in assignment.items():
            if c == RED:
                red.append(e)
            elif c == BLUE:
                blue.append(e)
            else:
                raise ValueError(f"unknown color {c!r}")
        return cls(red, blue)

    @property
    def edges(self) -> frozenset:
        return self.red | self.blue

    def color(self, u, v=None) -> str:
        e = edge_key(*u) if v is None else edge_key(u, v)
        if e in self.red:
            return RED
        if e in self.blue:
            return BLUE
        raise KeyError(e)

    def edges_of(self, color: str) -> frozenset:
        return self.red if color == RED else self.blue

    def swapped(self) -> EdgeColoring:
        return EdgeColoring(self.blue, self.red)

    def restrict(self, edges: Iterable[Edge]) -> EdgeColoring:
        keep = {edge_key(*e) for e in edges}
        return EdgeColoring(self.red & keep, self.blue & keep)

    def is_surjective(self) -> bool:
        return bool(self.red) and bool(self.blue)

    def as_mapping(self) -> dict:
        out = {e: RED for e in self.red}
        out.update({e: BLUE for e in self.blue})
        return out

    def sort_key(self) -> tuple:
        return tuple(sorted(ekey(e) for e in self.red))


def _check_domain(g: Graph, c: EdgeColoring) -> None:
    if c.edges != g.edges:
        missing = g.edges - c.edges
        extra = c.edges - g.edges
        raise ValueError(
            f"coloring domain mismatch: {len(missing)} uncolored edges, {len(extra)} foreign edges"
        )


def monochromatic_components(g: Graph, c: EdgeColoring, color: str) -> list[frozenset]:
    """Components of (V, edges of ``color``); isolated vertices are singletons."""
    return connected_components(g, c.edges_of(color))


def _component_index(g: Graph, edges: Iterable[Edge]) -> dict:
    idx = {}
    for i, comp in enumerate(connected_components(g, edges)):
        for v in comp:
            idx[v] = i
    return idx


def is_nac(g: Graph, c: EdgeColoring) -> bool:
    """NAC test without cycle enumeration.

    A surjective coloring is NAC iff no red edge has both ends in one blue
    component and no blue edge has both ends in one red component.
    """
    _check_domain(g, c)
    if not c.is_surjective():
        return False
    for inside, across in ((c.blue, c.red), (c.red, c.blue)):
        uf = UnionFind(g.vertices)
        for u, v in inside:
            uf.union(u, v)
        if any(uf.find(u) == uf.find(v) for u, v in across):
            return False
    return True


def simple_cycles(g: Graph) -> list[list]:
    """Every simple cycle of length >= 3 as a vertex list."""
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices)
    nxg.add_edges_from(g.edges)
    return [cyc for cyc in nx.simple_cycles(nxg) if len(cyc) >= 3]


class CycleOracle:
    """Ground-truth NAC checker for one graph; cycles are enumerated once."""

    def __init__(self, g: Graph):
        if len(g.edges) > ORACLE_MAX_EDGES:
            raise ValueError(f"oracle limited to {ORACLE_MAX_EDGES} edges, graph has {len(g.edges)}")
        self.graph = g
        self.edge_order = g.sorted_edges()
        bit = {e: 1 << i for i, e in enumerate(self.edge_order)}
        self.cycles = []
        for cyc in simple_cycles(g):
            mask = 0
            for i in range(len(cyc)):
                mask |= bit[edge_key(cyc[i], cyc[(i + 1) % len(cyc)])]
            self.cycles.append((mask, len(cyc)))
        self._bit = bit

    def red_mask(self, c: EdgeColoring) -> int:
        return sum(self._bit[e] for e in c.red)

    def check_mask(self, red_mask: int) -> bool:
        full = (1 << len(self.edge_order)) - 1
        if red_mask == 0 or red_mask == full:
            return False
        for mask, length in self.cycles:
            reds = (red_mask & mask).bit_count()
            if reds == 1 or reds == length - 1:
                return False
        return True

    def __call__(self, c: EdgeColoring) -> bool:
        _check_domain(self.graph, c)
        return self.check_mask(self.red_mask(c))


def is_nac_oracle(g: Graph, c: EdgeColoring) -> bool:
    """NAC test by enumerating every cycle (at most 20 edges)."""
    return CycleOracle(g)(c)


# ------------------------------------------------------------- enumeration


class _RollbackUF:
    """Union-find without path compression so unions can be undone."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n
        self.history: list = []

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            self.history.append(None)
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.history.append((ra, rb))

    def undo(self) -> None:
        step = self.history.pop()
        if step is not None:
            ra, rb = step
            self.parent[rb] = rb
            self.size[ra] -= self.size[rb]


def _search_order(g: Graph) -> list[Edge]:
    """Edges in breadth-first order from the least vertex so cycles close early."""
    order, seen_edges = [], set()
    seen = set()
    for root in g.vertices:
        if root in seen:
            continue
        seen.add(root)
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in sorted(g.neighbors(u), key=vkey):
                    e = edge_key(u, w)
                    if e not in seen_edges:
                        seen_edges.add(e)
                        order.append(e)
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            frontier = nxt
    return order


def iter_nac(g: Graph, fixed: Mapping[Edge, str] | None = None) -> Iterator[EdgeColoring]:
    """Yield NAC-colorings by pruned backtracking.

    Partial colorings are rejected as soon as some colored edge has its ends
    joined by a path of the other color. ``fixed`` pins colors of chosen
    edges; without it the first edge is blue and each hit is followed by its
    swap.
    """
    order = _search_order(g)
    if not order:
        return
    index = {v: i for i, v in enumerate(g.vertices)}
    ends = [(index[u], index[v]) for u, v in order]
    m = len(order)
    pinned = [None] * m
    if fixed:
        pos = {e: i for i, e in enumerate(order)}
        for e, col in fixed.items():
            pinned[pos[edge_key(*e)]] = 1 if col == RED else 0
    emit_swaps = not fixed
    if emit_swaps:
        pinned[0] = 0

    ufs = (_RollbackUF(len(index)), _RollbackUF(len(index)))  # 0 blue, 1 red
    assigned: list[list[int]] = [[], []]
    colors = [0] * m

    def consistent(i: int, col: int) -> bool:
        a, b = ends[i]
        opp = ufs[1 - col]
        if opp.find(a) == opp.find(b):
            return False
        same = ufs[col]
        ra, rb = same.find(a), same.find(b)
        if ra == rb:
            return True
        for j in assigned[1 - col]:
            x, y = ends[j]
            rx, ry = same.find(x), same.find(y)
            if (rx == ra and ry == rb) or (rx == rb and ry == ra):
                return False
        return True

    def build() -> EdgeColoring:
        red = [order[i] for i in range(m) if colors[i] == 1]
        blue = [order[i] for i in range(m) if colors[i] == 0]
        return EdgeColoring(red, blue)

    def rec(i: int) -> Iterator[EdgeColoring]:
        if i == m:
            if assigned[0] and assigned[1]:
                col = build()
                yield col
                if emit_swaps:
                    yield col.swapped()
            return
        choices = (0, 1) if pinned[i] is None else (pinned[i],)
        for col in choices:
            if not consistent(i, col):
                continue
            a, b = ends[i]
            ufs[col].union(a, b)
            assigned[col].append(i)
            colors[i] = col
            yield from rec(i + 1)
            assigned[col].pop()
            ufs[col].undo()

    yield from rec(0)


def enumerate_nac(g: Graph, limit: int | None = None, action: SymmetryAction | None = None) -> list[EdgeColoring]:
    """All NAC-colorings of ``g`` (each followed by its color swap), optionally truncated.

    With ``action``, only colorings invariant under the group are kept.
    """
    out = []
    if limit is not None and limit <= 0:
        return out
    for c in iter_nac(g):
        if action is not None and not is_invariant(c, action):
            continue
        out.append(c)
        if limit is not None and len(out) >= limit:
            break
    return out


# ---------------------------------------------------------------- variants


def is_cartesian(g: Graph, c: EdgeColoring) -> bool:
    """No red component shares two or more vertices with a blue component."""
    if not is_nac(g, c):
        raise ValueError("is_cartesian requires a NAC-coloring")
    red = _component_index(g, c.red)
    blue = _component_index(g, c.blue)
    counts = Counter((red[v], blue[v]) for v in g.vertices)
    return all(n <= 1 for n in counts.values())


def is_invariant(c: EdgeColoring, a: SymmetryAction) -> bool:
    return all(a.apply_edge(e) in c.red for e in c.red) and all(
        a.apply_edge(e) in c.blue for e in c.blue
    )


def partially_invariant_components(g: Graph, a: SymmetryAction, components: list[frozenset]) -> list[frozenset]:
    out = []
    for comp in components:
        for j in range(1, a.k):
            if {a.apply(v, j) for v in comp} == comp:
                out.append(comp)
                break
    return out


def is_symmetric_nac(g: Graph, a: SymmetryAction, c: EdgeColoring) -> bool:
    """C_k-symmetric NAC test: invariant coloring, and no edge joins two
    distinct partially invariant components of one color."""
    if not validate_symmetry_action(g, a).valid:
        raise ValueError("invalid symmetry action")
    if not is_nac(g, c):
        raise ValueError("is_symmetric_nac requires a NAC-coloring")
    if not is_invariant(c, a):
        return False
    for color in (RED, BLUE):
        comps = monochromatic_components(g, c, color)
        partial = partially_invariant_components(g, a, comps)
        owner = {v: i for i, comp in enumerate(partial) for v in comp}
        for u, v in g.edges:
            if u in owner and v in owner and owner[u] != owner[v]:
                return False
    return True


# ------------------------------------------------------------------ towers


@dataclass(frozen=True)
class TowerInstance:
    """Nested induced subgraphs with two marked edges of the first level."""

    levels: tuple
    e1: Edge
    e2: Edge

    def __init__(self, levels: Iterable[Graph], e1: Iterable, e2: Iterable):
        object.__setattr__(self, "levels", tuple(levels))
        object.__setattr__(self, "e1", edge_key(*e1))
        object.__setattr__(self, "e2", edge_key(*e2))
        self.validate()

    def validate(self) -> None:
        if not self.levels:
            raise ValueError("tower has no levels")
        if self.e1 == self.e2:
            raise ValueError("marked edges must differ")
        first = self.levels[0]
        if self.e1 not in first.edges or self.e2 not in first.edges:
            raise ValueError("marked edges must lie in the first level")
        for n, g in enumerate(self.levels):
            if not is_connected(g):
                raise ValueError(f"level {n} is not connected")
            if len(g.edges) > TOWER_MAX_EDGES:
                raise ValueError(f"level {n} has {len(g.edges)} edges; cap is {TOWER_MAX_EDGES}")
        for n, (small, big) in enumerate(zip(self.levels, self.levels[1:])):
            vs, vb = set(small.vertices), set(big.vertices)
            if not vs < vb:
                raise ValueError(f"level {n} is not a proper vertex subset of level {n + 1}")
            if big.induced(vs).edges != small.edges:
                raise ValueError(f"level {n} is not an induced subgraph of level {n + 1}")


TowerMode = Literal["plain", "monochromatic-ribbons", "symmetric"]


def _level_members(g: Graph, e1: Edge, e2: Edge, mode: str, action: SymmetryAction | None) -> list[EdgeColoring]:
    members = []
    if mode == "monochromatic-ribbons":
        from .ribbons import compute_ribbons

        ribbons = compute_ribbons(g).ribbons
    for c in iter_nac(g, fixed={e1: BLUE, e2: RED}):
        if mode == "monochromatic-ribbons":
            if not all(len({c.color(e) for e in r}) == 1 for r in ribbons):
                continue
        elif mode == "symmetric":
            if not is_symmetric_nac(g, action.restrict(g.vertices), c):
                continue
        members.append(c)
    return sorted(members, key=EdgeColoring.sort_key)


def tower_chain(t: TowerInstance, mode: str = "plain", action: SymmetryAction | None = None) -> list[EdgeColoring] | None:
    """A chain of colorings, one per level, each the restriction of the next.

    Level n admits the NAC-colorings with e1 blue and e2 red, filtered by
    ``mode``. Returns None iff no full-length chain exists.
    """
    if mode not in ("plain", "monochromatic-ribbons", "symmetric"):
        raise ValueError(f"unknown tower mode {mode!r}")
    if mode == "symmetric":
        if action is None:
            raise ValueError("symmetric mode needs an action")
        for n, g in enumerate(t.levels):
            sub = action.restrict(g.vertices)
            if set(sub.generator.values()) != set(g.vertices) or not validate_symmetry_action(g, sub).valid:
                raise ValueError(f"level {n} is not invariant under the action")

    sets = [_level_members(g, t.e1, t.e2, mode, action) for g in t.levels]
    # good[n]: members of S_n that extend to the top level
    good = [None] * len(sets)
    good[-1] = {c.sort_key(): c for c in sets[-1]}
    for n in range(len(sets) - 2, -1, -1):
        small_edges = t.levels[n].edges
        reachable = {c.restrict(small_edges).sort_key() for c in good[n + 1].values()}
        good[n] = {c.sort_key(): c for c in sets[n] if c.sort_key() in reachable}
    if not good[0]:
        return None
    chain = [good[0][min(good[0])]]
    for n in range(1, len(sets)):
        prev_key = chain[-1].sort_key()
        small_edges = t.levels[n - 1].edges
        nxt = min(
            (c for c in good[n].values() if c.restrict(small_edges).sort_key() == prev_key),
            key=EdgeColoring.sort_key,
        )
        chain.append(nxt)
    return chain
