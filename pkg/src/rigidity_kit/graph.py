"""Immutable graphs, 4-cycles and cyclic symmetry actions."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping

Vertex = Hashable
Edge = tuple


def vkey(v: Vertex) -> tuple:
    """Sort key putting integers before strings; ids of one kind compare naturally."""
    if isinstance(v, bool):
        raise TypeError("booleans are not valid vertex ids")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def edge_key(u: Vertex, v: Vertex) -> Edge:
    """Canonical (sorted) form of the undirected edge uv."""
    if type(u) is type(v) and type(u) in (int, str):
        return (u, v) if u <= v else (v, u)
    return (u, v) if vkey(u) <= vkey(v) else (v, u)


def ekey(e: Edge) -> tuple:
    return (vkey(e[0]), vkey(e[1]))


class UnionFind:
    """Disjoint sets with path halving and union by size."""

    def __init__(self, elements: Iterable[Hashable] = ()) -> None:
        self.parent: dict = {}
        self.size: dict = {}
        for el in elements:
            self.add(el)

    def add(self, el: Hashable) -> None:
        if el not in self.parent:
            self.parent[el] = el
            self.size[el] = 1

    def find(self, el: Hashable) -> Hashable:
        parent = self.parent
        while parent[el] != el:
            parent[el] = parent[parent[el]]
            el = parent[el]
        return el

    def union(self, a: Hashable, b: Hashable) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True

    def groups(self) -> list[frozenset]:
        out: dict = defaultdict(set)
        for el in self.parent:
            out[self.find(el)].add(el)
        return [frozenset(s) for s in out.values()]


@dataclass(frozen=True)
class Graph:
    """A finite simple graph.

    Vertices are kept in canonical order (integers first, then strings) and
    every edge is stored as a sorted pair.
    """

    vertices: tuple
    edges: frozenset
    _adj: Mapping = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, vertices: Iterable[Vertex] = (), edges: Iterable[Iterable[Vertex]] = ()):
        verts = set(vertices)
        canon = set()
        for e in edges:
            u, v = tuple(e)
            if u == v:
                raise ValueError(f"loop at vertex {u!r}")
            if u not in verts or v not in verts:
                raise ValueError(f"edge {(u, v)!r} has an undeclared endpoint")
            canon.add(edge_key(u, v))
        adj: dict = {v: set() for v in verts}
        for u, v in canon:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "vertices", tuple(sorted(verts, key=vkey)))
        object.__setattr__(self, "edges", frozenset(canon))
        object.__setattr__(self, "_adj", {v: frozenset(n) for v, n in adj.items()})

    def neighbors(self, v: Vertex) -> frozenset:
        return self._adj[v]

    def degree(self, v: Vertex) -> int:
        return len(self._adj[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return v in self._adj.get(u, ())

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges, key=ekey)

    def induced(self, vertices: Iterable[Vertex]) -> Graph:
        keep = set(vertices)
        return Graph(keep, [e for e in self.edges if e[0] in keep and e[1] in keep])

    def without_edges(self, removed: Iterable[Edge]) -> Graph:
        drop = {edge_key(*e) for e in removed}
        return Graph(self.vertices, [e for e in self.edges if e not in drop])

    def with_edges(self, added: Iterable[Edge]) -> Graph:
        return Graph(self.vertices, list(self.edges) + [tuple(e) for e in added])

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> Graph:
        return Graph((mapping[v] for v in self.vertices), ((mapping[u], mapping[v]) for u, v in self.edges))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._adj


def connected_components(g: Graph, edges: Iterable[Edge] | None = None) -> list[frozenset]:
    """Vertex partition into connected components, ordered by least vertex.

    When ``edges`` is given, components of the spanning subgraph (V, edges)
    are returned instead; isolated vertices become singletons.
    """
    uf = UnionFind(g.vertices)
    for u, v in g.edges if edges is None else edges:
        uf.union(u, v)
    return sorted(uf.groups(), key=lambda s: min(vkey(v) for v in s))


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def four_cycles(g: Graph) -> list[tuple]:
    """All 4-cycles, each once, as (a, b, c, d) with a the least vertex and b < d.

    The cycle is a-b-c-d-a.
    """
    # opposite-corner pairs {b, d} collect their common neighbours
    common: dict = defaultdict(list)
    for a in g.vertices:
        nbrs = sorted(g.neighbors(a), key=vkey)
        for i, b in enumerate(nbrs):
            for d in nbrs[i + 1:]:
                common[(b, d)].append(a)
    found = set()
    for (b, d), corners in common.items():
        if len(corners) < 2:
            continue
        for i, a in enumerate(corners):
            for c in corners[i + 1:]:
                found.add(_canonical_cycle((a, b, c, d)))
    return sorted(found, key=lambda cyc: tuple(vkey(v) for v in cyc))


def _canonical_cycle(cyc: tuple) -> tuple:
    n = len(cyc)
    i = min(range(n), key=lambda j: vkey(cyc[j]))
    fwd = tuple(cyc[(i + j) % n] for j in range(n))
    bwd = tuple(cyc[(i - j) % n] for j in range(n))
    return min(fwd, bwd, key=lambda c: tuple(vkey(v) for v in c))


def cycle_edges(cyc: tuple) -> list[Edge]:
    n = len(cyc)
    return [edge_key(cyc[i], cyc[(i + 1) % n]) for i in range(n)]


# ---------------------------------------------------------------- symmetry


@dataclass(frozen=True)
class SymmetryAction:
    """A cyclic group C_k acting on a graph through the image of its generator."""

    k: int
    generator: Mapping

    def __init__(self, k: int, generator: Mapping[Vertex, Vertex]):
        if int(k) != k or k < 2:
            raise ValueError("symmetry order k must be an integer >= 2")
        object.__setattr__(self, "k", int(k))
        object.__setattr__(self, "generator", dict(generator))

    def __hash__(self) -> int:
        return hash((self.k, tuple(sorted(self.generator.items(), key=lambda kv: vkey(kv[0])))))

    def apply(self, v: Vertex, power: int = 1) -> Vertex:
        for _ in range(power % self.k):
            v = self.generator[v]
        return v

    def apply_edge(self, e: Edge, power: int = 1) -> Edge:
        return edge_key(self.apply(e[0], power), self.apply(e[1], power))

    def power_map(self, power: int) -> dict:
        return {v: self.apply(v, power) for v in self.generator}

    def orbit(self, v: Vertex) -> list:
        out = [v]
        w = self.generator[v]
        while w != v and len(out) <= len(self.generator):
            out.append(w)
            w = self.generator[w]
        return out

    def restrict(self, vertices: Iterable[Vertex]) -> SymmetryAction:
        keep = set(vertices)
        return SymmetryAction(self.k, {v: w for v, w in self.generator.items() if v in keep})

    def invariant_vertices(self) -> list:
        return sorted((v for v, w in self.generator.items() if w == v), key=vkey)


@dataclass(frozen=True)
class SymmetryReport:
    automorphism: bool
    order: bool
    partially_invariant_are_invariant: bool
    invariant_independent: bool

    @property
    def valid(self) -> bool:
        return (self.automorphism and self.order and self.partially_invariant_are_invariant
                and self.invariant_independent)

    def __bool__(self) -> bool:
        return self.valid


def validate_symmetry_action(g: Graph, a: SymmetryAction) -> SymmetryReport:
    """Check the four conditions for a C_k action on ``g``.

    Raises ``ValueError`` when the generator is not a permutation of V.
    """
    gen = a.generator
    if set(gen) != set(g.vertices) or set(gen.values()) != set(g.vertices):
        raise ValueError("generator is not a permutation of the graph's vertex set")

    automorphism = all(g.has_edge(gen[u], gen[v]) for u, v in g.edges)

    order = True
    current = dict(gen)
    for j in range(1, a.k):
        if all(current[v] == v for v in current):
            order = False  # generator^j = id for some 0 < j < k
            break
        current = {v: gen[w] for v, w in current.items()}
    if order and not all(current[v] == v for v in current):
        order = False  # generator^k != id

    part_ok = True
    for v in g.vertices:
        orbit = a.orbit(v)
        if 1 < len(orbit) < a.k:
            part_ok = False
            break

    fixed = set(a.invariant_vertices())
    independent = not any(u in fixed and v in fixed for u, v in g.edges)
    return SymmetryReport(automorphism, order, part_ok, independent)


def iter_pairs(items: list) -> Iterator[tuple]:
    for i, x in enumerate(items):
        for y in items[i + 1:]:
            yield x, y
