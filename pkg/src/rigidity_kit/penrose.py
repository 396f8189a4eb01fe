"""Penrose rhombus patches from exact pentagrids.

Family j of the grid consists of the lines z.e_j + gamma_j = k for integer k.
Each intersection of a line (r, k_r) with a line (s, k_s) gives one rhombus
with corners sum_j K_j e_j, where K_j = ceil(z.e_j + gamma_j) off the two
crossing families and K_r in {k_r, k_r + 1}, K_s in {k_s, k_s + 1}.

All incidence tests run in Q(sqrt 5). Writing e_j = alpha e_r + beta e_s,
the value z.e_j at the intersection is alpha (k_r - gamma_r) + beta (k_s -
gamma_s), so no float ever decides which side of a line a point lies on.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .cyclotomic import COS5, SIN5_RATIO, SIN5_SQ, Cyclo5, QSqrt5
from .framework import Framework, validate_parallelogram
from .graph import Graph, SymmetryAction, UnionFind, connected_components, edge_key, is_connected, iter_pairs
from .ribbons import BracedGraph, RibbonDecomposition, compute_ribbons

SIN18_SQ = QSqrt5(Fraction(3, 8), Fraction(-1, 8))  # sin(pi/10)^2
TileType = Literal["T", "t"]


class DegeneratePentagridError(ValueError):
    """Three or more grid lines meet in one point of the window."""

    def __init__(self, lines: Sequence[tuple], point: tuple[float, float]):
        self.lines = tuple(lines)
        self.point = point
        desc = ", ".join(f"({j},{k})" for j, k in self.lines)
        super().__init__(f"grid lines {desc} are concurrent near ({point[0]:.6f}, {point[1]:.6f})")


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x)) if isinstance(x, float) else Fraction(x)


@dataclass(frozen=True)
class PentagridParams:
    """Offsets, a window and an optional symbolic perturbation.

    ``window`` gives an inclusive line-index range per family; ``radius``
    keeps intersections with |z| <= radius instead. Exactly one is set.
    ``perturbation`` (d_0..d_4) resolves concurrent lines as if every offset
    were gamma_j + eps * d_j for an infinitesimal eps > 0.
    """

    gamma: tuple
    window: tuple | None = None
    radius: Fraction | None = None
    perturbation: tuple | None = None

    def __init__(self, gamma: Iterable, window: Iterable | None = None, radius=None,
                 perturbation: Iterable[int] | None = None):
        gamma = tuple(_frac(g) for g in gamma)
        if len(gamma) != 5:
            raise ValueError("pentagrids need exactly 5 offsets")
        if sum(gamma).denominator != 1:
            raise ValueError("offsets must sum to an integer")
        if (window is None) == (radius is None):
            raise ValueError("give exactly one of window or radius")
        if window is not None:
            window = tuple((int(lo), int(hi)) for lo, hi in window)
            if len(window) != 5 or any(lo > hi for lo, hi in window):
                raise ValueError("window needs a nonempty index range for each of the 5 families")
        if radius is not None:
            radius = _frac(radius)
            if radius <= 0:
                raise ValueError("radius must be positive")
        if perturbation is not None:
            perturbation = tuple(int(d) for d in perturbation)
            if len(perturbation) != 5:
                raise ValueError("perturbation needs 5 entries")
        object.__setattr__(self, "gamma", gamma)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "perturbation", perturbation)

    def lines(self, j: int) -> range:
        if self.window is not None:
            lo, hi = self.window[j]
            return range(lo, hi + 1)
        g, r = self.gamma[j], self.radius
        return range(math.ceil(g - r), math.floor(g + r) + 1)

    def is_core(self, j: int, k: int) -> bool:
        """Line crosses the window far enough in to meet every other core line inside it."""
        if self.window is not None:
            return True
        d = k - self.gamma[j]
        return QSqrt5(d * d) <= SIN18_SQ * (self.radius * self.radius)


@dataclass(frozen=True)
class Face:
    """The rhombus dual to the crossing of lines (r, kr) and (s, ks), r < s.

    ``vertices`` lists corners K, K + e_r, K + e_r + e_s, K + e_s.
    """

    r: int
    kr: int
    s: int
    ks: int
    vertices: tuple

    @property
    def lines(self) -> tuple:
        return ((self.r, self.kr), (self.s, self.ks))

    @property
    def directions(self) -> tuple:
        return (self.r, self.s)

    @property
    def brace(self) -> tuple:
        """Diagonal through the acute corners of t and the obtuse corners of T."""
        return edge_key(self.vertices[1], self.vertices[3])


@dataclass(frozen=True)
class PenrosePatch:
    params: PentagridParams
    framework: Framework
    faces: tuple
    ribbon_labels: dict
    core_lines: frozenset

    @property
    def graph(self) -> Graph:
        return self.framework.graph

    def line_faces(self, line: tuple) -> list[int]:
        return [i for i, f in enumerate(self.faces) if line in f.lines]

    def lines(self) -> list[tuple]:
        return sorted({ln for f in self.faces for ln in f.lines})

    def direction_of(self, line: tuple) -> int:
        return line[0]


def _coeffs(r: int, s: int, j: int) -> tuple[QSqrt5, QSqrt5]:
    den = SIN5_RATIO[(s - r) % 5]
    return SIN5_RATIO[(s - j) % 5] / den, SIN5_RATIO[(j - r) % 5] / den


def _norm_sq(p: Fraction, q: Fraction, r: int, s: int) -> QSqrt5:
    # |z|^2 for z.e_r = p, z.e_s = q
    c = COS5[(s - r) % 5]
    return (QSqrt5(p * p + q * q) - c * (2 * p * q)) / SIN5_SQ[(s - r) % 5]


def _point(p: Fraction, q: Fraction, r: int, s: int) -> tuple[float, float]:
    er = (math.cos(2 * math.pi * r / 5), math.sin(2 * math.pi * r / 5))
    es = (math.cos(2 * math.pi * s / 5), math.sin(2 * math.pi * s / 5))
    det = er[0] * es[1] - er[1] * es[0]
    return ((float(p) * es[1] - float(q) * er[1]) / det, (er[0] * float(q) - es[0] * float(p)) / det)


def _intersections(p: PentagridParams):
    r2 = None if p.radius is None else QSqrt5(p.radius * p.radius)
    for r in range(5):
        for s in range(r + 1, 5):
            for kr in p.lines(r):
                for ks in p.lines(s):
                    if r2 is not None and _norm_sq(kr - p.gamma[r], ks - p.gamma[s], r, s) > r2:
                        continue
                    yield r, kr, s, ks


def _face_base(p: PentagridParams, r: int, kr: int, s: int, ks: int) -> list[int]:
    pr, qs = kr - p.gamma[r], ks - p.gamma[s]
    K = [0] * 5
    K[r], K[s] = kr, ks
    for j in range(5):
        if j in (r, s):
            continue
        a, b = _coeffs(r, s, j)
        val = a * pr + b * qs + p.gamma[j]
        if not val.is_integer():
            K[j] = val.ceil()
            continue
        d = p.perturbation
        slope = None if d is None else QSqrt5(d[j]) - a * d[r] - b * d[s]
        if slope is None or slope.sign() == 0:
            raise DegeneratePentagridError([(r, kr), (s, ks), (j, int(val.a))], _point(pr, qs, r, s))
        K[j] = int(val.a) + (1 if slope.sign() > 0 else 0)
    return K


def generate_patch(p: PentagridParams, largest_component: bool | None = None) -> PenrosePatch:
    """Exact rhombus patch with one face per in-window grid intersection.

    Radius windows keep the largest connected piece (the default there);
    index windows keep every face.
    """
    if largest_component is None:
        largest_component = p.radius is not None
    raw = []
    for r, kr, s, ks in _intersections(p):
        K = _face_base(p, r, kr, s, ks)
        corners = []
        for a, b in ((0, 0), (1, 0), (1, 1), (0, 1)):
            kk = list(K)
            kk[r] += a
            kk[s] += b
            corners.append(Cyclo5(kk))
        raw.append((r, kr, s, ks, corners))

    points = sorted({c for *_, cs in raw for c in cs}, key=lambda c: c.k)
    vid = {c: i for i, c in enumerate(points)}
    faces, labels, edges = [], {}, set()
    for r, kr, s, ks, cs in raw:
        vs = tuple(vid[c] for c in cs)
        faces.append(Face(r, kr, s, ks, vs))
        for (u, w), line in (((vs[0], vs[1]), (r, kr)), ((vs[3], vs[2]), (r, kr)),
                             ((vs[0], vs[3]), (s, ks)), ((vs[1], vs[2]), (s, ks))):
            e = edge_key(u, w)
            if labels.setdefault(e, line) != line:
                raise ValueError(f"edge {e} is dual to two grid lines")
            edges.add(e)
    g = Graph(range(len(points)), edges)

    if largest_component and faces:
        comps = connected_components(g)
        keep = max(comps, key=len)
        if len(keep) < len(points):
            faces = [f for f in faces if f.vertices[0] in keep]
            old = sorted(keep)
            remap = {v: i for i, v in enumerate(old)}
            faces = [Face(f.r, f.kr, f.s, f.ks, tuple(remap[v] for v in f.vertices)) for f in faces]
            labels = {edge_key(remap[u], remap[w]): ln for (u, w), ln in labels.items() if u in keep}
            points = [points[v] for v in old]
            g = Graph(range(len(points)), labels)

    fw = Framework(g, exact={i: c for i, c in enumerate(points)})
    core = frozenset(ln for f in faces for ln in f.lines if p.is_core(*ln))
    return PenrosePatch(p, fw, tuple(faces), labels, core)


def tile_type(face: Face | tuple) -> TileType:
    """T (angles 72/108) for adjacent directions, t (36/144) otherwise."""
    j, l = face.directions if isinstance(face, Face) else face
    diff = (l - j) % 5
    if diff == 0:
        raise ValueError("a rhombus needs two distinct directions")
    return "T" if diff in (1, 4) else "t"


def face_angles(patch: PenrosePatch, face: Face) -> list[float]:
    pts = [patch.framework.point(v) for v in face.vertices]
    out = []
    for i in range(4):
        a, b, c = pts[i - 1], pts[i], pts[(i + 1) % 4]
        u = (a[0] - b[0], a[1] - b[1])
        w = (c[0] - b[0], c[1] - b[1])
        cosang = (u[0] * w[0] + u[1] * w[1]) / (math.hypot(*u) * math.hypot(*w))
        out.append(math.degrees(math.acos(max(-1.0, min(1.0, cosang)))))
    return out


# ------------------------------------------------------------ ribbon checks


@dataclass(frozen=True)
class RibbonPropertyReport:
    labels_refine: bool
    adjacency_iff_nonparallel: bool
    five_directions: bool
    unique_shared_face: bool
    shared_face_type: bool
    infinitude: str = "not checkable at patch scale"
    failures: tuple = ()

    @property
    def ok(self) -> bool:
        return (self.labels_refine and self.adjacency_iff_nonparallel and self.five_directions
                and self.unique_shared_face and self.shared_face_type)


def verify_ribbon_properties(patch: PenrosePatch, rd: RibbonDecomposition | None = None) -> RibbonPropertyReport:
    """Check the ribbon structure on pairs of core lines.

    Combinatorial ribbons must each sit inside one labelled line; core lines
    are adjacent exactly when non-parallel, every edge points along one of
    five directions at 72 degree spacing, and non-parallel core lines share
    exactly one face, fat for neighbouring directions and thin otherwise.
    """
    rd = rd or compute_ribbons(patch.graph)
    failures = []
    refine = all(len({patch.ribbon_labels[e] for e in r}) == 1 for r in rd.ribbons)
    if not refine:
        failures.append("a combinatorial ribbon spans two grid lines")

    fw = patch.framework
    five = True
    for (u, w), (j, _) in patch.ribbon_labels.items():
        d = fw.exact[w] - fw.exact[u]
        if d.unit_index() not in (j, -(j + 1)):
            five = False
            failures.append(f"edge {(u, w)} is not parallel to e_{j}")
            break

    shared: dict = {}
    for f in patch.faces:
        if f.lines[0] in patch.core_lines and f.lines[1] in patch.core_lines:
            shared.setdefault(f.lines, []).append(f)
    core = sorted(patch.core_lines)
    adj_ok = unique_ok = type_ok = True
    for a, b in iter_pairs(core):
        got = shared.get((a, b), []) + shared.get((b, a), [])
        parallel = a[0] == b[0]
        if parallel == bool(got):
            adj_ok = False
            failures.append(f"lines {a} and {b}: adjacency does not match parallelism")
        if not parallel:
            if len(got) != 1:
                unique_ok = False
                failures.append(f"lines {a} and {b} share {len(got)} faces")
            elif tile_type(got[0]) != tile_type((a[0], b[0])):
                type_ok = False
    return RibbonPropertyReport(refine, adj_ok, five, unique_ok, type_ok, failures=tuple(failures))


# --------------------------------------------------------------- bracing


def _faces_of_type(patch: PenrosePatch, kind: str) -> list[int]:
    if kind not in ("T", "t", "all"):
        raise ValueError(f"unknown tile type {kind!r}")
    return [i for i, f in enumerate(patch.faces) if kind == "all" or tile_type(f) == kind]


def orientation(face: Face) -> frozenset:
    """The unordered direction pair; faces share it iff they are translates."""
    return frozenset(face.directions)


def select_faces(patch: PenrosePatch, strategy: str, **kw) -> list[int]:
    """Face indices braced by a strategy.

    Strategies: ``two_ribbons`` (r1, r2 as grid-line labels), ``all_tiles``
    (kind), ``all_but_orientation`` (kind, orientation), ``random`` (kind, p,
    seed) and ``explicit`` (faces).
    """
    if strategy == "two_ribbons":
        lines = {tuple(kw["r1"]), tuple(kw["r2"])}
        known = {ln for f in patch.faces for ln in f.lines}
        if not lines <= known:
            raise ValueError(f"unknown ribbon among {sorted(lines)}")
        return [i for i, f in enumerate(patch.faces) if lines & set(f.lines)]
    if strategy == "all_tiles":
        return _faces_of_type(patch, kw.get("kind", "T"))
    if strategy == "all_but_orientation":
        kind = kw.get("kind", "T")
        sigma = frozenset(kw["orientation"])
        if len(sigma) != 2 or not sigma <= set(range(5)) or (kind != "all" and tile_type(tuple(sigma)) != kind):
            raise ValueError(f"unknown orientation {sorted(sigma)} for tile {kind}")
        return [i for i in _faces_of_type(patch, kind) if orientation(patch.faces[i]) != sigma]
    if strategy == "random":
        p = float(kw["p"])
        if not 0 <= p <= 1:
            raise ValueError("p must lie in [0, 1]")
        u = face_uniforms(patch, kw.get("seed", 0))
        return [i for i in _faces_of_type(patch, kw.get("kind", "T")) if u[i] < p]
    if strategy == "explicit":
        idx = [int(i) for i in kw["faces"]]
        if any(not 0 <= i < len(patch.faces) for i in idx):
            raise ValueError("face index out of range")
        return sorted(set(idx))
    raise ValueError(f"unknown bracing strategy {strategy!r}")


def face_uniforms(patch: PenrosePatch, seed) -> list[float]:
    # one draw per face so that raising p only adds braces
    rng = random.Random(f"rigidity-kit:{seed}")
    return [rng.random() for _ in patch.faces]


def brace(patch: PenrosePatch, strategy: str, **kw) -> BracedGraph:
    faces = select_faces(patch, strategy, **kw)
    return BracedGraph(patch.graph, [patch.faces[i].brace for i in faces], check_cutting=False)


# ---------------------------------------------------------- patch verdicts


@dataclass(frozen=True)
class PatchVerdict:
    verdict: Literal["rigid", "flexible"]
    components: tuple
    scope: str = "patch-level"

    @property
    def rigid(self) -> bool:
        return self.verdict == "rigid"


def core_bracing_components(patch: PenrosePatch, braced_faces: Iterable[int]) -> list[frozenset]:
    uf = UnionFind(patch.core_lines)
    for i in braced_faces:
        a, b = patch.faces[i].lines
        if a in patch.core_lines and b in patch.core_lines:
            uf.union(a, b)
    return sorted(uf.groups(), key=min)


def patch_rigidity(patch: PenrosePatch, braced_faces: Iterable[int]) -> PatchVerdict:
    """Connectivity of the bracing graph on the core ribbons."""
    comps = core_bracing_components(patch, braced_faces)
    return PatchVerdict("rigid" if len(comps) <= 1 else "flexible", tuple(comps))


def monte_carlo_rigidity(patch: PenrosePatch, kind: str, p: float, trials: int, seed: int = 0) -> float:
    """Fraction of seeded trials whose random bracing is rigid at patch level."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    hits = 0
    for trial in range(trials):
        faces = select_faces(patch, "random", kind=kind, p=p, seed=f"{seed}/{trial}")
        hits += patch_rigidity(patch, faces).rigid
    return hits / trials


def class_graph(kind: str, exclude: Iterable[int] | None = None) -> Graph:
    """Direction classes 0..4 joined when some braced tile has both directions.

    With ``kind='T'`` classes i, i+1 are joined (a 5-cycle); excluding one
    orientation leaves a path.
    """
    skip = frozenset(exclude) if exclude is not None else None
    edges = []
    for i, j in iter_pairs(list(range(5))):
        if kind != "all" and tile_type((i, j)) != kind:
            continue
        if skip is not None and frozenset((i, j)) == skip:
            continue
        edges.append((i, j))
    return Graph(range(5), edges)


def class_graph_connected(kind: str, exclude: Iterable[int] | None = None) -> bool:
    return is_connected(class_graph(kind, exclude))


# ------------------------------------------------------- symmetric patches

# equal offsets c with 5c integral; c and 1 - c give point-reflected copies
VARIANTS = {"sun": Fraction(4, 5), "star": Fraction(2, 5)}


def symmetric_patch(radius, variant: str = "sun") -> tuple[PenrosePatch, SymmetryAction]:
    """A patch invariant under clockwise rotation by 72 degrees, with its C5 action.

    Every family gets the same offset, so rotating the plane by 72 degrees
    permutes the families. Any concurrency is resolved by a uniform symbolic
    push of the offsets, which keeps the symmetry.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {sorted(VARIANTS)}")
    c = VARIANTS[variant]
    patch = generate_patch(PentagridParams((c,) * 5, radius=radius, perturbation=(1,) * 5))
    ex = patch.framework.exact
    where = {c: v for v, c in ex.items()}
    gen = {}
    for v, c in ex.items():
        w = where.get(c.rotate(1))
        if w is None:
            raise ValueError(f"patch at radius {radius} is not rotation invariant")
        gen[v] = w
    action = SymmetryAction(5, gen)
    for u, w in patch.graph.edges:
        if not patch.graph.has_edge(gen[u], gen[w]):
            raise ValueError(f"patch at radius {radius} is not rotation invariant")
    return patch, action


def check_patch_geometry(patch: PenrosePatch, tol: float = 1e-9) -> list[str]:
    """Problems with parallelograms, unit edges or rhombus angles (empty if none)."""
    problems = []
    rep = validate_parallelogram(patch.framework)
    if not rep.ok:
        problems.append(f"parallelogram check failed: {rep.reason} at {rep.cycle}")
    ex = patch.framework.exact
    for u, w in patch.graph.edges:
        if (ex[w] - ex[u]).unit_index() is None:
            problems.append(f"edge {(u, w)} is not a unit root")
            break
    allowed = (36.0, 72.0, 108.0, 144.0)
    for f in patch.faces:
        for ang in face_angles(patch, f):
            if min(abs(ang - a) for a in allowed) > tol:
                problems.append(f"face {f.lines} has angle {ang}")
                return problems
    return problems
