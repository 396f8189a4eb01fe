"""Acceptance criteria, one marker per criterion; verdict lines appear in the terminal summary."""

import itertools
import math
import random
import time
from fractions import Fraction

import pytest

from rigidity_kit.catalog import (
    acceptance_graphs,
    cube,
    five_square_framework,
    grid,
    grid_rotation,
    grid_spoke_coloring,
    grid_vertex,
    penrose_c5_patch,
    six_square_framework,
)
from rigidity_kit.dixon import DixonLinkage, dixon_flex, dixon_flexible
from rigidity_kit.framework import (
    check_flex,
    flex_from_nac,
    pframework_flex,
    symmetric_flex,
    validate_parallelogram,
)
from rigidity_kit.nac import (
    CycleOracle,
    EdgeColoring,
    enumerate_nac,
    is_cartesian,
    is_nac,
    is_symmetric_nac,
    iter_nac,
)
from rigidity_kit.penrose import (
    PentagridParams,
    check_patch_geometry,
    class_graph_connected,
    face_angles,
    generate_patch,
    monte_carlo_rigidity,
    patch_rigidity,
    select_faces,
    symmetric_patch,
    verify_ribbon_properties,
)
from rigidity_kit.ribbons import (
    BracedGraph,
    compute_ribbons,
    decide_rigidity,
    decide_symmetric_rigidity,
    quotient_bracing_graph,
    ribbon_graph,
)

acceptance = pytest.mark.acceptance
GAMMA = (Fraction(13, 100), Fraction(27, 100), Fraction(1, 5), Fraction(3, 20), Fraction(1, 4))


@pytest.fixture(scope="module")
def patch():
    start = time.perf_counter()
    p = generate_patch(PentagridParams(GAMMA, radius=4))
    return p, time.perf_counter() - start


def _coloring(g, mask):
    edges = sorted(g.edges)
    return EdgeColoring([e for i, e in enumerate(edges) if mask >> i & 1],
                        [e for i, e in enumerate(edges) if not mask >> i & 1])


# 1 -----------------------------------------------------------------------

@acceptance(1, "fast NAC check agrees with cycle oracle on every coloring of 10 graphs, < 30 s")
def test_nac_check_matches_oracle_exhaustively():
    start = time.perf_counter()
    disagreements = []
    for name, g in acceptance_graphs().items():
        oracle = CycleOracle(g)
        for mask in range(2 ** len(g.edges)):
            c = _coloring(g, mask)
            if is_nac(g, c) != oracle(c):
                disagreements.append((name, mask))
    elapsed = time.perf_counter() - start
    print(f"criterion 1: {len(disagreements)} disagreements in {elapsed:.1f} s")
    assert disagreements == []
    assert elapsed < 30


# 2 -----------------------------------------------------------------------

@acceptance(2, "2x2 grid: two C4-invariant NAC-colorings, swapped, neither cartesian nor C4-symmetric")
def test_grid_invariant_coloring_is_unique_up_to_swap():
    g, a = grid(2, 2), grid_rotation(2)
    found = enumerate_nac(g, action=a)
    assert len(found) == 2
    first, second = found
    assert (first.red, first.blue) == (second.blue, second.red)
    assert grid_spoke_coloring() in found
    for c in found:
        assert not is_cartesian(g, c)
        assert not is_symmetric_nac(g, a, c)
    print(f"criterion 2: invariant colorings {len(found)}, all NAC-colorings {len(enumerate_nac(g))}")


# 3 -----------------------------------------------------------------------

@acceptance(3, "five/six parallelogram frameworks: ribbons, ribbon and bracing graphs, verdicts")
def test_parallelogram_frameworks():
    _, five = five_square_framework()
    rd = compute_ribbons(five.base)
    rg = ribbon_graph(five, rd)
    assert len(rd) == 4
    assert rg.edges == {(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)}
    assert rg.braced == {(0, 1), (1, 2), (2, 3)}
    assert decide_rigidity(five).rigid

    f6, six = six_square_framework()
    rd = compute_ribbons(six.base)
    rg = ribbon_graph(six, rd)
    assert len(rd) == 6
    assert rg.edges == {(0, 1), (0, 2), (0, 4), (1, 2), (1, 3), (4, 5)}
    assert rg.braced == {(0, 1), (0, 4), (1, 3)}
    v = decide_rigidity(six)
    assert v.verdict == "flexible"
    assert is_nac(six.graph, v.coloring) and is_cartesian(six.graph, v.coloring)
    assert validate_parallelogram(f6).ok


# 4 -----------------------------------------------------------------------

def _diagonals(rows, cols):
    out = []
    for i in range(rows):
        for j in range(cols):
            out.append((grid_vertex(i, j, cols), grid_vertex(i + 1, j + 1, cols)))
            out.append((grid_vertex(i, j + 1, cols), grid_vertex(i + 1, j, cols)))
    return out


@acceptance(4, "grid bracings with at most 4 braces: verdict matches exhaustive cartesian NAC search")
@pytest.mark.parametrize("rows, cols", [(2, 2), (2, 3)])
def test_grid_bracing_verdicts(rows, cols):
    g = grid(rows, cols)
    diags = _diagonals(rows, cols)
    checked, disagreements = 0, []
    for k in range(5):
        for braces in itertools.combinations(diags, k):
            b = BracedGraph(g, braces)
            rigid = decide_rigidity(b).rigid
            flexible = any(is_cartesian(b.graph, c) for c in iter_nac(b.graph))
            checked += 1
            if rigid == flexible:
                disagreements.append(braces)
    print(f"criterion 4: {rows}x{cols} grid, {checked} bracings, {len(disagreements)} disagreements")
    assert checked == sum(math.comb(len(diags), k) for k in range(5))
    assert disagreements == []


# 5 -----------------------------------------------------------------------

def _assert_flex(f, x, action=None):
    rep = check_flex(f, x, samples=64, tol=1e-9, action=action)
    assert rep.max_length_deviation < 1e-9
    assert rep.nontrivial and rep.witness is not None
    if action is not None:
        assert rep.equivariance_residual < 1e-9
    return rep


def _offset(f, x, shift):
    f0 = x.evaluate(0.0)
    return max(math.dist(f0.point(v), (f.point(v)[0] - shift[0], f.point(v)[1] - shift[1])) for v in f.graph.vertices)


@acceptance(5, "constructed flexes conserve lengths within 1e-9, start at the base condition within 1e-12, move")
def test_flex_from_coloring_components():
    g = cube()
    for c in enumerate_nac(g, limit=10):
        x = flex_from_nac(g, c)
        f = x.evaluate(0.0)
        _assert_flex(f, x)
        assert max(math.dist(x.evaluate(t).point(x.base_vertex), (0.0, 0.0)) for t in (0.0, 1.0, 4.0)) < 1e-12


@acceptance(5, "constructed flexes conserve lengths within 1e-9, start at the base condition within 1e-12, move")
def test_parallelogram_flexes():
    f, b = six_square_framework()
    x = pframework_flex(f, decide_rigidity(b).coloring)
    _assert_flex(f, x)
    assert _offset(f, x, f.point(x.base_vertex)) < 1e-12

    fp, _, c = penrose_c5_patch()
    for base in (0, 17, 99):
        x = pframework_flex(fp, c, base)
        _assert_flex(fp, x)
        assert _offset(fp, x, fp.point(base)) < 1e-12


@acceptance(5, "constructed flexes conserve lengths within 1e-9, start at the base condition within 1e-12, move")
def test_symmetric_flex_base_condition():
    f, a, c = penrose_c5_patch()
    base = 40
    x = symmetric_flex(f, a, c, base)
    _assert_flex(f, x, a)
    orbit = [base]
    for _ in range(a.k - 1):
        orbit.append(a.apply(orbit[-1]))
    centre = tuple(sum(f.point(v)[i] for v in orbit) / a.k for i in (0, 1))
    assert _offset(f, x, centre) < 1e-12


@acceptance(5, "constructed flexes conserve lengths within 1e-9, start at the base condition within 1e-12, move")
def test_dixon_flex_starts_at_input():
    d = DixonLinkage([1, 2.5, 4], [1.5, 3])
    x = dixon_flex(d)
    f = d.framework()
    _assert_flex(f, x)
    assert _offset(f, x, (0.0, 0.0)) < 1e-12


# 6 -----------------------------------------------------------------------

@acceptance(6, "300+ face patch: exact parallelograms, unit edges, tile angles, ribbon properties, < 10 s")
def test_patch_validity(patch):
    p, elapsed = patch
    print(f"criterion 6: {len(p.faces)} faces generated in {elapsed:.2f} s")
    assert len(p.faces) >= 300 and elapsed < 10
    assert validate_parallelogram(p.framework).ok
    assert check_patch_geometry(p, tol=1e-9) == []
    assert all(abs(p.framework.length(e) - 1) < 1e-9 for e in p.graph.edges)
    allowed = (36, 72, 108, 144)
    for face in p.faces:
        assert all(min(abs(a - b) for b in allowed) < 1e-9 for a in face_angles(p, face))
    assert verify_ribbon_properties(p).ok


# 7 -----------------------------------------------------------------------

@acceptance(7, "patch bracings: ribbon pairs, all fat tiles, all but one orientation")
def test_patch_bracing_strategies(patch):
    p, _ = patch
    core = sorted(p.core_lines)
    a = core[0]
    cross = next(ln for ln in core if ln[0] != a[0])
    parallel = next(ln for ln in core if ln[0] == a[0] and ln != a)
    assert patch_rigidity(p, select_faces(p, "two_ribbons", r1=a, r2=cross)).rigid
    assert not patch_rigidity(p, select_faces(p, "two_ribbons", r1=a, r2=parallel)).rigid
    assert class_graph_connected("T")
    assert patch_rigidity(p, select_faces(p, "all_tiles", kind="T")).rigid
    for sigma in ((0, 1), (1, 2), (2, 3), (3, 4), (0, 4)):
        assert class_graph_connected("T", sigma)
        assert patch_rigidity(p, select_faces(p, "all_but_orientation", kind="T", orientation=sigma)).rigid


# 8 -----------------------------------------------------------------------

@acceptance(8, "five-fold symmetric patch is symmetrically flexible; reference coloring flexes equivariantly")
def test_five_fold_symmetric_flexibility():
    p, a = symmetric_patch(4, "sun")
    b = BracedGraph(p.graph)
    q = quotient_bracing_graph(b, a)
    assert len(q.vertices) >= 2 and not q.edges
    v = decide_symmetric_rigidity(b, a)
    assert v.verdict == "flexible"
    assert is_symmetric_nac(p.graph, a, v.coloring)

    f, a5, c = penrose_c5_patch()
    assert is_cartesian(f.graph, c) and is_symmetric_nac(f.graph, a5, c)
    rep = _assert_flex(f, symmetric_flex(f, a5, c, 0), a5)
    print(f"criterion 8: equivariance residual {rep.equivariance_residual:.2e}")


# 9 -----------------------------------------------------------------------

MC_PINNED = {0.25: 0.01, 0.5: 0.55, 0.75: 0.96, 1.0: 1.0}


@acceptance(9, "Monte Carlo rigid fraction: 1.0 at p = 1, non-decreasing in p, pinned values")
def test_monte_carlo_fat_tiles(patch):
    p, _ = patch
    got = {q: monte_carlo_rigidity(p, "T", q, 200, seed=0) for q in MC_PINNED}
    print(f"criterion 9: {got}")
    assert got[1.0] == 1.0
    values = [got[q] for q in sorted(got)]
    assert values == sorted(values)
    assert got == MC_PINNED


# 10 ----------------------------------------------------------------------

@acceptance(10, "Dixon verdicts follow the tail infima; 50+50 flex keeps all 2500 lengths within 1e-9")
def test_dixon_large():
    assert dixon_flexible(DixonLinkage([1, 2], [3, 4], tail_inf_x=0.5, tail_inf_y=0.25)) == "flexible"
    assert dixon_flexible(DixonLinkage([1, 2], [3, 4], tail_inf_x=0.0)) == "rigid"
    assert dixon_flexible(DixonLinkage([1, 2], [3, 4], tail_inf_y=0.0)) == "rigid"
    rng = random.Random(2500)
    xs = rng.sample(range(100, 10_000), 50)
    ys = rng.sample(range(100, 10_000), 50)
    d = DixonLinkage([v / 100 for v in xs], [v / 100 for v in ys], tail_inf_x=0.5, tail_inf_y=0.8)
    f = d.framework()
    assert len(f.graph.edges) == 2500
    rep = check_flex(f, dixon_flex(d), samples=64, tol=1e-9)
    print(f"criterion 10: max length deviation {rep.max_length_deviation:.2e}")
    assert rep.max_length_deviation < 1e-9 and rep.nontrivial
