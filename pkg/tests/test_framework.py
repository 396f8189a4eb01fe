import math
import random
from collections import deque
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from rigidity_kit.catalog import (
    cube_framework,
    cycle,
    grid,
    grid_framework,
    grid_vertex,
    penrose_c5_patch,
    six_square_framework,
)
from rigidity_kit.framework import (
    Flex,
    Framework,
    WalkSumError,
    _walk_sums,
    are_parallel,
    check_flex,
    evaluate_flex,
    exact_walk_sums,
    flex_from_nac,
    pframework_flex,
    ribbon_directions,
    symmetric_flex,
    validate_framework,
    validate_parallelogram,
)
from rigidity_kit.graph import SymmetryAction
from rigidity_kit.nac import BLUE, EdgeColoring, enumerate_nac, is_cartesian
from rigidity_kit.ribbons import BracedGraph, cartesian_nac_from_partition, compute_ribbons, decide_rigidity

SQUARE = Framework(cycle(4), {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1)})
ALTERNATING = EdgeColoring([(0, 1), (2, 3)], [(1, 2), (0, 3)])


def test_validate_framework():
    assert validate_framework(SQUARE)
    assert not validate_framework(Framework(cycle(4), {0: (0, 0), 1: (0, 0), 2: (1, 1), 3: (0, 1)}))


def test_placement_must_cover_vertices():
    with pytest.raises(ValueError):
        Framework(cycle(4), {0: (0, 0)})


def test_parallelogram_checks():
    assert validate_parallelogram(SQUARE).ok
    anti = Framework(cycle(4), {0: (0, 0), 1: (1, 0), 2: (0, 1), 3: (1, 1)})
    rep = validate_parallelogram(anti)
    assert not rep.ok and rep.cycle == (0, 1, 2, 3)
    g = grid(1, 2)
    squashed = {v: p for v, p in grid_framework(1, 2).placement.items()}
    squashed[grid_vertex(0, 2, 2)] = squashed[grid_vertex(0, 1, 2)]
    assert not validate_parallelogram(Framework(g, squashed)).ok


def test_ribbon_directions_on_grid():
    f = grid_framework(2, 2)
    rd = compute_ribbons(f.graph)
    dirs = ribbon_directions(f, rd.ribbons)
    assert sorted(dirs) == [(0.0, 1.0), (0.0, 1.0), (1.0, 0.0), (1.0, 0.0)]
    rows = [d for d in dirs if d == (0.0, 1.0)]
    assert are_parallel(rows[0], rows[1])
    assert not are_parallel(dirs[0], (math.sqrt(0.5), math.sqrt(0.5)))


def test_ribbon_directions_reject_bent_ribbon():
    f = Framework(cycle(4), {0: (0, 0), 1: (1, 0), 2: (1, 1), 3: (0, 1.5)})
    with pytest.raises(ValueError):
        ribbon_directions(f, compute_ribbons(f.graph).ribbons)


def test_square_flex_from_nac():
    red_pts = {0: (0.0, 0.0), 1: (1.0, 0.0)}
    blue_pts = {0: (0.0, 0.0), 1: (0.0, 1.0)}
    x = flex_from_nac(cycle(4), ALTERNATING, red_pts, blue_pts)
    f0 = x.evaluate(0.0)
    # red component {0, 1} sits at the origin, blue component {1, 2} at (0, 1)
    assert {v: f0.point(v) for v in range(4)} == {0: (0, 0), 1: (0, 1), 2: (1, 1), 3: (1, 0)}
    rep = check_flex(f0, x)
    assert rep.max_length_deviation < 1e-12 and rep.nontrivial


def test_flex_from_nac_rejects_repeated_points():
    with pytest.raises(ValueError):
        flex_from_nac(cycle(4), ALTERNATING, {0: (0, 0), 1: (0, 0)}, {0: (0, 0), 1: (0, 1)})
    with pytest.raises(ValueError):
        flex_from_nac(cycle(4), EdgeColoring(cycle(4).edges, []))


def test_flex_period_and_degenerate_instant():
    x = pframework_flex(SQUARE, ALTERNATING)
    a, b = evaluate_flex(x, 0.0), evaluate_flex(x, 2 * math.pi)
    assert all(math.dist(a.point(v), b.point(v)) < 1e-12 for v in range(4))
    mid = evaluate_flex(x, math.pi / 2)
    assert all(abs(mid.length(e) - 1.0) < 1e-12 for e in mid.graph.edges)
    # the square collapses onto a segment: a parallelogram, but not injective
    assert not validate_parallelogram(mid).ok


def test_pframework_offsets_are_side_vectors():
    x = pframework_flex(SQUARE, ALTERNATING, 0)
    assert x.rotating[3] == (0.0, 1.0) and x.fixed[1] == (1.0, 0.0)
    assert x.rotating[2] == (0.0, 1.0) and x.fixed[2] == (1.0, 0.0)


def test_pframework_requires_cartesian():
    adjacent = EdgeColoring([(0, 1), (1, 2)], [(2, 3), (0, 3)])
    with pytest.raises(ValueError):
        pframework_flex(SQUARE, adjacent)


def test_walk_sum_inconsistency_reported():
    # nudging one cube corner breaks the three faces around it
    f = cube_framework()
    bent = dict(f.placement)
    bent[7] = (bent[7][0] + 0.3, bent[7][1])
    g = f.graph
    colors = enumerate_nac(g)
    c = next(c for c in colors if is_cartesian(g, c))
    with pytest.raises(ValueError):
        pframework_flex(Framework(g, bent), c)
    with pytest.raises(WalkSumError):
        _walk_sums(Framework(g, bent), c, 0)


def test_constant_path_is_trivial():
    still = Flex(cycle(4), 0, {v: (0.0, 0.0) for v in range(4)}, dict(SQUARE.placement))
    rep = check_flex(SQUARE, still)
    assert rep.max_length_deviation == 0 and not rep.nontrivial and rep.witness is None


def test_corrupted_offsets_detected():
    x = pframework_flex(SQUARE, ALTERNATING)
    bad = replace(x, rotating={**x.rotating, 2: (0.3, 1.0)})
    assert check_flex(SQUARE, bad).max_length_deviation > 1e-3


@pytest.mark.parametrize("rows, cols", [(1, 1), (2, 2), (2, 3)])
def test_grid_cartesian_flexes(rows, cols):
    f = grid_framework(rows, cols)
    for c in enumerate_nac(f.graph):
        if not is_cartesian(f.graph, c):
            continue
        x = pframework_flex(f, c)
        rep = check_flex(f, x)
        assert rep.max_length_deviation < 1e-9 and rep.nontrivial
        f0 = x.evaluate(0.0)
        base = f.point(x.base_vertex)
        for v in f.graph.vertices:
            want = (f.point(v)[0] - base[0], f.point(v)[1] - base[1])
            assert math.dist(f0.point(v), want) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_cartesian_flex_from_nac_is_injective(seed):
    rnd = random.Random(seed)
    g = grid(2, 2)
    cart = [c for c in enumerate_nac(g) if is_cartesian(g, c)]
    c = rnd.choice(cart)
    x = flex_from_nac(g, c)
    pts = list(x.evaluate(0.0).placement.values())
    assert len({(round(p[0], 9), round(p[1], 9)) for p in pts}) == len(pts)
    assert check_flex(x.evaluate(0.0), x).max_length_deviation < 1e-12


def test_non_cartesian_nac_flex_is_still_a_realization():
    g = grid(2, 2)
    c = next(c for c in enumerate_nac(g) if not is_cartesian(g, c))
    f0 = flex_from_nac(g, c).evaluate(0.0)
    assert validate_framework(f0)


def test_six_square_flex():
    f, b = six_square_framework()
    v = decide_rigidity(b)
    x = pframework_flex(f, v.coloring)
    rep = check_flex(f, x)
    assert rep.max_length_deviation < 1e-9 and rep.nontrivial
    # braced rhombi keep their shape: brace lengths are conserved too
    assert all(abs(x.evaluate(1.0).length(e) - f.length(e)) < 1e-9 for e in f.braces)


def _strip_action():
    gen = {grid_vertex(i, j, 3): grid_vertex(1 - i, 3 - j, 3) for i in range(2) for j in range(4)}
    return SymmetryAction(2, gen)


def test_symmetric_flex_on_c2_strip():
    f0 = grid_framework(1, 3)
    f = Framework(f0.graph, {v: (p[0] - 1.5, p[1] - 0.5) for v, p in f0.placement.items()})
    a = _strip_action()
    split = {0: "red", 1: "blue", 2: "blue", 3: "red"}
    rd = compute_ribbons(f.graph)
    # ribbons 0 and 3 are the outer columns; 1 holds all rungs, 2 the middle column
    c = cartesian_nac_from_partition(BracedGraph(f.graph), split, rd)
    x = symmetric_flex(f, a, c)
    rep = check_flex(f, x, action=a)
    assert rep.equivariance_residual < 1e-9 and rep.max_length_deviation < 1e-9 and rep.nontrivial


def test_symmetric_flex_rejects_asymmetric_coloring():
    f0 = grid_framework(1, 3)
    f = Framework(f0.graph, {v: (p[0] - 1.5, p[1] - 0.5) for v, p in f0.placement.items()})
    rd = compute_ribbons(f.graph)
    split = {i: ("red" if i == 0 else "blue") for i in range(len(rd))}
    c = cartesian_nac_from_partition(BracedGraph(f.graph), split, rd)
    with pytest.raises(ValueError):
        symmetric_flex(f, _strip_action(), c)


def test_penrose_symmetric_flex():
    f, a, c = penrose_c5_patch()
    x = symmetric_flex(f, a, c, 0)
    rep = check_flex(f, x, samples=64, action=a)
    assert rep.equivariance_residual < 1e-9
    assert rep.max_length_deviation < 1e-9 and rep.nontrivial
    # the base vertex is fixed by the rotation, so the centering term is zero at t = 0
    assert x.evaluate(0.0).point(0) == (0.0, 0.0)


def test_walk_sums_do_not_depend_on_the_walk():
    f, _, c = penrose_c5_patch()
    blue_sum, red_sum = exact_walk_sums(f, c, 0)
    rnd = random.Random(7)
    g = f.graph
    for target in rnd.sample(list(g.vertices), 10):
        for _ in range(10):
            # random BFS tree path from the base to the target
            parent, queue = {0: None}, deque([0])
            while queue:
                u = queue.popleft()
                nb = list(g.neighbors(u))
                rnd.shuffle(nb)
                for w in nb:
                    if w not in parent:
                        parent[w] = u
                        queue.append(w)
            acc_blue = acc_red = f.exact[0] - f.exact[0]
            v = target
            while parent[v] is not None:
                u = parent[v]
                d = f.exact[v] - f.exact[u]
                if c.color(u, v) == BLUE:
                    acc_blue = acc_blue + d
                else:
                    acc_red = acc_red + d
                v = u
            assert acc_blue == blue_sum[target] and acc_red == red_sum[target]


def test_exact_base_condition():
    f, _, c = penrose_c5_patch()
    x = pframework_flex(f, c, 5)
    f0 = x.evaluate(0.0)
    base = f.point(5)
    assert max(math.dist(f0.point(v), (f.point(v)[0] - base[0], f.point(v)[1] - base[1]))
               for v in f.graph.vertices) < 1e-12
