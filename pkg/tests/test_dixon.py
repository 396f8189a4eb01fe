import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from rigidity_kit.dixon import DixonLinkage, dixon_flex, dixon_flexible
from rigidity_kit.framework import check_flex


def test_three_four_five():
    d = DixonLinkage([3], [4])
    f = d.framework()
    assert f.length((0, 1)) == 5.0


def test_smallest_point_reaches_origin():
    x = dixon_flex(DixonLinkage([1, 2], [1, 3]))
    xs, ys = x.coordinates(1.0)
    assert xs[0] == 0.0
    assert xs[1] == pytest.approx(math.sqrt(3))
    assert ys == pytest.approx([math.sqrt(2), math.sqrt(10)])


def test_identity_at_start():
    d = DixonLinkage([1.5, 2, 4], [0.7, 3])
    assert dixon_flex(d).evaluate(0.0).placement == d.framework().placement


def test_larger_infimum_side_shrinks():
    assert dixon_flex(DixonLinkage([2, 3], [1, 5])).shrink == "x"
    assert dixon_flex(DixonLinkage([1, 3], [2, 5])).shrink == "y"
    assert dixon_flex(DixonLinkage([1, 3], [1, 5])).shrink == "x"


def test_tail_infimum_sets_speed():
    d = DixonLinkage([2, 3], [4, 5], tail_inf_x=0.5, tail_inf_y=1.0)
    x = dixon_flex(d)
    assert (x.c, x.shrink) == (0.5, "y")


def test_verdicts():
    assert dixon_flexible(DixonLinkage([1, 2], [3])) == "flexible"
    assert dixon_flexible(DixonLinkage([1, 2], [3], tail_inf_x=0.0)) == "rigid"
    assert dixon_flexible(DixonLinkage([1, 2], [3], tail_inf_x=0.2, tail_inf_y=0.1)) == "flexible"
    with pytest.raises(ValueError):
        dixon_flex(DixonLinkage([1], [3], tail_inf_y=0.0))


@pytest.mark.parametrize("x, y, kw", [
    ([], [1], {}),
    ([1, 1], [2], {}),
    ([-1], [2], {}),
    ([float("inf")], [2], {}),
    ([1], [2], {"tail_inf_x": 1.5}),
    ([1], [2], {"tail_inf_y": -0.1}),
])
def test_invalid_linkages(x, y, kw):
    with pytest.raises(ValueError):
        DixonLinkage(x, y, **kw)


def test_flex_is_nontrivial_and_length_preserving():
    rng = random.Random(7)
    d = DixonLinkage(rng.sample(range(1, 100), 8), rng.sample(range(1, 100), 6))
    rep = check_flex(d.framework(), dixon_flex(d), samples=32)
    assert rep.max_length_deviation < 1e-9
    assert rep.nontrivial


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(1, 60), min_size=1, max_size=5, unique=True),
    st.lists(st.integers(1, 60), min_size=1, max_size=5, unique=True),
    st.floats(0, 1),
)
def test_squared_lengths_exact_on_integers(xs, ys, t):
    x = dixon_flex(DixonLinkage(xs, ys))
    a, b = x.coordinates(t)
    for i, xv in enumerate(xs):
        for j, yv in enumerate(ys):
            assert a[i] ** 2 + b[j] ** 2 == pytest.approx(xv * xv + yv * yv, rel=1e-12)
    # order along each axis is preserved through the motion
    assert sorted(range(len(a)), key=a.__getitem__) == sorted(range(len(xs)), key=xs.__getitem__)
