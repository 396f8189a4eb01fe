import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rigidity_kit.cyclotomic import COS5, INV_PHI, PHI, SIN5_RATIO, SIN5_SQ, Cyclo5, QSqrt5, unit

ints = st.integers(-50, 50)
fracs = st.fractions(min_value=-20, max_value=20, max_denominator=50)
qs = st.builds(QSqrt5, fracs, fracs)


def test_golden_ratio_identities():
    assert PHI * PHI == PHI + 1
    assert PHI * INV_PHI == 1
    assert abs(float(PHI) - (1 + math.sqrt(5)) / 2) < 1e-15


@pytest.mark.parametrize("m", range(5))
def test_trig_tables(m):
    assert abs(float(COS5[m]) - math.cos(2 * math.pi * m / 5)) < 1e-15
    assert abs(float(SIN5_SQ[m]) - math.sin(2 * math.pi * m / 5) ** 2) < 1e-15
    assert abs(float(SIN5_RATIO[m]) - math.sin(2 * math.pi * m / 5) / math.sin(2 * math.pi / 5)) < 1e-15


@given(qs, qs)
def test_field_arithmetic_matches_floats(x, y):
    assert abs(float(x + y) - (float(x) + float(y))) < 1e-9
    assert abs(float(x * y) - float(x) * float(y)) < 1e-6
    if y != 0:
        assert (x / y) * y == x


@given(qs)
def test_sign_is_exact(x):
    f = float(x)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
    assert (x - x).sign() == 0
    assert x.floor() <= f + 1e-9 < x.floor() + 1 + 1e-9


def test_floor_and_ceil_near_integers():
    x = QSqrt5(Fraction(-1, 2), Fraction(1, 2)) * 2 + 1  # sqrt 5
    assert x.floor() == 2 and x.ceil() == 3
    assert QSqrt5(3).floor() == 3 and QSqrt5(3).ceil() == 3


def test_canonical_form_uses_relation():
    assert Cyclo5((1, 1, 1, 1, 1)).is_zero()
    assert Cyclo5((2, 1, 1, 1, 1)) == Cyclo5.e(0)
    assert Cyclo5((0, 0, 0, 0, 1)).k == (-1, -1, -1, -1, 0)


@given(st.tuples(ints, ints, ints, ints, ints), st.integers(0, 9))
def test_rotation_is_a_cyclic_shift(k, steps):
    p = Cyclo5(k)
    x, y = p.to_float()
    a = -2 * math.pi * steps / 5
    rx, ry = p.rotate(steps).to_float()
    assert abs(rx - (math.cos(a) * x - math.sin(a) * y)) < 1e-9
    assert abs(ry - (math.sin(a) * x + math.cos(a) * y)) < 1e-9
    assert p.rotate(5) == p


@pytest.mark.parametrize("j", range(5))
def test_unit_index(j):
    assert Cyclo5.e(j).unit_index() == j
    assert (-Cyclo5.e(j)).unit_index() == -(j + 1)
    assert math.dist(Cyclo5.e(j).to_float(), unit(j)) < 1e-15
    assert (Cyclo5.e(0) + Cyclo5.e(1)).unit_index() is None
