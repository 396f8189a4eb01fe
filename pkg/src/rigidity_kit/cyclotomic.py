"""Exact arithmetic for pentagonal geometry.

``QSqrt5`` is the real field Q(sqrt 5), enough for every dot product and
cross-product ratio between fifth roots of unity. ``Cyclo5`` is a point of
the lattice Z[zeta_5] written as an integer 5-tuple over e_0..e_4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

SQRT5 = math.sqrt(5.0)


@dataclass(frozen=True, order=False)
class QSqrt5:
    """a + b*sqrt(5) with rational a, b."""

    a: Fraction
    b: Fraction = Fraction(0)

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))

    @staticmethod
    def coerce(x) -> QSqrt5:
        return x if isinstance(x, QSqrt5) else QSqrt5(x)

    def __add__(self, o):
        o = QSqrt5.coerce(o)
        return QSqrt5(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt5(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-QSqrt5.coerce(o))

    def __rsub__(self, o):
        return QSqrt5.coerce(o) - self

    def __mul__(self, o):
        o = QSqrt5.coerce(o)
        return QSqrt5(self.a * o.a + 5 * self.b * o.b, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def conjugate(self) -> QSqrt5:
        return QSqrt5(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def __truediv__(self, o):
        o = QSqrt5.coerce(o)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt5)")
        num = self * o.conjugate()
        return QSqrt5(num.a / n, num.b / n)

    def __rtruediv__(self, o):
        return QSqrt5.coerce(o) / self

    def sign(self) -> int:
        a, b = self.a, self.b
        if b == 0:
            return (a > 0) - (a < 0)
        if a == 0:
            return (b > 0) - (b < 0)
        if a > 0 and b > 0:
            return 1
        if a < 0 and b < 0:
            return -1
        # opposite signs: compare a^2 with 5 b^2
        diff = a * a - 5 * b * b
        return (1 if a > 0 else -1) if diff > 0 else (1 if b > 0 else -1)

    def __eq__(self, o):
        if isinstance(o, (int, Fraction)):
            o = QSqrt5(o)
        if not isinstance(o, QSqrt5):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, o):
        return (self - o).sign() < 0

    def __le__(self, o):
        return (self - o).sign() <= 0

    def __gt__(self, o):
        return (self - o).sign() > 0

    def __ge__(self, o):
        return (self - o).sign() >= 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * SQRT5

    def is_integer(self) -> bool:
        return self.b == 0 and self.a.denominator == 1

    def floor(self) -> int:
        n = math.floor(float(self))
        # float guess is off by at most one near integers; settle exactly
        while QSqrt5(n) > self:
            n -= 1
        while QSqrt5(n + 1) <= self:
            n += 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def __repr__(self) -> str:
        return f"QSqrt5({self.a}, {self.b})"


PHI = QSqrt5(Fraction(1, 2), Fraction(1, 2))  # golden ratio
INV_PHI = QSqrt5(Fraction(-1, 2), Fraction(1, 2))

# cos(2 pi m / 5) for m = 0..4
COS5 = (
    QSqrt5(1),
    QSqrt5(Fraction(-1, 4), Fraction(1, 4)),
    QSqrt5(Fraction(-1, 4), Fraction(-1, 4)),
    QSqrt5(Fraction(-1, 4), Fraction(-1, 4)),
    QSqrt5(Fraction(-1, 4), Fraction(1, 4)),
)
# sin(2 pi m / 5) / sin(2 pi / 5) for m = 0..4
SIN5_RATIO = (QSqrt5(0), QSqrt5(1), INV_PHI, -INV_PHI, QSqrt5(-1))
# sin(2 pi m / 5)^2
SIN5_SQ = (
    QSqrt5(0),
    QSqrt5(Fraction(5, 8), Fraction(1, 8)),
    QSqrt5(Fraction(5, 8), Fraction(-1, 8)),
    QSqrt5(Fraction(5, 8), Fraction(-1, 8)),
    QSqrt5(Fraction(5, 8), Fraction(1, 8)),
)


def unit(j: int) -> tuple[float, float]:
    """The fifth root of unity e_j as a float vector."""
    ang = 2 * math.pi * (j % 5) / 5
    return (math.cos(ang), math.sin(ang))


@dataclass(frozen=True)
class Cyclo5:
    """Sum K_j e_j in canonical form (K_4 = 0), using e_0 + ... + e_4 = 0."""

    k: tuple

    def __init__(self, k: Iterable[int]):
        k = tuple(int(x) for x in k)
        if len(k) != 5:
            raise ValueError("cyclotomic points need exactly 5 coordinates")
        object.__setattr__(self, "k", tuple(x - k[4] for x in k))

    @classmethod
    def e(cls, j: int) -> Cyclo5:
        k = [0] * 5
        k[j % 5] = 1
        return cls(k)

    @classmethod
    def zero(cls) -> Cyclo5:
        return cls((0, 0, 0, 0, 0))

    def __add__(self, o: Cyclo5) -> Cyclo5:
        return Cyclo5(a + b for a, b in zip(self.k, o.k))

    def __sub__(self, o: Cyclo5) -> Cyclo5:
        return Cyclo5(a - b for a, b in zip(self.k, o.k))

    def __neg__(self) -> Cyclo5:
        return Cyclo5(-a for a in self.k)

    def rotate(self, steps: int = 1) -> Cyclo5:
        """Rotate by -2*pi*steps/5 (clockwise), i.e. e_j -> e_{j - steps}."""
        s = steps % 5
        return Cyclo5(self.k[(j + s) % 5] for j in range(5))

    def to_float(self) -> tuple[float, float]:
        x = sum(c * unit(j)[0] for j, c in enumerate(self.k))
        y = sum(c * unit(j)[1] for j, c in enumerate(self.k))
        return (x, y)

    def is_zero(self) -> bool:
        return not any(self.k)

    def unit_index(self) -> int | None:
        """j if this point equals +e_j, -(j+1) if it equals -e_j, else None."""
        for j in range(5):
            if self == Cyclo5.e(j):
                return j
            if self == -Cyclo5.e(j):
                return -(j + 1)
        return None

    def __iter__(self):
        return iter(self.k)
