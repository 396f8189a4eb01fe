"""Dixon I linkages: K_{m,n} with one side on the x-axis, the other on the y-axis.

An infinite side is modelled as a finite prefix plus a declared infimum of
its tail. The motion shrinks one axis and grows the other,

    x_n(t)^2 = x_n^2 - c^2 s,   y_n(t)^2 = y_n^2 + c^2 s,   s = 1 - (1 - t)^2,

so x_m(t)^2 + y_n(t)^2 never changes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .framework import Framework
from .graph import Graph


def _check_axis(name: str, values: tuple, tail: float | None) -> None:
    if not values:
        raise ValueError(f"{name}-values must be nonempty")
    if any(not v > 0 or not math.isfinite(v) for v in values):
        raise ValueError(f"{name}-values must be positive and finite")
    if len(set(values)) != len(values):
        raise ValueError(f"{name}-values must be pairwise distinct")
    if tail is not None and not 0 <= tail <= min(values):
        raise ValueError(f"tail infimum on {name} must lie in [0, min of listed values]")


@dataclass(frozen=True)
class DixonLinkage:
    """Points (x_i, 0) and (0, y_j); ``tail_inf_*`` is None when the side is finite."""

    x: tuple
    y: tuple
    tail_inf_x: float | None = None
    tail_inf_y: float | None = None

    def __init__(self, x: Iterable[float], y: Iterable[float],
                 tail_inf_x: float | None = None, tail_inf_y: float | None = None):
        x, y = tuple(float(v) for v in x), tuple(float(v) for v in y)
        tx = None if tail_inf_x is None else float(tail_inf_x)
        ty = None if tail_inf_y is None else float(tail_inf_y)
        _check_axis("x", x, tx)
        _check_axis("y", y, ty)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "tail_inf_x", tx)
        object.__setattr__(self, "tail_inf_y", ty)

    @property
    def inf_x(self) -> float:
        return min(self.x) if self.tail_inf_x is None else min(min(self.x), self.tail_inf_x)

    @property
    def inf_y(self) -> float:
        return min(self.y) if self.tail_inf_y is None else min(min(self.y), self.tail_inf_y)

    def vertices(self) -> tuple[list[int], list[int]]:
        """Ids 0..m-1 for the x side and m..m+n-1 for the y side."""
        m = len(self.x)
        return list(range(m)), list(range(m, m + len(self.y)))

    def graph(self) -> Graph:
        a, b = self.vertices()
        return Graph(a + b, [(u, w) for u in a for w in b])

    def framework(self) -> Framework:
        return self._frame(self.x, self.y)

    def _frame(self, xs, ys) -> Framework:
        m = len(self.x)
        place = {i: (xv, 0.0) for i, xv in enumerate(xs)}
        place.update({m + j: (0.0, yv) for j, yv in enumerate(ys)})
        return Framework(self.graph(), place)


def dixon_flexible(d: DixonLinkage) -> str:
    """Flexible exactly when both effective infima are positive."""
    return "flexible" if d.inf_x > 0 and d.inf_y > 0 else "rigid"


@dataclass(frozen=True)
class DixonFlex:
    linkage: DixonLinkage
    c: float
    shrink: str  # axis whose coordinates decrease
    domain: tuple = (0.0, 1.0)

    def coordinates(self, t: float) -> tuple[list[float], list[float]]:
        s = 1.0 - (1.0 - t) ** 2
        delta = self.c * self.c * s
        sx, sy = (-delta, delta) if self.shrink == "x" else (delta, -delta)
        # radicands are >= 0 up to rounding because c <= every shrinking value
        xs = [math.sqrt(max(0.0, v * v + sx)) for v in self.linkage.x]
        ys = [math.sqrt(max(0.0, v * v + sy)) for v in self.linkage.y]
        return xs, ys

    def evaluate(self, t: float) -> Framework:
        xs, ys = self.coordinates(t)
        return self.linkage._frame(xs, ys)


def dixon_flex(d: DixonLinkage) -> DixonFlex:
    """Motion on t in [0, 1]; c is the smaller effective infimum.

    The side with the larger infimum shrinks (x on ties), so its closest
    point to the origin reaches it exactly when that infimum equals c.
    """
    c = min(d.inf_x, d.inf_y)
    if c <= 0:
        raise ValueError("a zero infimum leaves no room for the motion")
    shrink = "x" if d.inf_x >= d.inf_y else "y"
    return DixonFlex(d, c, shrink)
