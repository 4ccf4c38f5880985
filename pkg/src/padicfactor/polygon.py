"""Exact lower convex hulls of valuation point sets.

Ordinates are integers or :class:`fractions.Fraction`; nothing is ever
converted to floating point.  A point whose ordinate is unknown (``None``)
may carry a lower bound; such points are left out of the hull and the
polygon records whether one of them could still reach the hull.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import EmptyInput

__all__ = [
    "PolygonPoint",
    "Side",
    "NewtonPolygon",
    "lower_hull",
    "principal_part",
    "line_touch_value",
]


@dataclass(frozen=True)
class PolygonPoint:
    abscissa: int
    ordinate: Fraction | int | None
    bound: Fraction | int | None = None  # lower bound when ordinate is None


@dataclass(frozen=True)
class Side:
    """Segment of a polygon; ``slope = -h/e`` with ``gcd(h, e) = 1``."""

    start: PolygonPoint
    end: PolygonPoint

    @property
    def length(self) -> int:
        return self.end.abscissa - self.start.abscissa

    @property
    def slope(self) -> Fraction:
        return Fraction(self.end.ordinate - self.start.ordinate, self.length)

    @property
    def h(self) -> Fraction | int:
        """Numerator of ``-slope`` (an integer for integral ordinates)."""
        return -self.slope.numerator

    @property
    def e(self) -> int:
        return self.slope.denominator

    @property
    def degree(self) -> int:
        """Length divided by ``e``: the degree of the attached residual polynomial."""
        return self.length // self.e


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: tuple[PolygonPoint, ...]
    uncertain: bool = False
    sides: tuple[Side, ...] = field(init=False)

    def __post_init__(self):
        sides = tuple(Side(a, b) for a, b in zip(self.vertices, self.vertices[1:]))
        object.__setattr__(self, "sides", sides)

    @property
    def length(self) -> int:
        if not self.vertices:
            return 0
        return self.vertices[-1].abscissa - self.vertices[0].abscissa

    def value_at(self, s) -> Fraction:
        """Ordinate of the polygon above abscissa ``s`` (inside its range)."""
        vs = self.vertices
        if len(vs) == 1 or s <= vs[0].abscissa:
            return Fraction(vs[0].ordinate)
        for a, b in zip(vs, vs[1:]):
            if s <= b.abscissa:
                return Fraction(a.ordinate) + Side(a, b).slope * (s - a.abscissa)
        return Fraction(vs[-1].ordinate)


def _cross(o, a, b):
    return ((a.abscissa - o.abscissa) * (Fraction(b.ordinate) - Fraction(o.ordinate))
            - (Fraction(a.ordinate) - Fraction(o.ordinate)) * (b.abscissa - o.abscissa))


def lower_hull(points) -> NewtonPolygon:
    """Lower convex hull of the finite points.

    >>> N = lower_hull([PolygonPoint(0, 3), PolygonPoint(1, 1),
    ...                 PolygonPoint(2, 0), PolygonPoint(3, 0)])
    >>> [str(s.slope) for s in N.sides]
    ['-2', '-1', '0']
    """
    finite = {}
    unknown = []
    for pt in points:
        if pt.ordinate is None:
            unknown.append(pt)
            continue
        cur = finite.get(pt.abscissa)
        if cur is None or pt.ordinate < cur.ordinate:
            finite[pt.abscissa] = pt
    if not finite:
        raise EmptyInput("no finite point")
    hull: list[PolygonPoint] = []
    for pt in sorted(finite.values(), key=lambda q: q.abscissa):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    poly = NewtonPolygon(tuple(hull))
    lo, hi = hull[0].abscissa, hull[-1].abscissa
    for pt in unknown:
        if pt.bound is None or not lo <= pt.abscissa <= hi:
            return NewtonPolygon(tuple(hull), uncertain=True)
        if pt.bound <= poly.value_at(pt.abscissa):
            return NewtonPolygon(tuple(hull), uncertain=True)
    return poly


def principal_part(N: NewtonPolygon) -> NewtonPolygon:
    """Keep only the sides of negative slope.

    The result is empty (one vertex, length 0) when no slope is negative.
    """
    if not N.vertices:
        return N
    keep = [N.vertices[0]]
    for s in N.sides:
        if s.slope < 0:
            keep.append(s.end)
        else:
            break
    return NewtonPolygon(tuple(keep), N.uncertain)


def line_touch_value(N: NewtonPolygon, slope) -> Fraction:
    """Intercept at abscissa 0 of the supporting line of the given slope.

    >>> line_touch_value(lower_hull([PolygonPoint(0, 3), PolygonPoint(2, 0)]), -1)
    Fraction(2, 1)
    """
    lam = Fraction(slope)
    if not N.vertices:
        raise EmptyInput("empty polygon")
    return min(Fraction(v.ordinate) - lam * v.abscissa for v in N.vertices)
