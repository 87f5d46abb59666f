"""Exact rational geometry for degrees-of-freedom regions.

Two-user regions are bounded, downward-closed convex polygons in the
nonnegative quadrant.  They are kept in both halfspace form (a list of
``a1*d1 + a2*d2 <= b`` constraints, nonnegativity implicit) and vertex
form (counterclockwise, starting at the origin).  K-user regions that
arise here are all weighted simplices ``{d >= 0 : sum(w_i d_i) <= 1}``.

All coordinates are :class:`fractions.Fraction` values restricted to the
signed 64-bit range; nothing in this module uses a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

__all__ = [
    "DomainError",
    "Rational",
    "rational",
    "Point2",
    "Halfspace",
    "Polytope2D",
    "SimplexRegion",
    "hull_from_points",
    "from_halfspaces",
    "intersect",
    "contains",
    "is_subset",
    "equals",
    "gap_vertices",
    "simplex_subset",
]

Rational = Fraction
RationalLike = Union[int, str, Fraction]

_INT64_MAX = 2**63 - 1


class DomainError(ValueError):
    """Input outside the domain an operation is defined on."""


def rational(value: RationalLike) -> Fraction:
    """Convert to a Fraction, refusing anything outside 64-bit num/den.

    Floats are rejected: an exact region must not silently inherit a
    binary rounding error.
    """
    t = type(value)
    if t is Fraction:
        q = value
    elif t is int:
        q = Fraction(value)
    elif t is bool or t is float:
        raise TypeError(f"exact rational expected, got {t.__name__}")
    else:
        q = Fraction(value)
    if abs(q.numerator) > _INT64_MAX or q.denominator > _INT64_MAX:
        raise OverflowError(f"rational {q} exceeds 64-bit numerator/denominator")
    return q


@dataclass(frozen=True, order=True)
class Point2:
    d1: Fraction
    d2: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "d1", rational(self.d1))
        object.__setattr__(self, "d2", rational(self.d2))

    def __iter__(self):
        yield self.d1
        yield self.d2

    def swapped(self) -> "Point2":
        return Point2(self.d2, self.d1)

    def __str__(self) -> str:
        return f"({self.d1}, {self.d2})"


@dataclass(frozen=True)
class Halfspace:
    """The constraint ``a1*d1 + a2*d2 <= b``.

    Construct through :meth:`of`, which scales the row so that its first
    nonzero coefficient is 1.  Two equal constraints then compare equal
    structurally.
    """

    a1: Fraction
    a2: Fraction
    b: Fraction

    @classmethod
    def of(cls, a1: RationalLike, a2: RationalLike, b: RationalLike) -> "Halfspace":
        a1, a2, b = rational(a1), rational(a2), rational(b)
        lead = a1 if a1 != 0 else a2
        if lead == 0:
            raise DomainError("halfspace needs a nonzero coefficient")
        if lead < 0:
            # a negative scale would flip the inequality
            raise DomainError("leading coefficient must be positive for <= form")
        return cls(rational(a1 / lead), rational(a2 / lead), rational(b / lead))

    def holds(self, p: Point2) -> bool:
        return self.a1 * p.d1 + self.a2 * p.d2 <= self.b

    def tight(self, p: Point2) -> bool:
        return self.a1 * p.d1 + self.a2 * p.d2 == self.b

    def swapped(self) -> "Halfspace":
        return Halfspace.of(self.a2, self.a1, self.b)

    def integer_form(self) -> tuple[int, int, int]:
        """Smallest integer triple proportional to ``(a1, a2, b)``."""
        from math import gcd, lcm

        den = lcm(self.a1.denominator, self.a2.denominator, self.b.denominator)
        ints = [int(x * den) for x in (self.a1, self.a2, self.b)]
        g = gcd(*ints) or 1
        return tuple(v // g for v in ints)  # type: ignore[return-value]

    def __str__(self) -> str:
        c1, c2, rhs = self.integer_form()
        terms = []
        for c, name in ((c1, "d1"), (c2, "d2")):
            if c == 0:
                continue
            coef = "" if c == 1 else f"{c}*"
            terms.append(f"{coef}{name}")
        return " + ".join(terms).replace("+ -", "- ") + f" <= {rhs}"


@dataclass(frozen=True)
class Polytope2D:
    """Downward-closed convex polygon in the nonnegative quadrant.

    Do not build instances directly; use :func:`hull_from_points` or
    :func:`from_halfspaces`, which keep the two descriptions in sync.
    """

    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[Point2, ...]

    def contains(self, p: Point2) -> bool:
        return contains(self, p)

    def swapped(self) -> "Polytope2D":
        """Mirror image under ``(d1, d2) -> (d2, d1)``."""
        return hull_from_points([v.swapped() for v in self.vertices])

    def max_d1(self) -> Fraction:
        return max(v.d1 for v in self.vertices)

    def max_d2(self) -> Fraction:
        return max(v.d2 for v in self.vertices)

    def __str__(self) -> str:
        hs = ", ".join(str(h) for h in self.halfspaces)
        vs = ", ".join(str(v) for v in self.vertices)
        return f"{{{hs}}} vertices [{vs}]"


@dataclass(frozen=True)
class SimplexRegion:
    """``{d in R^K : d_i >= 0, sum_i w_i * d_i <= 1}`` with every ``w_i > 0``."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        ws = tuple(rational(w) for w in self.weights)
        if not ws:
            raise DomainError("simplex region needs at least one user")
        if any(w <= 0 for w in ws):
            raise DomainError("simplex weights must be strictly positive")
        object.__setattr__(self, "weights", ws)

    @classmethod
    def from_intercepts(cls, intercepts: Iterable[RationalLike]) -> "SimplexRegion":
        return cls(tuple(1 / rational(x) for x in intercepts))

    @property
    def dim(self) -> int:
        return len(self.weights)

    def intercepts(self) -> tuple[Fraction, ...]:
        """Largest single-user DoF, one per axis."""
        return tuple(1 / w for w in self.weights)

    def contains(self, d: Sequence[RationalLike]) -> bool:
        if len(d) != self.dim:
            raise DomainError(f"point has {len(d)} coordinates, region has {self.dim}")
        q = [rational(x) for x in d]
        return all(x >= 0 for x in q) and sum(w * x for w, x in zip(self.weights, q)) <= 1

    def to_polytope(self) -> Polytope2D:
        if self.dim != 2:
            raise DomainError("only two-user simplices have a polygon form")
        a, b = self.intercepts()
        return hull_from_points([Point2(a, 0), Point2(0, b)])

    def __str__(self) -> str:
        terms = " + ".join(
            f"d{i + 1}" if w == 1 else f"d{i + 1}/{1 / w}"
            for i, w in enumerate(self.weights)
        )
        return f"{terms} <= 1"


def _as_point(p) -> Point2:
    return p if isinstance(p, Point2) else Point2(*p)


def _cross(o: Point2, a: Point2, b: Point2) -> Fraction:
    return (a.d1 - o.d1) * (b.d2 - o.d2) - (a.d2 - o.d2) * (b.d1 - o.d1)


def _upper_chain(pts: list[Point2]) -> list[Point2]:
    """Concave majorant from the top-left point to the bottom-right point.

    ``pts`` must contain ``(0, ymax)`` and ``(xmax, 0)``.  Collinear
    points are dropped.
    """
    right = max(pts, key=lambda p: (p.d1, -p.d2))
    pts = sorted(set(pts), key=lambda p: (p.d1, -p.d2))
    chain: list[Point2] = []
    for p in pts:
        if chain and p.d1 == chain[-1].d1 and p != right:
            continue  # same abscissa, lower point
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) >= 0:
            chain.pop()
        chain.append(p)
    return chain


def hull_from_points(points: Iterable) -> Polytope2D:
    """Downward closure of ``conv(points + origin)`` within the quadrant.

    Points may be :class:`Point2` or ``(d1, d2)`` pairs.  Every nontrivial
    edge of the result has a normal with nonnegative entries.
    """
    pts = [_as_point(p) for p in points]
    if not pts:
        raise DomainError("hull_from_points needs at least one point")
    for p in pts:
        if p.d1 < 0 or p.d2 < 0:
            raise DomainError(f"negative coordinate in {p}")

    zero = Fraction(0)
    xmax = max(p.d1 for p in pts)
    ymax = max(p.d2 for p in pts)

    # degenerate regions: a point or a segment on one axis
    if xmax == 0 or ymax == 0:
        verts = sorted({Point2(zero, zero), Point2(xmax, ymax)})
        hs = (Halfspace.of(1, 0, xmax), Halfspace.of(0, 1, ymax))
        return Polytope2D(hs, tuple(verts))

    top = Point2(zero, ymax)
    right = Point2(xmax, zero)
    # only points on the upper-right boundary can be vertices
    chain = _upper_chain([top, right] + [p for p in pts if p.d1 > 0 and p.d2 > 0])
    verts = [Point2(zero, zero)] + chain[::-1]
    hs = []
    for u, v in zip(chain[::-1], chain[-2::-1]):
        a1, a2 = v.d2 - u.d2, u.d1 - v.d1  # outward normal, counterclockwise walk
        hs.append(Halfspace.of(a1, a2, a1 * u.d1 + a2 * u.d2))
    return Polytope2D(tuple(hs), tuple(verts))


def from_halfspaces(halfspaces: Iterable[Halfspace]) -> Polytope2D:
    """Intersection of the given constraints with the nonnegative quadrant.

    Coefficients must be nonnegative (so the set is downward closed) and
    every coordinate must be bounded by some constraint.
    """
    hs = list(halfspaces)
    for h in hs:
        if h.a1 < 0 or h.a2 < 0:
            raise DomainError(f"constraint {h} does not describe a downward-closed set")
        if h.b < 0:
            raise DomainError(f"constraint {h} excludes the origin")
    if not any(h.a1 > 0 for h in hs) or not any(h.a2 > 0 for h in hs):
        raise DomainError("constraints leave the region unbounded")

    # downward closed: the axis extents are the tightest intercepts
    xmax = min(h.b / h.a1 for h in hs if h.a1 > 0)
    ymax = min(h.b / h.a2 for h in hs if h.a2 > 0)
    candidates = [Point2(xmax, 0), Point2(0, ymax)]
    rows = [h.integer_form() for h in dict.fromkeys(hs)]
    # pairwise intersections in integer arithmetic; x = xn/det, y = yn/det
    for i, (a1, a2, b) in enumerate(rows):
        for g1, g2, gb in rows[i + 1 :]:
            det = a1 * g2 - g1 * a2
            if det == 0:
                continue
            xn, yn = b * g2 - gb * a2, a1 * gb - g1 * b
            if det < 0:
                det, xn, yn = -det, -xn, -yn
            if xn < 0 or yn < 0:
                continue
            if all(c1 * xn + c2 * yn <= c * det for c1, c2, c in rows):
                candidates.append(Point2(Fraction(xn, det), Fraction(yn, det)))
    return hull_from_points(candidates)


def intersect(a: Polytope2D, b: Polytope2D) -> Polytope2D:
    return from_halfspaces(a.halfspaces + b.halfspaces)


def contains(poly: Polytope2D, p) -> bool:
    """Exact membership, nonnegativity included."""
    p = _as_point(p)
    if p.d1 < 0 or p.d2 < 0:
        return False
    return all(h.holds(p) for h in poly.halfspaces)


def is_subset(a: Polytope2D, b: Polytope2D) -> bool:
    # convexity: checking the vertices of a is enough
    return all(contains(b, v) for v in a.vertices)


def equals(a: Polytope2D, b: Polytope2D) -> bool:
    if a.halfspaces == b.halfspaces:
        return True
    return is_subset(a, b) and is_subset(b, a)


def gap_vertices(a: Polytope2D, b: Polytope2D) -> list[Point2]:
    """Vertices of ``a`` lying outside ``b``."""
    return [v for v in a.vertices if not contains(b, v)]


def simplex_subset(a: SimplexRegion, b: SimplexRegion) -> bool:
    if a.dim != b.dim:
        raise DomainError(f"dimension mismatch: {a.dim} vs {b.dim}")
    return all(wa >= wb for wa, wb in zip(a.weights, b.weights))
