"""Newton diagrams, Kouchnirenko's Milnor number, and lattice-point bounds.

A convenient Newton diagram is the union of the compact faces of the
Newton polyhedron of a singularity meeting every coordinate axis.  For
these, Kouchnirenko's formula gives the Milnor number

    mu = sum_{i=0}^{n} (-1)^i (n - i)!  Vol_{n-i},

where Vol_j is the total j-volume under the diagram inside all
j-dimensional coordinate subspaces and Vol_0 = 1.  The number of spectral
values in (-1, -alpha] of a Newton-non-degenerate germ equals the number
of strictly positive lattice points on or below the diagram scaled by
1 - alpha, which turns the generalized genus bound into an exact
lattice-point comparison.

Dimensions 2 and 3 are supported; the formulas are written
dimension-generically.  For convenient diagrams every supporting
functional with a zero component has level <= 0, so the strictly positive
facet normals computed here determine both the region under the diagram
and its gauge.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import factorial
from typing import Iterable, Sequence

from .errors import DiagramError
from .spectrum import Rational, RationalLike, as_rational


@dataclass(frozen=True)
class NewtonDiagram:
    """Convenient diagram given by the vertices of its compact faces."""

    n: int
    points: tuple[tuple[int, ...], ...]
    scale: Rational = Fraction(1)

    def __post_init__(self):
        if self.n not in (2, 3):
            raise DiagramError(f"dimension {self.n} unsupported (2 or 3)")
        if self.scale <= 0:
            raise DiagramError(f"scale {self.scale} must be positive")
        if not self.points:
            raise DiagramError("diagram has no points")
        for pt in self.points:
            if len(pt) != self.n or any(c < 0 for c in pt) or all(c == 0 for c in pt):
                raise DiagramError(f"bad lattice point {pt}")
        for axis in range(self.n):
            if not any(_supported_on(pt, {axis}) for pt in self.points):
                raise DiagramError(f"diagram misses axis {axis}: not convenient")

    def scaled(self, t: RationalLike) -> "NewtonDiagram":
        return NewtonDiagram(self.n, self.points, self.scale * as_rational(t))

    def axis_intercept(self, axis: int) -> Rational:
        vals = [pt[axis] for pt in self.points if _supported_on(pt, {axis})]
        return self.scale * min(vals)


def _supported_on(point: Sequence[int], axes: set[int]) -> bool:
    return all(c == 0 for i, c in enumerate(point) if i not in axes)


def diagram(n: int, points: Iterable[Sequence[int]], scale: RationalLike = 1) -> NewtonDiagram:
    return NewtonDiagram(n, tuple(tuple(int(c) for c in pt) for pt in points), as_rational(scale))


# -- hull geometry ------------------------------------------------------------


def _lower_hull_2d(points: Iterable[tuple[Fraction, Fraction]]) -> list[tuple]:
    """Segments of the lower-left hull, ordered from the y-axis end down."""
    pts = sorted(set(points))
    hull: list[tuple[Fraction, Fraction]] = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            cross = (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1)
            if cross <= 0:  # pt is not strictly right of the last edge
                hull.pop()
            else:
                break
        hull.append(pt)
    return list(zip(hull, hull[1:]))


def _det3(a, b, c) -> Fraction:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _normalize_normal(a: Sequence[Fraction], c: Fraction) -> tuple[tuple[int, ...], Fraction]:
    lcm = 1
    for x in a:
        d = Fraction(x).denominator
        lcm = lcm * d // _gcd(lcm, d)
    ints = [int(Fraction(x) * lcm) for x in a]
    g = 0
    for x in ints:
        g = _gcd(g, x)
    return tuple(x // g for x in ints), c * lcm / g


def _scaled_points(diag: NewtonDiagram) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(c) * diag.scale for c in pt) for pt in diag.points]


def _facets(diag: NewtonDiagram) -> list[tuple[tuple[int, ...], Fraction]]:
    """Supporting data (positive integer normal a, level c) of the compact facets:
    <a, x> = c on the facet and <a, x> >= c on every diagram point."""
    pts = _scaled_points(diag)
    facets: dict[tuple[int, ...], Fraction] = {}
    if diag.n == 2:
        for (x1, y1), (x2, y2) in _lower_hull_2d((p[0], p[1]) for p in pts):
            a = (y1 - y2, x2 - x1)
            if a[0] <= 0 or a[1] <= 0:
                continue  # axis-parallel tail, not a compact face of the polyhedron
            key, level = _normalize_normal(a, a[0] * x1 + a[1] * y1)
            facets[key] = level
    else:
        for trio in combinations(pts, 3):
            p0, p1, p2 = trio
            u = tuple(b - a for a, b in zip(p0, p1))
            v = tuple(b - a for a, b in zip(p0, p2))
            a = (
                u[1] * v[2] - u[2] * v[1],
                u[2] * v[0] - u[0] * v[2],
                u[0] * v[1] - u[1] * v[0],
            )
            if all(x == 0 for x in a):
                continue
            if any(x < 0 for x in a):
                a = tuple(-x for x in a)
            if any(x <= 0 for x in a):
                continue
            c = sum(ai * pi for ai, pi in zip(a, p0))
            if all(sum(ai * qi for ai, qi in zip(a, q)) >= c for q in pts):
                key, level = _normalize_normal(a, c)
                facets[key] = level
    if not facets:
        raise DiagramError("diagram has no compact facet")
    return sorted(facets.items())


def _pseudo_angle(x: Fraction, y: Fraction) -> tuple[int, Fraction]:
    """Exact sortable surrogate for atan2 on rational points."""
    if x == 0 and y == 0:
        return (-1, Fraction(0))
    s = abs(x) + abs(y)
    if x > 0 and y >= 0:
        return (0, y / s)
    if x <= 0 and y > 0:
        return (1, -x / s)
    if x < 0 and y <= 0:
        return (2, -y / s)
    return (3, x / s)


def _order_facet(verts: list[tuple[Fraction, ...]]) -> list[tuple[Fraction, ...]]:
    """Order coplanar points around their centroid for a fan triangulation."""
    if len(verts) <= 3:
        return verts
    u = tuple(b - a for a, b in zip(verts[0], verts[1]))
    w = tuple(b - a for a, b in zip(verts[0], verts[2]))
    normal = (
        u[1] * w[2] - u[2] * w[1],
        u[2] * w[0] - u[0] * w[2],
        u[0] * w[1] - u[1] * w[0],
    )
    drop = max(range(3), key=lambda i: abs(normal[i]))
    keep = [i for i in range(3) if i != drop]
    planar = [(v[keep[0]], v[keep[1]]) for v in verts]
    cx = sum(p[0] for p in planar) / len(planar)
    cy = sum(p[1] for p in planar) / len(planar)
    order = sorted(
        range(len(verts)), key=lambda i: _pseudo_angle(planar[i][0] - cx, planar[i][1] - cy)
    )
    return [verts[i] for i in order]


def _volume_under(diag: NewtonDiagram, axes: tuple[int, ...]) -> Fraction:
    """j-volume under the diagram inside the coordinate subspace ``axes``,
    computed as cones from the origin over the compact facets."""
    sub = [pt for pt in diag.points if _supported_on(pt, set(axes))]
    if not sub:
        raise DiagramError(f"diagram misses the coordinate subspace {axes}")
    j = len(axes)
    if j == 1:
        return diag.scale * min(pt[axes[0]] for pt in sub)
    restricted = diagram(j, [[pt[i] for i in axes] for pt in sub], diag.scale)
    pts = _scaled_points(restricted)
    total = Fraction(0)
    if j == 2:
        for (x1, y1), (x2, y2) in _lower_hull_2d((p[0], p[1]) for p in pts):
            if y1 - y2 > 0 and x2 - x1 > 0:
                total += abs(x1 * y2 - x2 * y1)
        return total / 2
    for a, c in _facets(restricted):
        verts = _order_facet([p for p in pts if sum(ai * pi for ai, pi in zip(a, p)) == c])
        for i in range(1, len(verts) - 1):
            total += abs(_det3(verts[0], verts[i], verts[i + 1]))
    return total / 6


def newton_mu(diag: NewtonDiagram):
    """Kouchnirenko's Milnor number of the (scaled) diagram.

    Returns an int when the alternating volume sum is integral (always the
    case for integer scalings), otherwise the exact Fraction.
    """
    n = diag.n
    total = Fraction(0)
    for i in range(n + 1):
        j = n - i
        if j == 0:
            vol = Fraction(1)
        else:
            vol = Fraction(0)
            for axes in combinations(range(n), j):
                vol += _volume_under(diag, axes)
        total += (-1) ** i * factorial(j) * vol
    return int(total) if total.denominator == 1 else total


def gauge(diag: NewtonDiagram, point: Sequence[int]) -> Fraction:
    """Piecewise-linear weight equal to 1 on the diagram:
    min over compact facets of <a, x> / c."""
    return min(Fraction(sum(ai * pi for ai, pi in zip(a, point))) / c for a, c in _facets(diag))


def newton_window_count(diag: NewtonDiagram, alpha: RationalLike) -> int:
    """Number of strictly positive lattice points v with gauge(v) <= 1 - alpha.

    Counts the spectral values in (-1, -alpha] of a Newton-non-degenerate
    germ with this diagram; the restriction to strictly positive
    coordinates reflects the shift identifying exponents with spectral
    values in (-1, 1).
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise DiagramError(f"alpha {alpha} outside [0, 1)")
    level = 1 - alpha
    facets = _facets(diag)
    bounds = [int(level * diag.axis_intercept(axis)) for axis in range(diag.n)]
    count = 0
    for point in product(*(range(1, b + 1) for b in bounds)):
        value = min(Fraction(sum(ai * pi for ai, pi in zip(a, point))) / c for a, c in facets)
        if value <= level:
            count += 1
    return count


def durfee_newton_check(
    diag: NewtonDiagram, alpha: RationalLike, t: int = 1
) -> tuple[Rational, Rational, bool]:
    """Exact evaluation of mu(t*diagram)/n! > window(t*diagram, alpha)/(1-alpha)^n.

    Holds once the scaled diagram is large enough; returns (lhs, rhs, holds).
    """
    alpha = as_rational(alpha)
    if not 0 <= alpha < 1:
        raise DiagramError(f"alpha {alpha} outside [0, 1)")
    if not isinstance(t, int) or t < 1:
        raise DiagramError(f"scale t = {t} must be a positive integer")
    scaled = diag.scaled(t)
    lhs = Fraction(newton_mu(scaled)) / factorial(diag.n)
    rhs = Fraction(newton_window_count(scaled, alpha)) / (1 - alpha) ** diag.n
    return lhs, rhs, lhs > rhs


# -- file format --------------------------------------------------------------


def diagram_to_dict(diag: NewtonDiagram) -> dict:
    return {"n": diag.n, "points": [list(pt) for pt in diag.points]}


def diagram_from_dict(data: dict) -> NewtonDiagram:
    if not isinstance(data, dict):
        raise DiagramError("diagram document must be a JSON object")
    unknown = set(data) - {"n", "points"}
    if unknown:
        raise DiagramError(f"unknown fields: {sorted(unknown)}")
    if "n" not in data or "points" not in data:
        raise DiagramError("diagram document needs fields 'n' and 'points'")
    if not isinstance(data["n"], int):
        raise DiagramError("field 'n' must be an integer")
    pts = data["points"]
    if not isinstance(pts, list) or not all(
        isinstance(p, list) and all(isinstance(c, int) for c in p) for p in pts
    ):
        raise DiagramError("field 'points' must be a list of integer vectors")
    return diagram(data["n"], pts)


def load_diagram(path: str) -> NewtonDiagram:
    with open(path, "r", encoding="utf-8") as fh:
        return diagram_from_dict(json.load(fh))
