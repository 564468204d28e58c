"""Newton polygons of bivariate Hamiltonians.

The polygon of H is the convex hull of the exponent pairs (i, j) of the
monomials A^i B^j present in H.  Area is exact (lattice units, shoelace),
genus counts interior lattice points, and the minimality key orders
polygons by (area, highest total degree) lexicographically.  All geometry
is integer/rational; no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EmptySupport
from .polyrat import BiPoly


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _convex_hull(points):
    """Counterclockwise hull (monotone chain); collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        # collinear support: keep the two extreme points
        return [pts[0], pts[-1]] if pts[0] != pts[-1] else [pts[0]]
    return hull


def _segment_lattice_gaps(a, b) -> int:
    """Number of lattice points strictly between a and b."""
    return gcd(abs(a[0] - b[0]), abs(a[1] - b[1])) - 1


@dataclass(frozen=True)
class MinimalityKey:
    area: Fraction
    max_total_degree: int

    def as_tuple(self):
        return (self.area, self.max_total_degree)

    def __lt__(self, other):
        return self.as_tuple() < other.as_tuple()

    def __le__(self, other):
        return self.as_tuple() <= other.as_tuple()


@dataclass(frozen=True)
class NewtonPolygon:
    support: frozenset
    hull: tuple           # CCW vertices, lexicographically smallest first
    area: Fraction
    genus: int
    max_total_degree: int
    boundary_lattice_count: int

    @property
    def minimality_key(self) -> MinimalityKey:
        return MinimalityKey(self.area, self.max_total_degree)

    def is_degenerate(self) -> bool:
        return len(self.hull) < 3

    def summary(self) -> dict:
        return {
            "area": str(self.area),
            "genus": self.genus,
            "max_total_degree": self.max_total_degree,
            "hull": [list(v) for v in self.hull],
            "support": sorted([list(p) for p in self.support]),
        }


def polygon_of(h: BiPoly | set, include_constant: bool = False) -> NewtonPolygon:
    """Polygon of a Hamiltonian (or a raw support set).

    With include_constant=False the (0,0) monomial is excluded before
    hulling, matching the convention that H is defined up to a constant.
    """
    support = set(h.support() if isinstance(h, BiPoly) else h)
    if not include_constant:
        support.discard((0, 0))
    if not support:
        raise EmptySupport("no support left for the Newton polygon")
    hull = _convex_hull(support)
    # rotate so the smallest vertex comes first (deterministic output)
    start = hull.index(min(hull))
    hull = hull[start:] + hull[:start]
    if len(hull) >= 3:
        twice_area = 0
        for k in range(len(hull)):
            a, b = hull[k], hull[(k + 1) % len(hull)]
            twice_area += a[0] * b[1] - b[0] * a[1]
        area = Fraction(twice_area, 2)
        boundary = len(hull)
        for k in range(len(hull)):
            boundary += _segment_lattice_gaps(hull[k], hull[(k + 1) % len(hull)])
        genus = int(area - Fraction(boundary, 2) + 1)
    else:
        area = Fraction(0)
        boundary = 1 if len(hull) == 1 else _segment_lattice_gaps(hull[0], hull[1]) + 2
        genus = 0
    degree = max(i + j for i, j in support)
    return NewtonPolygon(frozenset(support), tuple(hull), area, genus, degree, boundary)


def compare_minimality(a: NewtonPolygon, b: NewtonPolygon) -> int:
    """-1, 0, or 1 comparing (area, max_total_degree) lexicographically."""
    ka, kb = a.minimality_key.as_tuple(), b.minimality_key.as_tuple()
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


def interior_points(poly: NewtonPolygon):
    """Strictly interior lattice points (independent brute enumeration)."""
    if poly.is_degenerate():
        return []
    hull = poly.hull
    xs = [p[0] for p in hull]
    ys = [p[1] for p in hull]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            strictly_inside = True
            for k in range(len(hull)):
                a, b = hull[k], hull[(k + 1) % len(hull)]
                if _cross(a, b, (x, y)) <= 0:
                    strictly_inside = False
                    break
            if strictly_inside:
                out.append((x, y))
    return out


# -- SVG emission -----------------------------------------------------------

_CELL = 40
_PAD = 30


def render_svg(poly: NewtonPolygon) -> str:
    """Deterministic SVG: grid, hull, support dots, inner lattice dots."""
    pts = set(poly.support) | set(poly.hull)
    max_i = max(p[0] for p in pts)
    max_j = max(p[1] for p in pts)
    width = _PAD * 2 + _CELL * max(max_i, 1)
    height = _PAD * 2 + _CELL * max(max_j, 1)

    def sx(i):
        return _PAD + i * _CELL

    def sy(j):
        return height - _PAD - j * _CELL

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<!-- area={poly.area} genus={poly.genus} degree={poly.max_total_degree} -->',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(max_i + 1):
        lines.append(f'<line x1="{sx(i)}" y1="{sy(0)}" x2="{sx(i)}" y2="{sy(max_j)}" '
                     f'stroke="#dddddd" stroke-width="1"/>')
    for j in range(max_j + 1):
        lines.append(f'<line x1="{sx(0)}" y1="{sy(j)}" x2="{sx(max_i)}" y2="{sy(j)}" '
                     f'stroke="#dddddd" stroke-width="1"/>')
    hull_pts = " ".join(f"{sx(i)},{sy(j)}" for i, j in poly.hull)
    if poly.is_degenerate():
        lines.append(f'<polyline points="{hull_pts}" fill="none" '
                     f'stroke="#3050c0" stroke-width="2"/>')
    else:
        lines.append(f'<polygon points="{hull_pts}" fill="#c8d4f0" fill-opacity="0.55" '
                     f'stroke="#3050c0" stroke-width="2"/>')
    for i, j in interior_points(poly):
        if (i, j) not in poly.support:
            lines.append(f'<circle cx="{sx(i)}" cy="{sy(j)}" r="5" fill="#f59e0b"/>')
    for i, j in sorted(poly.support):
        lines.append(f'<circle cx="{sx(i)}" cy="{sy(j)}" r="6" fill="#111111"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def emit_svg(poly: NewtonPolygon, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(poly))
