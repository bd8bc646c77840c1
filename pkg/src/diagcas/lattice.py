"""Newton polygons with exact integer lattice geometry."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import CasError
from .multipoly import CurvePoly, MultiPoly

Point = tuple[int, int]


def cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


@dataclass(frozen=True)
class LatticePolygon:
    """Counterclockwise vertex list; ``kind`` is "polygon", "segment" or "point"."""

    vertices: tuple[Point, ...]
    kind: str = "polygon"

    @property
    def degenerate(self) -> bool:
        return self.kind != "polygon"

    def edges(self):
        v = self.vertices
        if len(v) < 2:
            return []
        if self.kind == "segment":
            return [(v[0], v[1])]
        return [(v[i], v[(i + 1) % len(v)]) for i in range(len(v))]

    def twice_area(self) -> int:
        if self.degenerate:
            return 0
        v = self.vertices
        return sum(v[i][0] * v[(i + 1) % len(v)][1] - v[(i + 1) % len(v)][0] * v[i][1]
                   for i in range(len(v)))

    def boundary_count(self) -> int:
        if self.kind == "point":
            return 1
        if self.kind == "segment":
            (a, b), = self.edges()
            return gcd(b[0] - a[0], b[1] - a[1]) + 1
        return sum(gcd(b[0] - a[0], b[1] - a[1]) for a, b in self.edges())

    def interior_count(self) -> int:
        if self.degenerate:
            return 0
        # Pick: 2A = 2I + B - 2
        return (self.twice_area() - self.boundary_count() + 2) // 2

    def pick_consistent(self) -> bool:
        if self.degenerate:
            return True
        return self.twice_area() == 2 * self.interior_count() + self.boundary_count() - 2 and \
            self.twice_area() == 2 * len(self.interior_points()) + self.boundary_count() - 2

    def contains_strictly(self, q: Point) -> bool:
        if self.degenerate:
            return False
        return all(cross(a, b, q) > 0 for a, b in self.edges())

    def interior_points(self) -> list[Point]:
        if self.degenerate:
            return []
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        return [(i, j) for i in range(min(xs) + 1, max(xs)) for j in range(min(ys) + 1, max(ys))
                if self.contains_strictly((i, j))]

    def lattice_points(self) -> list[Point]:
        xs = [p[0] for p in self.vertices]
        ys = [p[1] for p in self.vertices]
        out = []
        for i in range(min(xs), max(xs) + 1):
            for j in range(min(ys), max(ys) + 1):
                q = (i, j)
                if self.kind == "polygon":
                    if all(cross(a, b, q) >= 0 for a, b in self.edges()):
                        out.append(q)
                elif self.kind == "segment":
                    (a, b), = self.edges()
                    if cross(a, b, q) == 0:
                        out.append(q)
                else:
                    out.append(q)
        return out


def newton_polygon(support: Iterable[Sequence[int]]) -> LatticePolygon:
    """Convex hull by Andrew's monotone chain; collinear points are dropped."""
    pts = sorted({(int(p[0]), int(p[1])) for p in support})
    if not pts:
        raise ValueError("empty support")
    if len(pts) == 1:
        return LatticePolygon((pts[0],), "point")
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) <= 2:
        return LatticePolygon((pts[0], pts[-1]), "segment")
    return LatticePolygon(tuple(hull), "polygon")


def interior_lattice_points(p: LatticePolygon) -> int:
    return p.interior_count()


def curve_support(c, curve_vars: Sequence[str] | None = None) -> set[Point]:
    if isinstance(c, CurvePoly):
        return c.support()
    if not isinstance(c, MultiPoly):
        raise TypeError("expected a MultiPoly or CurvePoly")
    if curve_vars is None:
        curve_vars = [v for v in c.vars if c.depends_on(v)]
        if len(curve_vars) != 2:
            raise ValueError(f"need exactly two curve variables, got {curve_vars}")
    i, j = c.index(curve_vars[0]), c.index(curve_vars[1])
    return {(e[i], e[j]) for e in c.terms}


@dataclass
class GenusResult:
    generic_genus: int
    interior_points: list[Point]
    hull: list[Point]
    note: str = field(default="genus for generic coefficients with this Newton polygon")

    def to_json(self) -> dict:
        return {"generic_genus": self.generic_genus,
                "interior_points": [list(p) for p in self.interior_points],
                "hull": [list(p) for p in self.hull],
                "note": self.note}


def genus_report(c, curve_vars: Sequence[str] | None = None) -> GenusResult:
    support = curve_support(c, curve_vars)
    if not support or support == {(0, 0)}:
        raise CasError("constant polynomial has no genus")
    poly = newton_polygon(support)
    pts = poly.interior_points()
    return GenusResult(len(pts), pts, list(poly.vertices))


def generic_genus(c, curve_vars: Sequence[str] | None = None) -> int:
    """Number of interior lattice points of the Newton polygon of ``c``."""
    return genus_report(c, curve_vars).generic_genus
