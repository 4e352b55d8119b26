"""Exact rational plane/torus geometry primitives.

Points are pairs of Fractions.  The torus is R^2 / Z^2; closed curves are
polylines whose final vertex differs from the first by an integer vector
(the homology class).  Everything here is exact; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional


Point = tuple[Fraction, Fraction]
Vec = tuple[Fraction, Fraction]


class GeometryError(Exception):
    pass


class DegenerateIntersection(GeometryError):
    pass


def frac_point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def sub(a: Point, b: Point) -> Vec:
    return (a[0] - b[0], a[1] - b[1])


def add(a: Point, b: Vec) -> Point:
    return (a[0] + b[0], a[1] + b[1])


def cross(a: Vec, b: Vec) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def mod1(p: Point) -> Point:
    return (p[0] - (p[0].__floor__()), p[1] - (p[1].__floor__()))


def translates_overlapping(amin, amax, bmin, bmax) -> range:
    """Integer shifts n with [bmin+n, bmax+n] overlapping [amin, amax]."""
    lo = (amin - bmax).__ceil__()
    hi = (amax - bmin).__floor__()
    return range(lo, hi + 1)


def seg_intersect(p1: Point, p2: Point, q1: Point, q2: Point):
    """Proper interior intersection of open segments, or None.

    Raises DegenerateIntersection for touching endpoints, collinear overlap,
    or an intersection at a segment endpoint: fixtures must be generic.
    """
    d1 = sub(p2, p1)
    d2 = sub(q2, q1)
    denom = cross(d1, d2)
    r = sub(q1, p1)
    if denom == 0:
        if cross(d1, r) == 0:
            # collinear: overlapping only if the parameter intervals meet
            if d1[0] != 0:
                t1, t2 = r[0] / d1[0], (r[0] + d2[0]) / d1[0]
            else:
                t1, t2 = r[1] / d1[1], (r[1] + d2[1]) / d1[1]
            lo, hi = min(t1, t2), max(t1, t2)
            if hi > 0 and lo < 1:
                raise DegenerateIntersection("collinear overlapping segments")
        return None
    t = cross(r, d2) / denom
    u = cross(r, d1) / denom
    if t < 0 or t > 1 or u < 0 or u > 1:
        return None
    if t in (0, 1) or u in (0, 1):
        raise DegenerateIntersection("intersection at a segment endpoint")
    return (t, u, add(p1, (d1[0] * t, d1[1] * t)))


def ccw_sorted(dirs):
    """Sort direction vectors counterclockwise (exact)."""

    def half(d):
        dx, dy = d
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    import functools

    def cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        c = cross(a, b)
        if c > 0:
            return -1
        if c < 0:
            return 1
        return 0

    return sorted(dirs, key=functools.cmp_to_key(cmp))


def polygon_winding(poly: list[Point], pt: Point, check_boundary: bool = True) -> int:
    """Winding number of a closed polygon around pt (pt not on the boundary)."""
    w = 0
    n = len(poly)
    for i in range(n):
        a = poly[i]
        b = poly[(i + 1) % n]
        if a == b:
            continue
        if check_boundary and point_on_segment(pt, a, b):
            raise GeometryError("winding query on the boundary")
        ay, by = a[1], b[1]
        if ay <= pt[1] < by:
            if cross(sub(b, a), sub(pt, a)) > 0:
                w += 1
        elif by <= pt[1] < ay:
            if cross(sub(b, a), sub(pt, a)) < 0:
                w -= 1
    return w


class IntWinding:
    """Integer-scaled repeated winding queries against a fixed polygon."""

    def __init__(self, poly: list[Point]):
        from math import lcm

        den = 1
        for p in poly:
            den = lcm(den, p[0].denominator, p[1].denominator)
        self.den = den
        pts = [(int(p[0] * den), int(p[1] * den)) for p in poly]
        self.edges = []
        n = len(pts)
        for i in range(n):
            a = pts[i]
            b = pts[(i + 1) % n]
            if a != b:
                self.edges.append((a, b))

    def winding(self, pt: Point) -> int:
        den = self.den
        px = pt[0] * den
        py = pt[1] * den
        # clear the query denominators too
        q = px.denominator if isinstance(px, Fraction) else 1
        q2 = py.denominator if isinstance(py, Fraction) else 1
        from math import lcm

        s = lcm(q, q2)
        px = int(px * s)
        py = int(py * s)
        w = 0
        for (a, b) in self.edges:
            ax, ay = a[0] * s, a[1] * s
            bx, by = b[0] * s, b[1] * s
            if ay <= py < by:
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) > 0:
                    w += 1
            elif by <= py < ay:
                if (bx - ax) * (py - ay) - (by - ay) * (px - ax) < 0:
                    w -= 1
        return w


def point_on_segment(pt: Point, a: Point, b: Point) -> bool:
    if pt == a or pt == b:
        return True
    d = sub(b, a)
    r = sub(pt, a)
    if cross(d, r) != 0:
        return False
    if d[0] != 0:
        t = r[0] / d[0]
    else:
        t = r[1] / d[1]
    return 0 <= t <= 1


def _segment_params(p1, p2, q1, q2):
    """Line intersection parameters (t, u), or None if parallel."""
    d1 = sub(p2, p1)
    d2 = sub(q2, q1)
    denom = cross(d1, d2)
    if denom == 0:
        return None
    r = sub(q1, p1)
    return (cross(r, d2) / denom, cross(r, d1) / denom)


def polygon_is_simple(poly: list[Point]) -> bool:
    """No self-intersections except consecutive edges meeting at the shared
    vertex; a closed polygon that retraces or touches itself is not simple."""
    pts = [p for i, p in enumerate(poly) if p != poly[i - 1]]
    n = len(pts)
    if n < 3:
        return False
    edges = [(pts[i], pts[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        a1, a2 = edges[i]
        for j in range(i + 1, n):
            b1, b2 = edges[j]
            consecutive = (j == i + 1) or (i == 0 and j == n - 1)
            params = _segment_params(a1, a2, b1, b2)
            if params is None:
                # parallel: overlap iff collinear with meeting spans
                if cross(sub(a2, a1), sub(b1, a1)) == 0:
                    d = sub(a2, a1)
                    if d[0] != 0:
                        t1 = (b1[0] - a1[0]) / d[0]
                        t2 = (b2[0] - a1[0]) / d[0]
                    else:
                        t1 = (b1[1] - a1[1]) / d[1]
                        t2 = (b2[1] - a1[1]) / d[1]
                    if max(min(t1, t2), 0) < min(max(t1, t2), 1):
                        return False
                continue
            t, u = params
            if t < 0 or t > 1 or u < 0 or u > 1:
                continue
            if consecutive:
                # the shared vertex accounts for exactly one touching point
                shared_ok = (j == i + 1 and t == 1 and u == 0) or (
                    i == 0 and j == n - 1 and t == 0 and u == 1
                )
                if not shared_ok:
                    return False
            else:
                return False
    return True


def interior_point(poly: list[Point]) -> Point:
    """An exact point strictly inside a simple closed polygon."""
    pts = [p for i, p in enumerate(poly) if p != poly[i - 1]]
    n = len(pts)
    # bottom-most, then left-most vertex is convex
    vi = min(range(n), key=lambda i: (pts[i][1], pts[i][0]))
    v = pts[vi]
    a = pts[(vi - 1) % n]
    b = pts[(vi + 1) % n]
    inside = []
    for q in pts:
        if q in (a, v, b):
            continue
        if _in_triangle(q, a, v, b):
            inside.append(q)
    if not inside:
        c = ((a[0] + v[0] + b[0]) / 3, (a[1] + v[1] + b[1]) / 3)
    else:
        q = min(inside, key=lambda q: (q[0] - v[0]) ** 2 + (q[1] - v[1]) ** 2)
        c = ((q[0] + v[0]) / 2, (q[1] + v[1]) / 2)
    return c


def _in_triangle(q, a, b, c) -> bool:
    s1 = cross(sub(b, a), sub(q, a))
    s2 = cross(sub(c, b), sub(q, b))
    s3 = cross(sub(a, c), sub(q, c))
    if s1 == 0 or s2 == 0 or s3 == 0:
        return False
    return (s1 > 0) == (s2 > 0) == (s3 > 0)
