"""Combinatorial torus multi-Heegaard diagrams compiled from exact
piecewise-linear curve input.

The compiler cuts the torus along two auxiliary "scaffold" circles (a
vertical and a horizontal one at generic offsets), computes the planar
subdivision of the resulting square by exact rational arithmetic, and glues
faces back across scaffold edges to recover the elementary regions of the
curve arrangement.  Every face of the cut arrangement must be a disk, which
is verified through the Euler characteristic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coefficients import (
    DISTINGUISHED,
    FREE,
    LINK,
    RANK2,
    TRIVIAL,
    LocalSystem,
    RingSignature,
    signature,
)
from .geometry import (
    DegenerateIntersection,
    GeometryError,
    Point,
    add,
    ccw_sorted,
    cross,
    interior_point,
    mod1,
    point_on_segment,
    polygon_winding,
    seg_intersect,
    sub,
    translates_overlapping,
)


class DiagramError(Exception):
    pass


# --- input specification ----------------------------------------------------


@dataclass(frozen=True)
class PLCircle:
    """Closed polyline; the last vertex is the first plus an integer vector."""

    verts: tuple[Point, ...]

    def __post_init__(self):
        d = sub(self.verts[-1], self.verts[0])
        if d[0].denominator != 1 or d[1].denominator != 1:
            raise DiagramError("circle does not close up on the torus")

    @property
    def homology(self) -> tuple[int, int]:
        d = sub(self.verts[-1], self.verts[0])
        return (int(d[0]), int(d[1]))

    def segments(self):
        return list(zip(self.verts[:-1], self.verts[1:]))


@dataclass(frozen=True)
class CurveSpec:
    name: str
    local_system: str  # "trivial" | "rank2"
    circles: tuple[PLCircle, ...]


@dataclass(frozen=True)
class BasepointSpec:
    name: str
    btype: str  # "link" | "free" | "gminus" | "gplus"
    cls: str
    pos: Point


@dataclass(frozen=True)
class PLCurveSpec:
    curves: tuple[CurveSpec, ...]
    basepoints: tuple[BasepointSpec, ...]
    arc_g: Optional[tuple[Point, ...]] = None
    genus: int = 1

    def curve_names(self):
        return [c.name for c in self.curves]


# --- compiled structures ----------------------------------------------------


@dataclass
class Crossing:
    point: Point  # mod-1 coordinates
    circles: tuple[int, int]
    # per circle id: (in_arc, out_arc), filled in late
    arcs: dict = field(default_factory=dict)
    quadrants: list = field(default_factory=list)  # region ids, CCW order
    quadrant_dirs: list = field(default_factory=list)  # away-directions, CCW


@dataclass
class Arc:
    circle: int
    tail: int  # crossing id
    head: int
    pts: tuple[Point, ...]  # unfolded polyline along the arc
    left_region: int = -1
    right_region: int = -1
    g_cross: int = 0


@dataclass
class Region:
    faces: list
    chi: int = 1
    corners: int = 0
    basepoints: list = field(default_factory=list)
    weight: dict = field(default_factory=dict)  # variable -> doubled exponent
    p_mult: int = 0
    q_count: int = 0


class CombDiagram:
    """Compiled arrangement with regions, crossings, arcs and ring data."""

    def __init__(self, spec: PLCurveSpec, truncation: int = 16):
        self.spec = spec
        self.truncation = truncation
        self.curve_names = [c.name for c in spec.curves]
        self.local_systems = {
            c.name: RANK2 if c.local_system == "rank2" else TRIVIAL for c in spec.curves
        }
        self._compile()
        self._build_signature()

    # -- ring -----------------------------------------------------------

    def _build_signature(self):
        classes: dict[str, str] = {}
        for b in self.spec.basepoints:
            if b.btype == "gplus":
                continue
            kind = {"link": LINK, "free": FREE, "gminus": DISTINGUISHED}[b.btype]
            prev = classes.get(b.cls)
            if prev is not None and prev != kind:
                raise DiagramError(f"basepoint class {b.cls} mixes kinds")
            classes[b.cls] = kind
        order = []
        seen = set()
        for b in self.spec.basepoints:
            if b.btype != "gplus" and b.cls not in seen:
                seen.add(b.cls)
                order.append((b.cls, classes[b.cls]))
        self.sig = signature(order, truncation=self.truncation)
        # doubled exponent contributed by one copy of each basepoint
        self.bp_weight = {}
        for b in self.spec.basepoints:
            if b.btype == "link":
                self.bp_weight[b.name] = {b.cls: 1}
            elif b.btype == "free":
                self.bp_weight[b.name] = {b.cls: 2}
            elif b.btype == "gminus":
                self.bp_weight[b.name] = {b.cls: 2}
            else:
                self.bp_weight[b.name] = {}
        for r in self.regions:
            w: dict[str, int] = {}
            p = 0
            for bn in r.basepoints:
                b = self.bp(bn)
                for k, v in self.bp_weight[bn].items():
                    w[k] = w.get(k, 0) + v
                p += 2 if b.btype == "free" else 1
            r.weight = w
            r.p_mult = p
            r.q_count = len(r.basepoints)

    def bp(self, name: str) -> BasepointSpec:
        for b in self.spec.basepoints:
            if b.name == name:
                return b
        raise KeyError(name)

    # -- compilation ------------------------------------------------------

    def _compile(self):
        spec = self.spec
        if spec.genus != 1:
            raise DiagramError("only genus-1 geometric input is supported")
        circles: list[PLCircle] = []
        circle_curve: list[Optional[int]] = []
        for ci, c in enumerate(spec.curves):
            for circ in c.circles:
                circles.append(circ)
                circle_curve.append(ci)
        self._check_embedded(circles)
        x0, y0 = self._generic_offsets(circles, spec)
        self.cut = (x0, y0)
        scaff_v = PLCircle(((x0, y0 + Fraction(1, 2)), (x0, y0 + Fraction(3, 2))))
        scaff_h = PLCircle(((x0 + Fraction(1, 2), y0), (x0 + Fraction(3, 2), y0)))
        all_circles = circles + [scaff_v, scaff_h]
        n_real = len(circles)
        self.circle_curve = circle_curve
        self.n_real_circles = n_real

        # 1. intersections
        nodes: dict[Point, int] = {}
        node_pts: list[Point] = []
        passages: dict[int, list] = {}  # node -> [(circle, seg, t)]

        def node_of(p: Point) -> int:
            q = mod1(p)
            if q not in nodes:
                nodes[q] = len(node_pts)
                node_pts.append(q)
                passages[nodes[q]] = []
            return nodes[q]

        for i in range(len(all_circles)):
            for j in range(i + 1, len(all_circles)):
                for pt, si, ti, sj, tj in self._circle_crossings(all_circles[i], all_circles[j]):
                    n = node_of(pt)
                    passages[n].append((i, si, ti))
                    passages[n].append((j, sj, tj))
        for n, ps in passages.items():
            if len(ps) != 2:
                raise DiagramError(f"triple point or repeated crossing at {node_pts[n]}")

        # 2. events per circle, split into edges
        events: dict[int, list] = {i: [] for i in range(len(all_circles))}
        for n, ps in passages.items():
            for (ci, si, ti) in ps:
                events[ci].append((si, ti, n))
        edges = []  # (circle, tail_node, head_node, pts)
        node_out: dict[int, list] = {}
        for ci, evs in events.items():
            if not evs:
                raise DiagramError(f"circle {ci} crosses nothing; add crossings")
            evs.sort(key=lambda e: (e[0], e[1]))
            circ = all_circles[ci]
            segs = circ.segments()
            for k in range(len(evs)):
                s0, t0, n0 = evs[k]
                s1, t1, n1 = evs[(k + 1) % len(evs)]
                pts = [self._param_point(segs, s0, t0)]
                wrap = (k + 1) == len(evs)
                if not wrap:
                    for s in range(s0, s1):
                        pts.append(segs[s][1])
                    pts.append(self._param_point(segs, s1, t1))
                else:
                    for s in range(s0, len(segs)):
                        pts.append(segs[s][1])
                    shift = sub(circ.verts[-1], circ.verts[0])
                    for s in range(0, s1):
                        pts.append(add(segs[s][1], shift))
                    pts.append(add(self._param_point(segs, s1, t1), shift))
                pts = _dedup(pts)
                if len(pts) < 2:
                    raise DiagramError("empty edge; curve events coincide")
                edges.append((ci, n0, n1, tuple(pts)))
        self._edges = edges

        # 3. face tracing
        # directed edge id: 2*e (tail->head) and 2*e+1 (head->tail)
        ends_at_node: dict[int, list] = {n: [] for n in passages}
        for eid, (ci, n0, n1, pts) in enumerate(edges):
            ends_at_node[n0].append((2 * eid, sub(pts[1], pts[0])))
            ends_at_node[n1].append((2 * eid + 1, sub(pts[-2], pts[-1])))
        order_at_node = {}
        for n, ends in ends_at_node.items():
            if len(ends) != 4:
                raise DiagramError("node valence is not 4")
            dirs = ccw_sorted([d for (_, d) in ends])
            ordered = []
            for d in dirs:
                for de, d2 in ends:
                    if d2 == d:
                        ordered.append(de)
            order_at_node[n] = ordered

        def head_of(de):
            ci, n0, n1, pts = edges[de // 2]
            return n1 if de % 2 == 0 else n0

        def next_de(de):
            v = head_of(de)
            twin = de ^ 1
            ordered = order_at_node[v]
            i = ordered.index(twin)
            return ordered[(i - 1) % 4]

        left_face = {}
        faces = []  # list of (directed edge list)
        for de0 in range(2 * len(edges)):
            if de0 in left_face:
                continue
            orbit = []
            de = de0
            while de not in left_face:
                left_face[de] = len(faces)
                orbit.append(de)
                de = next_de(de)
            if de != de0:
                raise DiagramError("face tracing did not close an orbit")
            faces.append(orbit)
        V = len(passages)
        E = len(edges)
        F = len(faces)
        if V - E + F != 0:
            raise DiagramError(
                f"arrangement has non-disk faces (V-E+F = {V - E + F}); "
                "scaffolding failed"
            )
        self._left_face = left_face
        self._faces = faces

        # face polygons in unfolded coordinates, normalized into the square
        self._face_polys = []
        for orbit in faces:
            poly = []
            pos = None
            for de in orbit:
                ci, n0, n1, pts = edges[de // 2]
                run = list(pts) if de % 2 == 0 else list(reversed(pts))
                if pos is None:
                    pos = run[0]
                    shift = (Fraction(0), Fraction(0))
                else:
                    shift = sub(pos, run[0])
                for p in run[:-1]:
                    poly.append(add(p, shift))
                pos = add(run[-1], shift)
            start = poly[0]
            if sub(pos, start) != (0, 0):
                raise DiagramError("face boundary does not close in the plane")
            self._face_polys.append(self._normalize_poly(poly, x0, y0))

        # 4. regions: union faces across scaffold edges
        parent = list(range(F))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb

        for eid, (ci, n0, n1, pts) in enumerate(edges):
            if ci >= n_real:
                union(left_face[2 * eid], left_face[2 * eid + 1])
        groups: dict[int, list] = {}
        for f in range(F):
            groups.setdefault(find(f), []).append(f)
        self.regions: list[Region] = []
        self._face_region = {}
        for root, fs in sorted(groups.items()):
            rid = len(self.regions)
            self.regions.append(Region(faces=fs))
            for f in fs:
                self._face_region[f] = rid

        # euler characteristic per region
        for rid, r in enumerate(self.regions):
            fset = set(r.faces)
            e_int = 0
            for eid, (ci, n0, n1, pts) in enumerate(edges):
                if ci >= n_real:
                    if left_face[2 * eid] in fset and left_face[2 * eid + 1] in fset:
                        e_int += 1
            v_int = 0
            for n, ps in passages.items():
                if all(ci >= n_real for (ci, _, _) in ps):
                    incident = {left_face[de] for de in order_at_node[n]}
                    incident |= {left_face[de ^ 1] for de in order_at_node[n]}
                    if incident <= fset:
                        v_int += 1
            r.chi = len(r.faces) - e_int + v_int

        # 5. real crossings and arcs
        self.crossings: list[Crossing] = []
        self._node_crossing = {}
        for n, ps in passages.items():
            if all(ci < n_real for (ci, _, _) in ps):
                cid = len(self.crossings)
                self.crossings.append(
                    Crossing(point=node_pts[n], circles=(ps[0][0], ps[1][0]))
                )
                self._node_crossing[n] = cid
        # order real events per circle
        self.arcs: list[Arc] = []
        real_events: dict[int, list] = {i: [] for i in range(n_real)}
        for n, ps in passages.items():
            if n not in self._node_crossing:
                continue
            for (ci, si, ti) in ps:
                if ci < n_real:
                    real_events[ci].append((si, ti, n))
        # map (circle, start event) -> chain of edges
        edge_from = {}
        for eid, (ci, n0, n1, pts) in enumerate(edges):
            edge_from.setdefault((ci, n0, tuple(pts[0:1])), []).append(eid)
        # walk arcs: follow successive edges of the circle between real nodes
        edges_by_circle: dict[int, list] = {}
        for eid, (ci, n0, n1, pts) in enumerate(edges):
            edges_by_circle.setdefault(ci, []).append(eid)
        for ci in range(n_real):
            evs = sorted(real_events[ci], key=lambda e: (e[0], e[1]))
            if not evs:
                raise DiagramError(
                    f"circle {ci} of the diagram meets no other real curve"
                )
            # all events (including scaffold) on this circle, in order
            all_evs = sorted(events[ci], key=lambda e: (e[0], e[1]))
            # edge k of this circle runs from all_evs[k] to all_evs[k+1]
            ceids = sorted(edges_by_circle[ci], key=lambda eid: _edge_sort_key(edges, all_evs, eid))
            k_real = [k for k, (si, ti, n) in enumerate(all_evs) if n in self._node_crossing]
            for a_i, k0 in enumerate(k_real):
                k1 = k_real[(a_i + 1) % len(k_real)]
                chain = []
                k = k0
                while True:
                    chain.append(ceids[k])
                    k = (k + 1) % len(all_evs)
                    if k == k1:
                        break
                    if len(chain) > len(all_evs):
                        raise DiagramError("arc walk failed")
                pts = []
                shift = (Fraction(0), Fraction(0))
                pos = None
                for eid in chain:
                    _, n0, n1, epts = edges[eid]
                    if pos is None:
                        pts.extend(epts)
                    else:
                        shift = sub(pos, epts[0])
                        pts.extend(add(p, shift) for p in epts[1:])
                    pos = pts[-1]
                aid = len(self.arcs)
                tail = self._node_crossing[all_evs[k0][2]]
                head = self._node_crossing[all_evs[k1][2]]
                first_eid = chain[0]
                last_eid = chain[-1]
                arc = Arc(circle=ci, tail=tail, head=head, pts=tuple(_dedup(pts)))
                arc.left_region = self._face_region[left_face[2 * first_eid]]
                arc.right_region = self._face_region[left_face[2 * first_eid + 1]]
                self.arcs.append(arc)
        # in/out arcs at each crossing, per circle
        for aid, arc in enumerate(self.arcs):
            self.crossings[arc.head].arcs.setdefault(arc.circle, [None, None])[0] = aid
            self.crossings[arc.tail].arcs.setdefault(arc.circle, [None, None])[1] = aid
        for cid, c in enumerate(self.crossings):
            for ci in c.circles:
                pair = c.arcs.get(ci)
                if pair is None or pair[0] is None or pair[1] is None:
                    raise DiagramError("crossing is missing an in/out arc")

        # 6. quadrants at real crossings
        for n, cid in self._node_crossing.items():
            c = self.crossings[cid]
            ends = []
            for de in order_at_node[n]:
                eci, n0, n1, pts = edges[de // 2]
                d = sub(pts[1], pts[0]) if de % 2 == 0 else sub(pts[-2], pts[-1])
                ends.append((de, d))
            for i, (de, d) in enumerate(ends):
                c.quadrants.append(self._face_region[left_face[de]])
                c.quadrant_dirs.append((d, ends[(i + 1) % 4][1]))
            c.circles = tuple(sorted({ci for ci, _, _ in passages[n]}))
        for rid, r in enumerate(self.regions):
            r.corners = sum(1 for c in self.crossings for q in c.quadrants if q == rid)

        # 7. basepoints
        self._locate_basepoints(x0, y0)
        # 8. G-crossings per arc
        self._mark_g_crossings()

    # -- helpers ----------------------------------------------------------

    @staticmethod
    def _param_point(segs, s, t) -> Point:
        a, b = segs[s]
        d = sub(b, a)
        return add(a, (d[0] * t, d[1] * t))

    def _check_embedded(self, circles):
        for i, c in enumerate(circles):
            segs = c.segments()
            hom = c.homology
            for a in range(len(segs)):
                for b in range(a, len(segs)):
                    p1, p2 = segs[a]
                    q1, q2 = segs[b]
                    for m in translates_overlapping(
                        min(p1[0], p2[0]), max(p1[0], p2[0]), min(q1[0], q2[0]), max(q1[0], q2[0])
                    ):
                        for n in translates_overlapping(
                            min(p1[1], p2[1]),
                            max(p1[1], p2[1]),
                            min(q1[1], q2[1]),
                            max(q1[1], q2[1]),
                        ):
                            if a == b and m == 0 and n == 0:
                                continue
                            adj = a != b and (
                                (b == a + 1 and (m, n) == (0, 0))
                                or (a == 0 and b == len(segs) - 1 and (m, n) == (-hom[0], -hom[1]))
                            )
                            sh = (Fraction(m), Fraction(n))
                            try:
                                hit = seg_intersect(p1, p2, add(q1, sh), add(q2, sh))
                            except DegenerateIntersection:
                                if adj:
                                    continue
                                raise DiagramError(f"circle {i} is not embedded")
                            if hit is not None:
                                raise DiagramError(f"circle {i} is not embedded")

    def _circle_crossings(self, ca: PLCircle, cb: PLCircle):
        out = []
        sa = ca.segments()
        sb = cb.segments()
        for i, (p1, p2) in enumerate(sa):
            for j, (q1, q2) in enumerate(sb):
                for m in translates_overlapping(
                    min(p1[0], p2[0]), max(p1[0], p2[0]), min(q1[0], q2[0]), max(q1[0], q2[0])
                ):
                    for n in translates_overlapping(
                        min(p1[1], p2[1]), max(p1[1], p2[1]), min(q1[1], q2[1]), max(q1[1], q2[1])
                    ):
                        sh = (Fraction(m), Fraction(n))
                        try:
                            hit = seg_intersect(p1, p2, add(q1, sh), add(q2, sh))
                        except DegenerateIntersection as e:
                            raise DiagramError(f"degenerate curve intersection: {e}")
                        if hit is not None:
                            t, u, pt = hit
                            out.append((pt, i, t, j, u))
        return out

    def _generic_offsets(self, circles, spec):
        cands = [Fraction(k, 1009) for k in (311, 413, 517, 619, 721, 823)]
        for x0 in cands:
            for y0 in cands:
                if self._offsets_ok(circles, spec, x0, y0):
                    return x0, y0
        raise DiagramError("no generic scaffold offset found")

    def _offsets_ok(self, circles, spec, x0, y0) -> bool:
        pts = [b.pos for b in spec.basepoints]
        if spec.arc_g:
            pts.extend(spec.arc_g)
        for c in circles:
            pts.extend(c.verts)
        for p in pts:
            if (p[0] - x0).denominator == 1 or (p[1] - y0).denominator == 1:
                return False
        # crossings of real circles must avoid the scaffold lines
        for i in range(len(circles)):
            for j in range(i + 1, len(circles)):
                for pt, *_ in self._circle_crossings(circles[i], circles[j]):
                    if (pt[0] - x0).denominator == 1 or (pt[1] - y0).denominator == 1:
                        return False
        # crossings with a scaffold line must avoid the other scaffold and the
        # scaffold parametrization endpoints
        for c in circles:
            for (a, b) in c.segments():
                for t, y in _line_hits(a, b, axis=0, level=x0):
                    if (y - y0).denominator == 1 or (y - y0 - Fraction(1, 2)).denominator == 1:
                        return False
                for t, x in _line_hits(a, b, axis=1, level=y0):
                    if (x - x0).denominator == 1 or (x - x0 - Fraction(1, 2)).denominator == 1:
                        return False
        return True

    @staticmethod
    def _normalize_poly(poly, x0, y0):
        min_x = min(p[0] for p in poly)
        max_x = max(p[0] for p in poly)
        min_y = min(p[1] for p in poly)
        max_y = max(p[1] for p in poly)
        sx = (x0 - min_x).__ceil__()
        sy = (y0 - min_y).__ceil__()
        if not (x0 <= min_x + sx and max_x + sx <= x0 + 1 and y0 <= min_y + sy and max_y + sy <= y0 + 1):
            raise DiagramError("face polygon does not fit the fundamental square")
        return [add(p, (Fraction(sx), Fraction(sy))) for p in poly]

    def _locate_basepoints(self, x0, y0):
        for b in self.spec.basepoints:
            p = (
                x0 + (b.pos[0] - x0) - Fraction((b.pos[0] - x0).__floor__()),
                y0 + (b.pos[1] - y0) - Fraction((b.pos[1] - y0).__floor__()),
            )
            found = None
            for f, poly in enumerate(self._face_polys):
                try:
                    w = polygon_winding(poly, p)
                except GeometryError:
                    raise DiagramError(f"basepoint {b.name} lies on a curve or scaffold")
                if w != 0:
                    if found is not None:
                        raise DiagramError(f"basepoint {b.name} located twice")
                    found = f
            if found is None:
                raise DiagramError(f"basepoint {b.name} not located")
            self.regions[self._face_region[found]].basepoints.append(b.name)

    def _mark_g_crossings(self):
        if not self.spec.arc_g:
            return
        g = self.spec.arc_g
        gsegs = list(zip(g[:-1], g[1:]))
        for arc in self.arcs:
            total = 0
            for (p1, p2) in zip(arc.pts[:-1], arc.pts[1:]):
                for (q1, q2) in gsegs:
                    for m in translates_overlapping(
                        min(p1[0], p2[0]), max(p1[0], p2[0]), min(q1[0], q2[0]), max(q1[0], q2[0])
                    ):
                        for n in translates_overlapping(
                            min(p1[1], p2[1]),
                            max(p1[1], p2[1]),
                            min(q1[1], q2[1]),
                            max(q1[1], q2[1]),
                        ):
                            sh = (Fraction(m), Fraction(n))
                            try:
                                hit = seg_intersect(p1, p2, add(q1, sh), add(q2, sh))
                            except DegenerateIntersection as e:
                                raise DiagramError(f"G-arc degeneracy: {e}")
                            if hit is not None:
                                dc = sub(p2, p1)
                                dg = sub(q2, q1)
                                total += 1 if cross(dg, dc) > 0 else -1
            arc.g_cross = total

    # -- public queries -----------------------------------------------------

    def curve_index(self, name: str) -> int:
        return self.curve_names.index(name)

    def circles_of(self, curve: str) -> list[int]:
        ci = self.curve_index(curve)
        return [k for k, c in enumerate(self.circle_curve) if c == ci]

    def crossings_between(self, curve_a: str, curve_b: str) -> list[int]:
        ca = set(self.circles_of(curve_a))
        cb = set(self.circles_of(curve_b))
        out = []
        for cid, c in enumerate(self.crossings):
            s = set(c.circles)
            if (s & ca) and (s & cb):
                out.append(cid)
        return out

    def generators(self, curve_a: str, curve_b: str):
        """Tuples of crossing ids matching every circle of both curves."""
        ca = self.circles_of(curve_a)
        cb = self.circles_of(curve_b)
        if len(ca) != len(cb):
            raise DiagramError("attaching curves with different circle counts")
        xs = self.crossings_between(curve_a, curve_b)
        by_pair: dict[tuple[int, int], list] = {}
        for cid in xs:
            s = set(self.crossings[cid].circles)
            a = next(iter(s & set(ca)))
            b = next(iter(s & set(cb)))
            by_pair.setdefault((a, b), []).append(cid)
        import itertools

        gens = []
        for perm in itertools.permutations(cb):
            pools = []
            ok = True
            for a, b in zip(ca, perm):
                pool = by_pair.get((a, b), [])
                if not pool:
                    ok = False
                    break
                pools.append(pool)
            if not ok:
                continue
            for combo in itertools.product(*pools):
                gens.append(tuple(sorted(combo)))
        return sorted(set(gens))

    def region_weight_vec(self):
        return [r.weight for r in self.regions]

    def p_vector(self):
        return [r.p_mult for r in self.regions]

    def euler_measure(self, rid: int) -> Fraction:
        r = self.regions[rid]
        return Fraction(r.chi) - Fraction(r.corners, 4)


def _dedup(pts):
    out = [pts[0]]
    for p in pts[1:]:
        if p != out[-1]:
            out.append(p)
    return out


def _line_hits(a: Point, b: Point, axis: int, level: Fraction):
    """Crossings of segment a-b with the lines {coord == level mod 1}."""
    lo, hi = min(a[axis], b[axis]), max(a[axis], b[axis])
    out = []
    k = (lo - level).__ceil__()
    while level + k <= hi:
        val = level + k
        if lo < hi:
            t = (val - a[axis]) / (b[axis] - a[axis])
            if 0 < t < 1:
                other = a[1 - axis] + t * (b[1 - axis] - a[1 - axis])
                out.append((t, other))
        k += 1
    return out


def _edge_sort_key(edges, all_evs, eid):
    # edges of a circle start at successive events; key them by the event order
    ci, n0, n1, pts = edges[eid]
    for k, (si, ti, n) in enumerate(all_evs):
        if n == n0:
            # several events can share a node only at distinct parameters;
            # match by the actual start point
            return k
    raise DiagramError("edge start event not found")


def compile_pl(spec: PLCurveSpec, truncation: int = 16) -> CombDiagram:
    return CombDiagram(spec, truncation=truncation)


# --- file format -------------------------------------------------------------


def _enc_frac(x: Fraction):
    return [x.numerator, x.denominator]


def _dec_frac(v) -> Fraction:
    return Fraction(v[0], v[1])


def save_spec(spec: PLCurveSpec) -> str:
    doc = {
        "genus": spec.genus,
        "curves": [
            {
                "name": c.name,
                "local_system": c.local_system,
                "circles": [[[_enc_frac(p[0]), _enc_frac(p[1])] for p in circ.verts] for circ in c.circles],
            }
            for c in spec.curves
        ],
        "basepoints": [
            {
                "name": b.name,
                "type": b.btype,
                "class": b.cls,
                "position": [_enc_frac(b.pos[0]), _enc_frac(b.pos[1])],
            }
            for b in spec.basepoints
        ],
    }
    if spec.arc_g:
        doc["arc_G"] = [[_enc_frac(p[0]), _enc_frac(p[1])] for p in spec.arc_g]
    return json.dumps(doc, indent=1, sort_keys=True)


def load_spec(text: str) -> PLCurveSpec:
    doc = json.loads(text)
    curves = tuple(
        CurveSpec(
            name=c["name"],
            local_system=c["local_system"],
            circles=tuple(
                PLCircle(tuple((_dec_frac(p[0]), _dec_frac(p[1])) for p in circ))
                for circ in c["circles"]
            ),
        )
        for c in doc["curves"]
    )
    bps = tuple(
        BasepointSpec(
            name=b["name"],
            btype=b["type"],
            cls=b["class"],
            pos=(_dec_frac(b["position"][0]), _dec_frac(b["position"][1])),
        )
        for b in doc["basepoints"]
    )
    arc = None
    if "arc_G" in doc:
        arc = tuple((_dec_frac(p[0]), _dec_frac(p[1])) for p in doc["arc_G"])
    return PLCurveSpec(curves=curves, basepoints=bps, arc_g=arc, genus=doc.get("genus", 1))
