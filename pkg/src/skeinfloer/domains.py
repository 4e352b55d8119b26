"""Polygon domains in a compiled diagram: enumeration with prescribed
vertices, total multiplicity, weights and monodromy, the combinatorial
Maslov index, the universal-cover embedded-lift test, and the gradability
checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coefficients import HomElt, RingElt, compose_monodromy, monomial, one
from .diagram import CombDiagram, DiagramError
from .geometry import (
    Point,
    add,
    cross,
    interior_point,
    polygon_is_simple,
    polygon_winding,
    sub,
)
from .intlinalg import lp_solve, smith_solve


class DomainError(Exception):
    pass


Generator = tuple[int, ...]  # sorted crossing ids, one per circle pair


@dataclass(frozen=True)
class VertexSeq:
    """Cyclic vertex data of a polygon domain.

    ``curves`` lists the d+1 participating attaching curves c_0..c_d in
    composition order; ``inputs`` are x_1..x_d with x_j between c_{j-1} and
    c_j, and ``output`` is y between c_0 and c_d.
    """

    curves: tuple[str, ...]
    inputs: tuple[Generator, ...]
    output: Generator

    @property
    def arity(self) -> int:
        return len(self.inputs)

    def vertex_list(self):
        return list(self.inputs) + [self.output]


@dataclass
class DomainInstance:
    diagram: CombDiagram
    mult: tuple[int, ...]
    vseq: VertexSeq

    _cache: dict = None

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    # -- numeric invariants -------------------------------------------------

    @property
    def p_total(self) -> int:
        pv = self.diagram.p_vector()
        return sum(m * p for m, p in zip(self.mult, pv))

    def weight_exponents(self) -> dict[str, int]:
        acc: dict[str, int] = {}
        for m, r in zip(self.mult, self.diagram.regions):
            if m == 0:
                continue
            for k, v in r.weight.items():
                acc[k] = acc.get(k, 0) + m * v
        return acc

    def weight(self, sig) -> RingElt:
        return monomial(sig, self.weight_exponents())

    def is_nonnegative(self) -> bool:
        return all(m >= 0 for m in self.mult)

    def euler_measure(self) -> Fraction:
        e = Fraction(0)
        for rid, m in enumerate(self.mult):
            if m:
                e += m * self.diagram.euler_measure(rid)
        return e

    def point_multiplicity(self, crossing_id: int) -> Fraction:
        c = self.diagram.crossings[crossing_id]
        return Fraction(sum(self.mult[q] for q in c.quadrants), 4)

    def vertex_multiplicity(self, gen: Generator) -> Fraction:
        return sum((self.point_multiplicity(p) for p in gen), Fraction(0))

    def maslov(self):
        """Combinatorial Maslov index.

        Two-vertex domains get the exact Euler-measure formula.  Higher
        polygons are graded through the embedded-lift trichotomy: a domain
        with an embedded disk lift with convex corners at its k vertices has
        index 3 - k, and domains with no disk lift at all are irrelevant
        (they are excluded from the counts before the index matters).  For
        the remaining polygons the index is undetermined and ``None`` is
        returned; their counts become solver symbols.
        """
        if "maslov" in self._cache:
            return self._cache["maslov"]
        k = self.vseq.arity + 1
        if k == 2:
            mu = self.euler_measure()
            for v in self.vseq.vertex_list():
                mu += self.vertex_multiplicity(v)
        else:
            verdict = embedded_lift(self)
            if verdict == "one":
                mu = Fraction(3 - k)
            else:
                mu = None
        self._cache["maslov"] = mu
        return mu

    # -- boundary -----------------------------------------------------------

    def boundary_coefficients(self) -> dict[int, int]:
        """Arc id -> multiplicity of the arc in the boundary, oriented so
        that the boundary path of object j runs from x_j to x_{j+1}."""
        coefs = {}
        for aid, arc in enumerate(self.diagram.arcs):
            c = self.mult[arc.right_region] - self.mult[arc.left_region]
            if c:
                coefs[aid] = c
        return coefs

    def g_crossings(self) -> list[int]:
        """Signed G-crossing count of the boundary on each object 0..d."""
        d = self.diagram
        coefs = self.boundary_coefficients()
        out = []
        for cname in self.vseq.curves:
            circles = set(d.circles_of(cname))
            out.append(
                sum(c * d.arcs[aid].g_cross for aid, c in coefs.items() if d.arcs[aid].circle in circles)
            )
        return out

    def boundary_path(self, obj_index: int):
        """The boundary of each circle of object ``obj_index`` traced as a
        chain of (arc id, +-1) steps from its start point to its end point.

        Returns None when the boundary cannot be traced as unambiguous
        simple paths (higher multiplicities or stray loops).
        """
        d = self.diagram
        vs = self.vseq
        cname = vs.curves[obj_index]
        circles = d.circles_of(cname)
        verts = vs.vertex_list()
        dd = vs.arity
        if obj_index == 0:
            start_gen, end_gen = vs.output, vs.inputs[0]
        elif obj_index == dd:
            start_gen, end_gen = vs.inputs[dd - 1], vs.output
        else:
            start_gen, end_gen = vs.inputs[obj_index - 1], vs.inputs[obj_index]
        coefs = self.boundary_coefficients()
        paths = []
        for circ in circles:
            local = {aid: c for aid, c in coefs.items() if d.arcs[aid].circle == circ}
            starts = [p for p in start_gen if circ in d.crossings[p].circles]
            ends = [p for p in end_gen if circ in d.crossings[p].circles]
            if len(starts) != 1 or len(ends) != 1:
                return None
            pos, end = starts[0], ends[0]
            path = []
            budget = sum(abs(c) for c in local.values()) + 1
            while True:
                if pos == end and not any(local.values()):
                    break
                budget -= 1
                if budget < 0:
                    return None
                cands = []
                out_a = d.crossings[pos].arcs[circ][1]
                in_a = d.crossings[pos].arcs[circ][0]
                if local.get(out_a, 0) > 0:
                    cands.append((out_a, 1))
                if local.get(in_a, 0) < 0:
                    cands.append((in_a, -1))
                if len(cands) != 1:
                    return None
                aid, sgn = cands[0]
                local[aid] -= sgn
                if local[aid] == 0:
                    del local[aid]
                path.append((aid, sgn))
                pos = d.arcs[aid].head if sgn > 0 else d.arcs[aid].tail
            paths.append(path)
        return paths


# --- enumeration -------------------------------------------------------------


def _corner_rows(diagram: CombDiagram):
    if hasattr(diagram, "_corner_rows"):
        return diagram._corner_rows
    rows = {}
    for cid, c in enumerate(diagram.crossings):
        for circ in c.circles:
            in_a, out_a = c.arcs[circ]
            vec = [0] * len(diagram.regions)
            # del(del_c D) at the crossing: incoming coefficient minus
            # outgoing, with the boundary orientation of
            # DomainInstance.boundary_coefficients
            a = diagram.arcs[in_a]
            vec[a.right_region] += 1
            vec[a.left_region] -= 1
            a = diagram.arcs[out_a]
            vec[a.right_region] -= 1
            vec[a.left_region] += 1
            rows[(cid, circ)] = vec
    diagram._corner_rows = rows
    return rows


def corner_target(diagram: CombDiagram, vseq: VertexSeq):
    """Required corner displacement: dict (crossing, circle) -> int."""
    t: dict[tuple[int, int], int] = {}
    d = vseq.arity
    verts = vseq.vertex_list()

    def circle_of(gen_pt: int, cname: str) -> int:
        cset = set(diagram.circles_of(cname))
        for circ in diagram.crossings[gen_pt].circles:
            if circ in cset:
                return circ
        raise DomainError("generator point not on expected curve")

    for j, cname in enumerate(vseq.curves):
        if j == 0:
            minus, plus = vseq.output, vseq.inputs[0]
        elif j == d:
            minus, plus = vseq.inputs[d - 1], vseq.output
        else:
            minus, plus = vseq.inputs[j - 1], vseq.inputs[j]
        for p in plus:
            circ = circle_of(p, cname)
            t[(p, circ)] = t.get((p, circ), 0) + 1
        for p in minus:
            circ = circle_of(p, cname)
            t[(p, circ)] = t.get((p, circ), 0) - 1
    return t


def enumerate_domains(
    diagram: CombDiagram,
    vseq: VertexSeq,
    p_bound: int,
    maslov: Optional[Fraction] = None,
) -> list[DomainInstance]:
    """All nonnegative domains with the given vertices and P <= p_bound,
    optionally filtered by Maslov index.  Complete and duplicate-free."""
    rows = _corner_rows(diagram)
    keys = sorted(rows.keys())
    M = [rows[k] for k in keys]
    tdict = corner_target(diagram, vseq)
    bad = set(tdict) - set(keys)
    if bad:
        raise DomainError(f"corner target at unknown crossing rows {bad}")
    t = [tdict.get(k, 0) for k in keys]
    x0, kern = smith_solve(M, t)
    sols = []
    if x0 is None:
        return []
    p = diagram.p_vector()
    n_regions = len(diagram.regions)
    if not kern:
        cands = [tuple(x0)]
    else:
        r = len(kern)
        # bounds on kernel coordinates from { x0 + K c >= 0, p.(x0+Kc) <= B }
        A = []
        b = []
        for i in range(n_regions):
            A.append([-kern[j][i] for j in range(r)])
            b.append(x0[i])
        A.append([sum(p[i] * kern[j][i] for i in range(n_regions)) for j in range(r)])
        b.append(p_bound - sum(p[i] * x0[i] for i in range(n_regions)))
        kern = _echelonize(kern)
        r = len(kern)
        A = []
        b = []
        for i in range(n_regions):
            A.append([-kern[j][i] for j in range(r)])
            b.append(x0[i])
        A.append([sum(p[i] * kern[j][i] for i in range(n_regions)) for j in range(r)])
        b.append(p_bound - sum(p[i] * x0[i] for i in range(n_regions)))
        boxes = []
        for j in range(r):
            c_obj = [0] * r
            c_obj[j] = 1
            lo = lp_solve(c_obj, A, b)
            hi = lp_solve(c_obj, A, b, maximize=True)
            if lo.status == "infeasible" or hi.status == "infeasible":
                return []
            if lo.status != "optimal" or hi.status != "optimal":
                raise DomainError(
                    "unbounded domain enumeration; diagram is not weakly admissible"
                )
            boxes.append((lo.value.__ceil__(), hi.value.__floor__()))
        # rows whose kernel entries vanish from level j+1 on can be checked as
        # soon as level j is fixed
        settled = [[] for _ in range(r)]
        for i in range(n_regions):
            last = -1
            for j in range(r):
                if kern[j][i]:
                    last = j
            if last >= 0:
                settled[last].append(i)
            # rows never touched are checked against x0 directly
        for i in range(n_regions):
            if all(kern[j][i] == 0 for j in range(r)) and x0[i] < 0:
                return []
        cands = []
        cur = list(x0)

        def rec(j):
            if j == r:
                if sum(p[i] * cur[i] for i in range(n_regions)) <= p_bound:
                    cands.append(tuple(cur))
                return
            kj = kern[j]
            for c in range(boxes[j][0], boxes[j][1] + 1):
                if c:
                    for i in range(n_regions):
                        if kj[i]:
                            cur[i] += c * kj[i]
                ok = all(cur[i] >= 0 for i in settled[j])
                if ok:
                    rec(j + 1)
                if c:
                    for i in range(n_regions):
                        if kj[i]:
                            cur[i] -= c * kj[i]

        rec(0)
    out = []
    for n in sorted(set(cands)):
        if any(v < 0 for v in n):
            continue
        if sum(p[i] * n[i] for i in range(n_regions)) > p_bound:
            continue
        dom = DomainInstance(diagram=diagram, mult=n, vseq=vseq)
        if maslov is not None and dom.maslov() != maslov:
            continue
        out.append(dom)
    return out


def _echelonize(kern):
    """Column-echelon the kernel basis so each pivot row is touched by a
    single vector; the enumeration then checks rows as they settle."""
    vecs = [list(v) for v in kern]
    if not vecs:
        return []
    n = len(vecs[0])
    r = len(vecs)
    done_rows = set()
    for j in range(r):
        best = None
        for i in range(n):
            if i in done_rows:
                continue
            touching = [k for k in range(j, r) if vecs[k][i]]
            if touching and (best is None or len(touching) < best[1]):
                best = (i, len(touching), touching[0])
        if best is None:
            break
        i, _, k0 = best
        vecs[j], vecs[k0] = vecs[k0], vecs[j]
        for k in range(j + 1, r):
            while vecs[k][i]:
                if abs(vecs[j][i]) <= abs(vecs[k][i]):
                    q = vecs[k][i] // vecs[j][i]
                    vecs[k] = [a - q * bnew for a, bnew in zip(vecs[k], vecs[j])]
                else:
                    vecs[j], vecs[k] = vecs[k], vecs[j]
        done_rows.add(i)
    return [tuple(v) for v in vecs]


# --- weights and monodromy ----------------------------------------------------


def weight_monodromy(dom: DomainInstance, inputs: list[HomElt], laurent_sig=None):
    """(w(D), rho(D)(f_1 (x) ... (x) f_d)) in a Laurent-widened signature."""
    d = dom.diagram
    sig = laurent_sig if laurent_sig is not None else laurent_signature(d)
    w = dom.weight(sig)
    gs = dom.g_crossings()
    fs = [f if f.sig == sig else HomElt(sig, f.source, f.target, _resig(f, sig)) for f in inputs]
    rho = compose_monodromy(sig, gs, fs)
    return w, rho


def laurent_signature(diagram: CombDiagram):
    sig = diagram.sig
    di = sig.distinguished_index()
    if di is None:
        return sig
    return sig.with_laurent_floor(sig.names[di], -4 * sig.truncation[di])


def _resig(f: HomElt, sig):
    rows = []
    for row in f.entries:
        rows.append(tuple(RingElt(sig, e.terms) for e in row))
    return tuple(rows)


# --- embedded lift test --------------------------------------------------------


def lifted_boundary(dom: DomainInstance):
    """The boundary of the domain lifted to the plane as a closed polygon.

    Returns (polygon points, vertex lift data) or None when the boundary
    cannot be traced or does not close up.  Vertex lift data records, for
    each polygon corner at a domain vertex, (crossing id, lifted point,
    incoming direction, outgoing direction).
    """
    d = dom.diagram
    vs = dom.vseq
    k = vs.arity + 1
    all_paths = []
    for j in range(k):
        paths = dom.boundary_path(j)
        if paths is None:
            return None
        if len(paths) != 1:
            return None  # callers restrict to one-circle tracing
        all_paths.append(paths[0])
    pts: list[Point] = []
    vertex_data = []
    pos = None
    verts = vs.vertex_list()
    for j in range(k):
        # vertex between object j-1 and object j is verts[j-1]; the trace
        # starts at output/input points in the order y, x_1, ..., x_d
        vertex_gen = verts[-1] if j == 0 else verts[j - 1]
        vpt = d.crossings[vertex_gen[0]].point
        if pos is None:
            pos = vpt
            pts.append(pos)
        vertex_data.append((vertex_gen[0], pos))
        for (aid, sgn) in all_paths[j]:
            run = list(d.arcs[aid].pts) if sgn > 0 else list(reversed(d.arcs[aid].pts))
            shift = sub(pos, run[0])
            for q in run[1:]:
                pts.append(add(q, shift))
            pos = pts[-1]
    if sub(pos, pts[0]) != (0, 0):
        return None
    return pts[:-1], vertex_data


def embedded_lift(dom: DomainInstance):
    """Trichotomy for the holomorphic count of a one-circle-curve domain:
    "one" (embedded lift), "zero" (no lift can exist), or "unknown"."""
    d = dom.diagram
    if all(m == 0 for m in dom.mult):
        return "one"
    if any(len(d.circles_of(c)) != 1 for c in dom.vseq.curves):
        return "unknown"
    lb = lifted_boundary(dom)
    if lb is None:
        coefs = dom.boundary_coefficients()
        if any(abs(c) > 1 for c in coefs.values()):
            return "unknown"
        # untraceable or non-closing with simple coefficients: no disk
        return "zero"
    poly, vertex_data = lb
    # The trace may walk the boundary in either orientation: the disk lift
    # needs a winding function of uniform sign whose absolute value pushes
    # forward to the two-chain.
    from .geometry import IntWinding

    min_x = min(p[0] for p in poly)
    max_x = max(p[0] for p in poly)
    min_y = min(p[1] for p in poly)
    max_y = max(p[1] for p in poly)
    wind = IntWinding(poly)
    ok_pos = True
    ok_neg = True
    beyond_one = False
    seen_pos = False
    seen_neg = False
    if not hasattr(d, "_face_samples"):
        d._face_samples = [interior_point(pp) for pp in d._face_polys]
    for rid, region in enumerate(d.regions):
        for f in region.faces:
            total = 0
            sample = d._face_samples[f]
            kx0 = (min_x - sample[0]).__floor__()
            kx1 = (max_x - sample[0]).__ceil__()
            ky0 = (min_y - sample[1]).__floor__()
            ky1 = (max_y - sample[1]).__ceil__()
            for mx in range(kx0, kx1 + 1):
                for my in range(ky0, ky1 + 1):
                    q = (sample[0] + mx, sample[1] + my)
                    if not (min_x < q[0] < max_x and min_y < q[1] < max_y):
                        continue
                    w = wind.winding(q)
                    if abs(w) > 1:
                        beyond_one = True
                    if w > 0:
                        seen_pos = True
                    elif w < 0:
                        seen_neg = True
                    total += w
            if total != dom.mult[rid]:
                ok_pos = False
            if -total != dom.mult[rid]:
                ok_neg = False
            if not ok_pos and not ok_neg:
                return "zero"
    if not ok_pos and not ok_neg:
        return "zero"
    if seen_pos and seen_neg:
        # a disk has local degrees of a single sign in either orientation
        return "zero"
    if beyond_one:
        return "unknown"
    if not polygon_is_simple(poly):
        return "unknown"
    if seen_neg:
        # reverse to the counterclockwise orientation for the corner test
        poly = poly[::-1]
    # convex corner at every vertex lift: exactly one quadrant inside; a
    # reflex corner raises the index, so the class is not rigid and counts 0
    n = len(poly)
    for (cid, vpt) in vertex_data:
        i = poly.index(vpt)
        d_out = sub(poly[(i + 1) % n], poly[i])
        d_in = sub(poly[i], poly[(i - 1) % n])
        c = d.crossings[cid]
        rays = [dirpair[0] for dirpair in c.quadrant_dirs]
        inside = 0
        for a_i in range(4):
            ra = rays[a_i]
            rb = rays[(a_i + 1) % 4]
            # quadrant (ra, rb) is inside iff its bisector direction lies in
            # the interior sector from d_out counterclockwise to -d_in
            bis = (ra[0] + rb[0], ra[1] + rb[1])
            if _in_ccw_sector(bis, d_out, (-d_in[0], -d_in[1])):
                inside += 1
        if inside != 1:
            return "zero"
    return "one"


def _in_ccw_sector(v, a, b):
    """Is direction v strictly inside the CCW sector from a to b?"""
    ca = cross(a, v)
    cb = cross(v, b)
    if cross(a, b) > 0:
        return ca > 0 and cb > 0
    if cross(a, b) < 0:
        return ca > 0 or cb > 0
    # a, b parallel: sector is a half turn (if opposite) or degenerate
    if a[0] * b[0] + a[1] * b[1] < 0:
        return ca > 0
    return False


# --- cornerless lattice and checks --------------------------------------------


def cornerless_lattice(diagram: CombDiagram):
    """Integer basis of two-chains whose boundary is a cycle on every curve,
    annotated with total multiplicity and per-circle boundary windings."""
    rows = _corner_rows(diagram)
    keys = sorted(rows.keys())
    M = [rows[k] for k in keys]
    _, kern = smith_solve(M, [0] * len(keys))
    out = []
    p = diagram.p_vector()
    for v in kern:
        windings = {}
        for aid, arc in enumerate(diagram.arcs):
            c = v[arc.right_region] - v[arc.left_region]
            if c:
                windings[arc.circle] = c  # constant along the circle
        out.append(
            {
                "mult": tuple(v),
                "p": sum(p[i] * v[i] for i in range(len(v))),
                "windings": windings,
            }
        )
    return out


def is_weakly_admissible(diagram: CombDiagram) -> bool:
    """Every nonzero cornerless two-chain avoiding all basepoints and the
    positive G-endpoint has both signs; decided by exact LP."""
    lattice = cornerless_lattice(diagram)
    if not lattice:
        return True
    q_regions = [i for i, r in enumerate(diagram.regions) if r.q_count > 0]
    Mq = [[entry["mult"][i] for entry in lattice] for i in q_regions]
    _, sub_kern = smith_solve(Mq if Mq else [[0] * len(lattice)], [0] * max(1, len(q_regions)))
    if not sub_kern:
        return True
    n_regions = len(diagram.regions)
    # chains: n = sum c_j * (sub_kern combo in region coordinates)
    vecs = []
    for comb in sub_kern:
        v = [0] * n_regions
        for j, cj in enumerate(comb):
            if cj:
                for i in range(n_regions):
                    v[i] += cj * lattice[j]["mult"][i]
        vecs.append(v)
    r = len(vecs)
    A = []
    b = []
    for i in range(n_regions):
        A.append([-vecs[j][i] for j in range(r)])
        b.append(0)
    A.append([sum(vecs[j]) for j in range(r)])
    b.append(1)
    res = lp_solve([sum(vecs[j]) for j in range(r)], A, b, maximize=True)
    if res.status != "optimal":
        raise DomainError("admissibility LP failed")
    return res.value == 0


def gradability(diagram: CombDiagram):
    """Z-gradability and Alexander Z/2-splittability over the cornerless
    lattice, with a witness on failure."""
    lattice = cornerless_lattice(diagram)
    z2 = True
    z2_witness = None
    for entry in lattice:
        if entry["p"] % 2 != 0:
            z2 = False
            z2_witness = entry
            break
    z_ok = True
    z_witness = None
    gens = []
    names = diagram.curve_names
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            try:
                gens.extend(diagram.generators(names[i], names[j]))
            except DiagramError:
                continue
    for entry in lattice:
        mult = entry["mult"]
        e = sum(
            (m * diagram.euler_measure(i) for i, m in enumerate(mult) if m),
            Fraction(0),
        )
        for gen in gens:
            nq = Fraction(0)
            for cid in gen:
                c = diagram.crossings[cid]
                nq += Fraction(sum(mult[q] for q in c.quadrants), 4)
            mu = e + 2 * nq
            if mu != entry["p"]:
                z_ok = False
                z_witness = (entry, gen, mu)
                break
        if not z_ok:
            break
    return {
        "z_gradable": z_ok,
        "z_witness": z_witness,
        "z2_splittable": z2,
        "z2_witness": z2_witness,
    }
