"""Homology of finite free complexes over the truncated chain ring
F2[u]/(u^M): Smith-style diagonalization, torsion profiles via the
nilpotent u-action on F2 homology, version summaries, relative gradings,
and canonical band elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coefficients import (
    HomElt,
    RingElt,
    RingSignature,
    collapse_signature,
    monomial,
    one,
    re_specialize,
    zero,
)


class HomologyError(Exception):
    pass


# --- polynomials over F2[u]/(u^M) as frozensets of exponents -----------------


def poly_add(a: frozenset, b: frozenset) -> frozenset:
    return a ^ b


def poly_mul(a: frozenset, b: frozenset, M: int) -> frozenset:
    out = set()
    for x in a:
        for y in b:
            if x + y < M:
                out ^= {x + y}
    return frozenset(out)


def poly_val(a: frozenset) -> Optional[int]:
    return min(a) if a else None


def poly_unit_inverse(a: frozenset, M: int) -> frozenset:
    """Inverse of a unit (valuation 0) modulo u^M."""
    if poly_val(a) != 0:
        raise HomologyError("not a unit")
    inv = frozenset({0})
    rest = a - {0}
    # (1 + r)^{-1} = 1 + r + r^2 + ...
    term = frozenset({0})
    acc = frozenset({0})
    for _ in range(M):
        term = poly_mul(term, rest, M)
        if not term:
            break
        acc = poly_add(acc, term)
    return acc


def chain_ring_snf(matrix: list[list[frozenset]], M: int):
    """Diagonalize over F2[u]/(u^M) by lowest-valuation pivoting.

    Returns (pivots, U, V) where pivots is the list of diagonal valuations
    u^{a_i} and U, V are the recorded invertible row/column transforms with
    U * A * V diagonal.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    A = [[matrix[i][j] for j in range(cols)] for i in range(rows)]
    U = [[frozenset({0}) if i == j else frozenset() for j in range(rows)] for i in range(rows)]
    V = [[frozenset({0}) if i == j else frozenset() for j in range(cols)] for i in range(cols)]
    pivots = []
    r = 0
    while True:
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                v = poly_val(A[i][j])
                if v is not None and (best is None or v < best[2]):
                    best = (i, j, v)
        if best is None:
            break
        bi, bj, bv = best
        A[r], A[bi] = A[bi], A[r]
        U[r], U[bi] = U[bi], U[r]
        for row in A:
            row[r], row[bj] = row[bj], row[r]
        for row in V:
            row[r], row[bj] = row[bj], row[r]
        unit = frozenset({e - bv for e in A[r][r]})
        inv = poly_unit_inverse(unit, M)
        # scale the pivot row so the pivot is exactly u^{bv}
        A[r] = [poly_mul(inv, x, M) for x in A[r]]
        U[r] = [poly_mul(inv, x, M) for x in U[r]]
        for i in range(rows):
            if i != r and A[i][r]:
                q = frozenset({e - bv for e in A[i][r]})
                for j in range(cols):
                    A[i][j] = poly_add(A[i][j], poly_mul(q, A[r][j], M))
                for j in range(rows):
                    U[i][j] = poly_add(U[i][j], poly_mul(q, U[r][j], M))
        for j in range(cols):
            if j != r and A[r][j]:
                q = frozenset({e - bv for e in A[r][j]})
                for i in range(rows):
                    A[i][j] = poly_add(A[i][j], poly_mul(q, A[i][r], M))
                for i in range(cols):
                    V[i][j] = poly_add(V[i][j], poly_mul(q, V[i][r], M))
        pivots.append(bv)
        r += 1
        if r >= min(rows, cols):
            break
    return pivots, U, V


# --- torsion profiles ---------------------------------------------------------


@dataclass(frozen=True)
class TorsionProfile:
    """Homology shape over F2[u]/(u^M).

    For the truncation of a finite free complex over F2[[u]], every honest
    torsion class of order a < M shows up twice (the class itself and its
    Tor-artifact at the top of the window), so the honest profile halves the
    torsion multiset; ``stable`` reports whether that pairing holds.
    """

    free_rank: int
    torsion_orders: tuple[int, ...]
    truncation: int

    def total_f2_dim(self) -> int:
        return self.free_rank * self.truncation + sum(self.torsion_orders)

    def honest_torsion(self) -> tuple[int, ...]:
        from collections import Counter

        c = Counter(self.torsion_orders)
        if any(v % 2 for v in c.values()):
            raise HomologyError(
                f"unpaired torsion orders {self.torsion_orders}; truncation too small"
            )
        out = []
        for a in sorted(c):
            out.extend([a] * (c[a] // 2))
        return tuple(out)

    def is_pairable(self) -> bool:
        from collections import Counter

        return all(v % 2 == 0 for v in Counter(self.torsion_orders).values())


class F2Matrix:
    """Rows as Python ints (bitsets)."""

    def __init__(self, rows: list[int], width: int):
        self.rows = rows
        self.width = width

    @staticmethod
    def from_entries(n, m, entries):
        rows = [0] * n
        for (i, j) in entries:
            rows[i] |= 1 << j
        return F2Matrix(rows, m)

    def rank(self) -> int:
        rows = [r for r in self.rows if r]
        rank = 0
        while rows:
            pivot_row = rows.pop()
            if pivot_row == 0:
                continue
            low = pivot_row & -pivot_row
            rank += 1
            rows = [r ^ pivot_row if r & low else r for r in rows]
        return rank


def _gf2_row_reduce(rows: list[int]):
    """Row-reduce; returns (reduced rows, pivot columns)."""
    out = []
    pivots = []
    for r in rows:
        for pr, pc in zip(out, pivots):
            if r >> pc & 1:
                r ^= pr
        if r:
            pc = r.bit_length() - 1
            out.append(r)
            pivots.append(pc)
    return out, pivots


def _gf2_nullspace(columns: list[int], n_rows: int, n_cols: int) -> list[int]:
    """Nullspace vectors (as column index bitsets) of a matrix given by its
    columns (each an n_rows-bitset)."""
    main = [columns[j] for j in range(n_cols)]
    tail = [1 << j for j in range(n_cols)]
    n = len(main)
    used = [False] * n
    for bit in range(n_rows):
        piv = None
        for i in range(n):
            if not used[i] and (main[i] >> bit) & 1:
                piv = i
                break
        if piv is None:
            continue
        used[piv] = True
        for i in range(n):
            if i != piv and (main[i] >> bit) & 1:
                main[i] ^= main[piv]
                tail[i] ^= tail[piv]
    return [tail[i] for i in range(n) if main[i] == 0 and tail[i]]


class F2Homology:
    """ker/im of a square-zero F2 endomorphism, with chosen representatives."""

    def __init__(self, columns: list[int], dim: int):
        # columns[j] = image of basis vector j as a bitset over basis indices
        self.columns = columns
        self.dim = dim
        self.kernel = _gf2_nullspace(columns, dim, dim)
        img = [c for c in columns if c]
        self.image_reduced, self.image_pivots = _gf2_row_reduce(img)
        reps = []
        span = list(self.image_reduced)
        pivots = list(self.image_pivots)
        for v in self.kernel:
            w = v
            for pr, pc in zip(span, pivots):
                if w >> pc & 1:
                    w ^= pr
            if w:
                reps.append(v)
                span.append(w)
                pivots.append(w.bit_length() - 1)
        self.reps = reps  # homology class representatives
        self._reps_red = []
        self._reps_pivots = []
        self._reps_coords = []
        for idx, r in enumerate(self.reps):
            rr = self.reduce_mod_image(r)
            cc = 1 << idx
            for (p, pc, pcoord) in zip(self._reps_red, self._reps_pivots, self._reps_coords):
                if rr >> pc & 1:
                    rr ^= p
                    cc ^= pcoord
            if rr:
                self._reps_red.append(rr)
                self._reps_pivots.append(rr.bit_length() - 1)
                self._reps_coords.append(cc)

    def h_dim(self) -> int:
        return len(self.reps)

    def reduce_mod_image(self, v: int) -> int:
        for pr, pc in zip(self.image_reduced, self.image_pivots):
            if v >> pc & 1:
                v ^= pr
        return v

    def in_image(self, v: int) -> bool:
        return self.reduce_mod_image(v) == 0

    def class_coordinates(self, v: int) -> Optional[list[int]]:
        """Coordinates of [v] in the chosen homology basis, or None when v
        does not represent a class in their span."""
        w = self.reduce_mod_image(v)
        coords = 0
        for (p, pc, pcoord) in zip(self._reps_red, self._reps_pivots, self._reps_coords):
            if w >> pc & 1:
                w ^= p
                coords ^= pcoord
        if w:
            return None
        return [coords >> i & 1 for i in range(len(self.reps))]


@dataclass
class ChainRingComplex:
    """Finite free complex over F2[u]/(u^M) with a square-zero endomorphism."""

    M: int
    basis: list
    diff: dict  # (row index, col index) -> frozenset of u exponents

    def truncated(self, M2: int) -> "ChainRingComplex":
        diff = {}
        for k, p in self.diff.items():
            q = frozenset(e for e in p if e < M2)
            if q:
                diff[k] = q
        return ChainRingComplex(M=M2, basis=list(self.basis), diff=diff)

    def check_d_squared(self) -> bool:
        n = len(self.basis)
        cols: dict = {}
        for (i, j), p in self.diff.items():
            cols.setdefault(j, {})[i] = p
        for j in range(n):
            acc: dict = {}
            for i, p in cols.get(j, {}).items():
                for k, q in cols.get(i, {}).items():
                    prod = poly_mul(q, p, self.M)
                    if prod:
                        acc[k] = poly_add(acc.get(k, frozenset()), prod)
            if any(acc.values()):
                return False
        return True

    # -- F2 expansion ----------------------------------------------------

    def f2_dim(self) -> int:
        return len(self.basis) * self.M

    def _f2_index(self, b: int, k: int) -> int:
        return b * self.M + k

    def f2_columns(self) -> list[int]:
        n = len(self.basis)
        cols = [0] * (n * self.M)
        for (i, j), p in self.diff.items():
            for e in p:
                for k in range(self.M - e):
                    cols[self._f2_index(j, k)] |= 1 << self._f2_index(i, k + e)
        return cols

    def u_columns(self) -> list[int]:
        n = len(self.basis)
        cols = [0] * (n * self.M)
        for b in range(n):
            for k in range(self.M - 1):
                cols[self._f2_index(b, k)] = 1 << self._f2_index(b, k + 1)
        return cols

    def homology(self) -> F2Homology:
        return F2Homology(self.f2_columns(), self.f2_dim())

    def torsion_profile(self) -> TorsionProfile:
        H = self.homology()
        reps = H.reps
        h = len(reps)
        if h == 0:
            return TorsionProfile(0, (), self.M)
        ucols = self.u_columns()

        def u_act(v: int) -> int:
            out = 0
            i = 0
            while v:
                if v & 1:
                    out ^= ucols[i]
                v >>= 1
                i += 1
            return out

        # matrices of u^j acting on homology, ranks give block sizes
        def h_coords(v):
            return H.class_coordinates(v)

        ranks = []
        mats = []
        cur = [u_act(r) for r in reps]
        for j in range(1, self.M + 1):
            cols = []
            for v in cur:
                c = h_coords(v)
                if c is None:
                    raise HomologyError("u-action did not preserve cycles")
                bits = 0
                for idx, b in enumerate(c):
                    if b:
                        bits |= 1 << idx
                cols.append(bits)
            ranks.append(F2Matrix(cols, h).rank())
            cur = [u_act(v) for v in cur]
        ranks = [h] + ranks  # rank of u^0 .. u^M
        blocks = []
        for size in range(1, self.M + 1):
            count = ranks[size - 1] - 2 * ranks[size] + (ranks[size + 1] if size + 1 <= self.M else 0)
            for _ in range(max(0, count)):
                blocks.append(size)
        free = sum(1 for b in blocks if b >= self.M)
        torsion = tuple(sorted(b for b in blocks if b < self.M))
        return TorsionProfile(free, torsion, self.M)

    def quotient_dim(self, s: int) -> int:
        """F2 dimension of the homology of C tensor F2[u]/(u^s)."""
        return self.truncated(s).homology().h_dim()


# --- Floer-side summaries -------------------------------------------------------


def free_complex_from_pair(m, a: str, b: str, assignment=None, separated: bool = False):
    """CF(a, b) as a FreeComplex, over the diagram ring or over the separated
    ring with one indeterminate per basepoint."""
    from .ainfinity import FreeComplex
    from .coefficients import FREE, LINK, signature as make_signature
    from .domains import weight_monodromy

    if assignment is None:
        assignment = m.unique_solution()
    diagram = m.diagram
    src = m.system(a)
    tgt = m.system(b)
    basis = []
    index = {}
    for g in m.generators(a, b):
        for i in range(tgt.rank):
            for j in range(src.rank):
                index[(g, i, j)] = len(basis)
                basis.append((g, i, j))
    if separated:
        bp_names = [bp.name for bp in diagram.spec.basepoints if bp.btype != "gplus"]
        sep_sig = make_signature([(n, LINK) for n in bp_names], truncation=8)
        sig = sep_sig
    else:
        sig = diagram.sig
    diff = {}
    for (g, i, j) in basis:
        col = index[(g, i, j)]
        e = HomElt.basis(m.lsig, src, tgt, i, j)
        for y, dom in m.table((a, b), (g,)):
            w, rho = weight_monodromy(dom, [e], laurent_sig=m.lsig)
            if rho.scale(w).is_zero():
                continue
            cv = m.classify(dom)
            if cv.status == "zero":
                continue
            if cv.status == "symbol":
                if cv.sym not in assignment:
                    from .counting import UnresolvedCount

                    raise UnresolvedCount(f"count symbol {cv.sym} unresolved in CF({a},{b})")
                if not assignment[cv.sym]:
                    continue
            if separated:
                # recompute the weight with one variable per basepoint;
                # band-local pairs carry trivial local systems only
                if src.rank != 1 or tgt.rank != 1:
                    raise HomologyError("separated weights need trivial local systems")
                sepw = {}
                for rid, mult in enumerate(dom.mult):
                    if not mult:
                        continue
                    for bpn in diagram.regions[rid].basepoints:
                        if diagram.bp(bpn).btype == "gplus":
                            continue
                        sepw[bpn] = sepw.get(bpn, 0) + mult
                if any(v >= sig.truncation[sig.index(k)] for k, v in sepw.items()):
                    continue
                wm = monomial(sig, sepw)
                count_mono = rho.entries[0][0]
                if not count_mono:
                    continue
                if count_mono.terms != frozenset({(0,) * m.lsig.n}):
                    raise HomologyError("unexpected monodromy in a separated complex")
                for ii in range(tgt.rank):
                    for jj in range(src.rank):
                        row = index[(y, ii, jj)]
                        diff[(row, col)] = diff.get((row, col), zero(sig)) + wm
            else:
                val = rho.scale(w)
                if val.is_zero():
                    continue
                for ii in range(val.target.rank):
                    for jj in range(val.source.rank):
                        vv = val.entries[ii][jj]
                        if not vv:
                            continue
                        row = index[(y, ii, jj)]
                        diff[(row, col)] = diff.get((row, col), zero(sig)) + RingElt(sig, vv.terms)
    diff = {k: v for k, v in diff.items() if v}
    return FreeComplex(sig=sig, basis=basis, diff=diff)


def homology_summary(C, version: str, M: int = 16, marked_half: bool = False):
    """Summaries of a FreeComplex: "minus"/"infinity" profiles over the
    collapsed ring (with the 2M stability re-check), "hat"/"reduced"
    F2 dimensions after the quotient."""
    cx = C.collapse(M)
    if not cx.check_d_squared():
        raise HomologyError("collapsed differential does not square to zero")
    if version == "minus":
        prof = cx.torsion_profile()
        prof2 = C.collapse(2 * M).torsion_profile()
        orders2 = tuple(a for a in prof2.torsion_orders if a < M)
        if prof.free_rank != prof2.free_rank or not prof.is_pairable():
            raise HomologyError(f"unstable profile at truncation {M}: {prof} vs {prof2}")
        if tuple(a for a in prof.torsion_orders if a < M) != orders2:
            raise HomologyError(f"unstable torsion at truncation {M}")
        return prof
    if version == "infinity":
        prof = cx.torsion_profile()
        prof2 = C.collapse(2 * M).torsion_profile()
        if prof.free_rank != prof2.free_rank:
            raise HomologyError("unstable free rank; truncation too small")
        return prof.free_rank
    if version == "hat":
        return cx.quotient_dim(1 if marked_half else 2)
    if version == "reduced":
        return cx.quotient_dim(1)
    raise HomologyError(f"unknown version {version}")


def assign_gradings(m, a: str, b: str, assignment=None, p_bound: int = 8):
    """Relative Z-grading and Alexander Z/2 labels on the R-generators of
    CF(a, b), via small connecting domains; raises with a witness pair on
    inconsistency."""
    from fractions import Fraction

    from .domains import VertexSeq, enumerate_domains, weight_monodromy

    if assignment is None:
        assignment = m.unique_solution()
    diagram = m.diagram
    src = m.system(a)
    tgt = m.system(b)
    nodes = []
    for g in m.generators(a, b):
        for i in range(tgt.rank):
            for j in range(src.rank):
                nodes.append((g, i, j))
    edges = []

    def basis_gr_u(rank, k):
        return Fraction(k, 2) if rank == 2 else Fraction(0)

    # within-generator edges from the basis rule
    for g in m.generators(a, b):
        base = (g, 0, 0)
        for i in range(tgt.rank):
            for j in range(src.rank):
                if (i, j) == (0, 0):
                    continue
                dgr = -2 * (basis_gr_u(tgt.rank, i) - basis_gr_u(src.rank, j))
                edges.append(((g, i, j), base, dgr, (i + j) % 2))
    # domain edges
    gens = m.generators(a, b)
    for x in gens:
        for y in gens:
            vseq = VertexSeq(curves=(a, b), inputs=(x,), output=y)
            for dom in enumerate_domains(diagram, vseq, p_bound):
                if x == y and not any(dom.mult):
                    continue
                mu = dom.maslov()
                for i in range(tgt.rank):
                    for j in range(src.rank):
                        e = HomElt.basis(m.lsig, src, tgt, i, j)
                        w, rho = weight_monodromy(dom, [e], laurent_sig=m.lsig)
                        val = rho.scale(w)
                        for ii in range(tgt.rank):
                            for jj in range(src.rank):
                                vv = val.entries[ii][jj]
                                for mono in vv.terms:
                                    deg = Fraction(sum(mono), 2)
                                    par = sum(mono) % 2
                                    edges.append(
                                        ((x, i, j), (y, ii, jj), mu - 2 * deg, par)
                                    )
    labels = {}
    comps = []
    for start in nodes:
        if start in labels:
            continue
        comp = [start]
        labels[start] = (Fraction(0), 0)
        queue = [start]
        while queue:
            cur = queue.pop()
            for (p, q, dgr, par) in edges:
                for (s, t, dg, pp) in ((p, q, dgr, par), (q, p, -dgr, par)):
                    if s == cur and t not in labels:
                        z, z2 = labels[cur]
                        labels[t] = (z - dg, (z2 + pp) % 2)
                        comp.append(t)
                        queue.append(t)
        comps.append(comp)
    # consistency
    for (p, q, dgr, par) in edges:
        zp, z2p = labels[p]
        zq, z2q = labels[q]
        if zp - zq != dgr or (z2p - z2q) % 2 != par:
            raise HomologyError(f"inconsistent grading: {p} vs {q} over an edge")
    return {"labels": labels, "components": comps}


def canonical_element(m, a: str, b: str, kind: str, M: int = 8):
    """The canonical band class of a local (a, b)-pair: the top-grading,
    Z/2-homogeneous homology class that passes (non-orientable) or fails
    (mergesplit) the separated-variables image test."""
    from .ainfinity import FreeComplex

    sols = m.solutions if m.solutions is not None else m.solve()
    picked = []
    for assignment in sols:
        picked.append(_canonical_one(m, a, b, kind, assignment, M))
    first = picked[0]
    for other in picked[1:]:
        if other != first:
            raise HomologyError("canonical element differs across count resolutions")
    return first


def _canonical_one(m, a, b, kind, assignment, M):
    C = free_complex_from_pair(m, a, b, assignment)
    cx = C.collapse(M)
    grad = assign_gradings(m, a, b, assignment)
    labels = grad["labels"]
    n = len(C.basis)
    # graded F2 pieces: basis element (g,i,j) at u-power k has grade z - k
    grades = {}
    for bi, (g, i, j) in enumerate(C.basis):
        z, z2 = labels[(g, i, j)]
        for k in range(M):
            grades[bi * M + k] = (z - k, z2)
    H = cx.homology()
    # candidate classes: nonzero combinations of top-grade, fixed-z2 cycles
    reps = H.reps
    if not reps:
        raise HomologyError("acyclic pair has no canonical element")
    # a class is homogeneous of grade (z, z2) if it has a representative
    # supported there; the differential preserves the splitting, so project
    top = None
    values = set()
    for r in reps:
        for bit in range(cx.f2_dim()):
            if r >> bit & 1:
                values.add(grades[bit])
    # top grade among cycle supports
    zmax = max(z for (z, _) in values)
    candidates = []
    for z2 in (0, 1):
        piece = [bit for bit in range(cx.f2_dim()) if grades[bit] == (zmax, z2)]
        if not piece:
            continue
        # cycles in the piece, mod boundaries
        f2cols = cx.f2_columns()
        sub = []
        for bit in piece:
            v = f2cols[bit]
            sub.append((bit, v))
        # cycles: combinations of piece-bits killed by the differential
        from itertools import combinations

        piece_cycles = []
        n_piece = len(piece)
        for mask in range(1, 1 << n_piece):
            v = 0
            img = 0
            for t in range(n_piece):
                if mask >> t & 1:
                    v |= 1 << piece[t]
                    img ^= sub[t][1]
            if img == 0:
                piece_cycles.append(v)
        for v in piece_cycles:
            if not H.in_image(v):
                candidates.append((v, z2))
    sep = free_complex_from_pair(m, a, b, assignment, separated=True)
    hits = []
    for (v, z2) in candidates:
        in_img = _separated_image_test(m, C, sep, v, M)
        if (kind == "non-orientable" and in_img) or (kind == "mergesplit" and not in_img):
            hits.append((v, z2))
    # remove duplicates representing the same homology class
    unique = []
    for (v, z2) in hits:
        if not any(H.reduce_mod_image(v ^ w) == 0 for (w, _) in unique):
            unique.append((v, z2))
    if len(unique) != 1:
        raise HomologyError(f"canonical element is not unique: {len(unique)} candidates")
    v, z2 = unique[0]
    out = []
    for bit in range(cx.f2_dim()):
        if v >> bit & 1:
            out.append((C.basis[bit // M], bit % M))
    return tuple(sorted(out, key=repr))


def _separated_image_test(m, C, sep, target_vec: int, M: int) -> bool:
    """Is the collapsed class of some separated-ring cycle equal to the
    target modulo boundaries?  Solved as a bounded-degree F2 linear system."""
    bound = 6  # total doubled degree cap for separated chains
    names = sep.sig.names
    monos = _monomials_up_to(len(names), bound)
    sep_basis = [(bi, mm) for bi in range(len(sep.basis)) for mm in monos]
    sep_index = {bm: k for k, bm in enumerate(sep_basis)}
    n_cx = len(C.basis) * M

    def sep_diff_apply(vec_bits):
        out = 0
        for k, (bi, mm) in enumerate(sep_basis):
            if not (vec_bits >> k & 1):
                continue
            for (row, col), p in sep.diff.items():
                if col != bi:
                    continue
                for dm in p.terms:
                    m2 = tuple(x + y for x, y in zip(mm, dm))
                    if sum(m2) > bound:
                        continue
                    out ^= 1 << sep_index[(row, m2)]
        return out

    # collapse map: separated basis (bi, mm) -> u^{sum of collapse rates}
    diagram = m.diagram
    rate = {}
    for bp in diagram.spec.basepoints:
        if bp.btype == "gplus":
            continue
        w = diagram.bp_weight[bp.name]
        rate[bp.name] = sum(w.values())

    def collapse_vec(vec_bits):
        out = 0
        for k, (bi, mm) in enumerate(sep_basis):
            if not (vec_bits >> k & 1):
                continue
            e = sum(v * rate[names[i]] for i, v in enumerate(mm))
            if e < M:
                out ^= 1 << (bi * M + e)
        return out

    # unknowns: separated chain zeta, collapsed chain eta
    # equations: d_sep zeta = 0 and collapse(zeta) + d_u eta = target
    cols = []
    n_sep = len(sep_basis)
    f2cols = C.collapse(M).f2_columns()
    width = n_sep + n_cx
    rows_sep = len(sep_basis)
    for k in range(n_sep):
        zeta = 1 << k
        dz = sep_diff_apply(zeta)
        cz = collapse_vec(zeta)
        cols.append((dz, cz))
    eqs = []  # each: (bitmask over unknowns, rhs bit) in a stacked space
    # assemble the linear system column-wise and solve by elimination
    A_cols = []
    for k in range(n_sep):
        dz, cz = cols[k]
        A_cols.append((dz << n_cx) | cz)
    for k in range(n_cx):
        A_cols.append(f2cols[k])  # eta contributes d_u eta to the second block
    # feasibility of A x = rhs over F2: reduce rhs against the column span
    basis_rows = []
    for c in A_cols:
        cur = c
        for (p, pc) in basis_rows:
            if cur >> pc & 1:
                cur ^= p
        if cur:
            basis_rows.append((cur, cur.bit_length() - 1))
    cur = target_vec
    for (p, pc) in basis_rows:
        if cur >> pc & 1:
            cur ^= p
    return cur == 0


def _monomials_up_to(nvars: int, bound: int):
    if nvars == 0:
        return [()]
    out = []
    for head in range(bound + 1):
        for rest in _monomials_up_to(nvars - 1, bound - head):
            out.append((head,) + rest)
    return out
