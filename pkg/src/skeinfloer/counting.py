"""Holomorphic-count bookkeeping: embedded-lift domains count one, the rest
become F2 unknowns that the A-infinity relations must pin down."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .coefficients import (
    HomElt,
    LocalSystem,
    RingElt,
    TRIVIAL,
    is_filtered,
)
from .diagram import CombDiagram
from .domains import (
    DomainInstance,
    VertexSeq,
    embedded_lift,
    enumerate_domains,
    laurent_signature,
    weight_monodromy,
)


class CountingError(Exception):
    pass


class UnresolvedCount(CountingError):
    pass


@dataclass(frozen=True)
class CountVar:
    """known(0), known(1), or an F2 symbol."""

    status: str  # "zero" | "one" | "symbol"
    sym: Optional[int] = None


# A symbolic CF element: maps a frozenset of symbol ids (an F2 monomial in
# the unknown counts) to {generator: HomElt}.
SymElement = dict


def _sym_add(a: SymElement, b: SymElement) -> SymElement:
    out = {k: dict(v) for k, v in a.items()}
    for mono, terms in b.items():
        tgt = out.setdefault(mono, {})
        for g, h in terms.items():
            tgt[g] = tgt[g] + h if g in tgt else h
        for g in [g for g, h in tgt.items() if h.is_zero()]:
            del tgt[g]
        if not tgt:
            del out[mono]
    return out


class MuStructure:
    """Composition tables of a compiled diagram over an ordered curve list.

    Entries are assembled on demand from domain enumeration and cached; the
    unknown counts live in ``self.symbols`` and consistent assignments in
    ``self.solutions`` once :meth:`solve` has run.
    """

    def __init__(self, diagram: CombDiagram, order=None, cutoff: int = 12, arity_max: int = 5):
        self.diagram = diagram
        self.order = list(order) if order is not None else list(diagram.curve_names)
        self.cutoff = cutoff
        self.arity_max = arity_max
        self.sig = diagram.sig
        self.lsig = laurent_signature(diagram)
        self.symbols: dict = {}  # key -> sym id
        self.symbol_domains: dict = {}  # sym id -> DomainInstance
        self._classify_cache: dict = {}
        self._table_cache: dict = {}
        self.solutions: Optional[list] = None
        self._theta_cache: dict = {}

    # -- basic structure --------------------------------------------------

    def system(self, curve: str) -> LocalSystem:
        return self.diagram.local_systems[curve]

    def check_order(self, curves) -> None:
        idx = [self.order.index(c) for c in curves]
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise CountingError(f"curve chain {curves} violates the diagram order")

    def generators(self, a: str, b: str):
        return self.diagram.generators(a, b)

    def zero_element(self) -> SymElement:
        return {}

    # -- classification -----------------------------------------------------

    def classify(self, dom: DomainInstance) -> CountVar:
        key = (dom.mult, dom.vseq)
        if key in self._classify_cache:
            return self._classify_cache[key]
        verdict = embedded_lift(dom)
        if verdict == "one":
            cv = CountVar("one")
        elif verdict == "zero":
            cv = CountVar("zero")
        else:
            sid = self.symbols.setdefault(key, len(self.symbols))
            self.symbol_domains[sid] = dom
            cv = CountVar("symbol", sid)
        self._classify_cache[key] = cv
        return cv

    # -- mu tables ------------------------------------------------------------

    def table(self, curves: tuple, inputs: tuple):
        """Candidate domains of mu_d on a generator tuple: (output, domain)
        pairs with P within the cutoff.  Counts are classified lazily, once a
        nonzero monodromy shows a domain can matter."""
        key = (curves, inputs)
        if key in self._table_cache:
            return self._table_cache[key]
        self.check_order(curves)
        d = len(inputs)
        mu_target = Fraction(2 - d)
        out = []
        for y in self.generators(curves[0], curves[-1]):
            vseq = VertexSeq(curves=tuple(curves), inputs=tuple(inputs), output=y)
            for dom in enumerate_domains(self.diagram, vseq, self.cutoff):
                if d == 1:
                    if all(m == 0 for m in dom.mult):
                        continue  # the constant domain is not a differential
                    if dom.maslov() != mu_target:
                        continue
                out.append((y, dom))
        self._table_cache[key] = out
        return out

    def mu_symbolic(self, curves: tuple, elements: list) -> SymElement:
        """mu_d of CF elements ({generator: HomElt}), symbolically in the
        unknown counts."""
        curves = tuple(curves)
        d = len(elements)
        acc: SymElement = {}
        for combo in itertools.product(*[sorted(e.items()) for e in elements]):
            gens = tuple(g for g, _ in combo)
            fs = [h for _, h in combo]
            for y, dom in self.table(curves, gens):
                w, rho = weight_monodromy(dom, fs, laurent_sig=self.lsig)
                val = rho.scale(w)
                if val.is_zero():
                    continue
                cv = self.classify(dom)
                if cv.status == "zero":
                    continue
                mono = frozenset() if cv.status == "one" else frozenset({cv.sym})
                acc = _sym_add(acc, {mono: {y: val}})
        return acc

    def resolve(self, sym_elt: SymElement, assignment: dict) -> dict:
        out: dict = {}
        for mono, terms in sym_elt.items():
            try:
                keep = all(assignment[s] for s in mono)
            except KeyError as e:
                raise UnresolvedCount(f"count symbol {e} is not pinned by any relation")
            if keep:
                for g, h in terms.items():
                    out[g] = out[g] + h if g in out else h
        return {g: h for g, h in out.items() if not h.is_zero()}

    def mu(self, curves, elements, assignment: Optional[dict] = None) -> dict:
        if assignment is None:
            assignment = self.unique_solution()
        return self.resolve(self.mu_symbolic(curves, elements), assignment)

    # -- solving ---------------------------------------------------------------

    def relation(self, curves: tuple, inputs_elements: list) -> SymElement:
        """The A-infinity relation sum for a chain of elements (must vanish)."""
        n = len(inputs_elements)
        acc: SymElement = {}
        for j in range(1, n + 1):  # inner arity
            for i in range(0, n - j + 1):
                inner_curves = curves[i : i + j + 1]
                inner = self.mu_symbolic(inner_curves, inputs_elements[i : i + j])
                # inner output feeds an outer mu of arity n - j + 1
                outer_curves = curves[: i + 1] + curves[i + j :]
                for mono, terms in inner.items():
                    elems = (
                        inputs_elements[:i]
                        + [terms]
                        + inputs_elements[i + j :]
                    )
                    outer = self.mu_symbolic(outer_curves, elems)
                    for mono2, terms2 in outer.items():
                        acc = _sym_add(acc, {mono | mono2: terms2})
        return acc

    def relation_equations(self, rel: SymElement):
        """Split a vanishing symbolic element into F2 polynomial equations,
        one per (generator, hom-basis entry, ring monomial)."""
        eqs: dict = {}
        for mono, terms in rel.items():
            for g, h in terms.items():
                for (i, j), m in h.terms():
                    eqs.setdefault((g, i, j, m), set())
                    eqs[(g, i, j, m)] ^= {mono}
        return [v for v in eqs.values() if v]

    def d_squared_relations(self):
        eqs = []
        for a, b in itertools.combinations(self.order, 2):
            try:
                gens = self.generators(a, b)
            except Exception:
                continue
            src = self.system(a)
            tgt = self.system(b)
            for g in gens:
                for i in range(tgt.rank):
                    for j in range(src.rank):
                        e = {g: HomElt.basis(self.lsig, src, tgt, i, j)}
                        rel = self.relation((a, b), [e])
                        eqs.extend(self.relation_equations(rel))
        return eqs

    def solve(self, extra_relations=None, max_symbols: int = 16):
        eqs = [set(eq) for eq in self.d_squared_relations()]
        if extra_relations:
            eqs.extend(set(eq) for eq in extra_relations)
        known: dict = {}
        alias: dict = {}  # symbol -> representative symbol

        def rep(s):
            while s in alias:
                s = alias[s]
            return s

        def simplify(eq):
            out = set()
            for mono in eq:
                vals = []
                keep = set()
                dead = False
                for s in mono:
                    s = rep(s)
                    if s in known:
                        if known[s] == 0:
                            dead = True
                            break
                    else:
                        keep.add(s)
                if dead:
                    continue
                out ^= {frozenset(keep)}
            return out

        changed = True
        while changed:
            changed = False
            new_eqs = []
            for eq in eqs:
                eq = simplify(eq)
                if not eq:
                    continue
                if eq == {frozenset()}:
                    raise CountingError(
                        "no consistent count assignment; enumeration or cutoff bug"
                    )
                if len(eq) == 1:
                    mono = next(iter(eq))
                    if len(mono) == 1:
                        known[next(iter(mono))] = 0
                        changed = True
                        continue
                if len(eq) == 2 and frozenset() in eq:
                    other = next(m for m in eq if m)
                    if len(other) == 1:
                        known[next(iter(other))] = 1
                        changed = True
                        continue
                if len(eq) == 2:
                    a, b = sorted(eq, key=sorted)
                    if len(a) == 1 and len(b) == 1:
                        sa, sb = next(iter(a)), next(iter(b))
                        if rep(sa) != rep(sb):
                            alias[rep(sb)] = rep(sa)
                            changed = True
                            continue
                new_eqs.append(eq)
            eqs = new_eqs
        free = sorted({s for eq in eqs for mono in eq for s in mono})
        if len(free) > max_symbols:
            raise CountingError(f"too many unresolved counts ({len(free)})")
        sols = []
        for bits in itertools.product([0, 1], repeat=len(free)):
            trial = dict(zip(free, bits))
            ok = True
            for eq in eqs:
                val = 0
                for mono in eq:
                    if all(trial[s] for s in mono):
                        val ^= 1
                if val:
                    ok = False
                    break
            if ok:
                sols.append(trial)
        if not sols:
            raise CountingError("no consistent count assignment; enumeration or cutoff bug")
        full = []
        for trial in sols:
            assignment = dict(trial)
            assignment.update(known)
            for s in list(alias):
                v = assignment.get(rep(s))
                if v is not None:
                    assignment[s] = v
            if assignment not in full:
                full.append(assignment)
        self.solutions = full
        return full

    def unique_solution(self) -> dict:
        if self.solutions is None:
            self.solve()
        return self.solutions[0]

    # -- convenience ------------------------------------------------------------

    def differential_matrix(self, a: str, b: str, assignment=None):
        """The mu_1 action on basis elements of CF(a, b), resolved."""
        if assignment is None:
            assignment = self.unique_solution()
        src = self.system(a)
        tgt = self.system(b)
        out = {}
        for g in self.generators(a, b):
            for i in range(tgt.rank):
                for j in range(src.rank):
                    e = {g: HomElt.basis(self.lsig, src, tgt, i, j)}
                    out[(g, i, j)] = self.mu((a, b), [e], assignment)
        return out

    def theta_plus_generator(self, a: str, b: str):
        """The top generator of a standard-translate pair: the source of an
        empty Maslov-1 bigon to the other generator."""
        key = (a, b)
        if key in self._theta_cache:
            return self._theta_cache[key]
        gens = self.generators(a, b)
        if len(gens) != 2:
            raise CountingError(f"({a}, {b}) is not a two-generator translate pair")
        top = None
        for x, y in [(gens[0], gens[1]), (gens[1], gens[0])]:
            vseq = VertexSeq(curves=(a, b), inputs=(x,), output=y)
            for dom in enumerate_domains(self.diagram, vseq, 0):
                if dom.p_total == 0 and dom.maslov() == 1 and any(dom.mult):
                    if embedded_lift(dom) == "one":
                        top = x
            if top is not None:
                break
        if top is None:
            raise CountingError(f"no empty bigon identifies the top generator of ({a}, {b})")
        self._theta_cache[key] = top
        return top


def build_mu(diagram: CombDiagram, order=None, arity_max: int = 5, cutoff: int = 12) -> MuStructure:
    m = MuStructure(diagram, order=order, cutoff=cutoff, arity_max=arity_max)
    m.solve()
    return m
