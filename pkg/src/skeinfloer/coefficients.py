"""Exact arithmetic over truncated F2 power-series rings with half-integer
exponents, plus rank-2 local systems and their Hom spaces.

Exponents are stored *doubled* so that half-steps are exact integers:
a monomial is a tuple of doubled exponents, one per variable.  A variable
of kind "link" admits odd doubled exponents (i.e. genuine half powers);
"free" and "distinguished" variables admit even doubled exponents only.
The ground field is F2, so an element is just a set of monomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional


LINK = "link"
FREE = "free"
DISTINGUISHED = "distinguished"

_KINDS = (LINK, FREE, DISTINGUISHED)


class CoefficientError(Exception):
    pass


class SignatureMismatch(CoefficientError):
    pass


class LaurentWindowError(CoefficientError):
    pass


class ParityError(CoefficientError):
    pass


class ChainingError(CoefficientError):
    pass


@dataclass(frozen=True)
class RingSignature:
    """Ordered variables with per-variable doubled truncation and floor.

    ``truncation[i]`` is the smallest doubled exponent that gets dropped;
    ``floor[i]`` is the smallest allowed doubled exponent (0 except for a
    distinguished variable that is transiently allowed negative powers).
    """

    names: tuple[str, ...]
    kinds: tuple[str, ...]
    truncation: tuple[int, ...]
    floor: tuple[int, ...]

    def __post_init__(self):
        if not (len(self.names) == len(self.kinds) == len(self.truncation) == len(self.floor)):
            raise CoefficientError("signature fields must have equal length")
        for k in self.kinds:
            if k not in _KINDS:
                raise CoefficientError(f"unknown variable kind {k!r}")
        if sum(1 for k in self.kinds if k == DISTINGUISHED) > 1:
            raise CoefficientError("at most one distinguished variable")
        for i, (f, t) in enumerate(zip(self.floor, self.truncation)):
            if f >= t:
                raise CoefficientError(f"floor >= truncation for variable {self.names[i]}")
            if f < 0 and self.kinds[i] != DISTINGUISHED:
                raise CoefficientError("negative floor only on the distinguished variable")

    @property
    def n(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def distinguished_index(self) -> Optional[int]:
        for i, k in enumerate(self.kinds):
            if k == DISTINGUISHED:
                return i
        return None

    def exponent_ok(self, i: int, d: int) -> bool:
        """Is doubled exponent d legal for variable i (ignoring truncation)?"""
        if d < self.floor[i]:
            return False
        if d % 2 != 0 and self.kinds[i] != LINK:
            return False
        return True

    def with_laurent_floor(self, name: str, floor: int) -> "RingSignature":
        i = self.index(name)
        floors = list(self.floor)
        floors[i] = floor
        return RingSignature(self.names, self.kinds, self.truncation, tuple(floors))

    def with_truncation(self, trunc: int) -> "RingSignature":
        return RingSignature(self.names, self.kinds, (trunc,) * self.n, self.floor)

    def extended(self, name: str, kind: str, truncation: Optional[int] = None) -> "RingSignature":
        if name in self.names:
            raise CoefficientError(f"variable name collision: {name}")
        t = truncation if truncation is not None else (max(self.truncation) if self.truncation else 16)
        return RingSignature(
            self.names + (name,), self.kinds + (kind,), self.truncation + (t,), self.floor + (0,)
        )


def signature(variables: Iterable[tuple[str, str]], truncation: int = 16) -> RingSignature:
    """Build a signature from (name, kind) pairs with a uniform truncation."""
    vs = tuple(variables)
    names = tuple(v[0] for v in vs)
    kinds = tuple(v[1] for v in vs)
    return RingSignature(names, kinds, (truncation,) * len(vs), (0,) * len(vs))


@dataclass(frozen=True)
class RingElt:
    """An F2 combination of monomials; ``terms`` holds doubled-exponent tuples."""

    sig: RingSignature
    terms: frozenset

    def __post_init__(self):
        for m in self.terms:
            if len(m) != self.sig.n:
                raise CoefficientError("monomial length does not match signature")
            for i, d in enumerate(m):
                if not self.sig.exponent_ok(i, d):
                    if d < self.sig.floor[i]:
                        raise LaurentWindowError(
                            f"doubled exponent {d} below floor for {self.sig.names[i]}"
                        )
                    raise ParityError(
                        f"odd doubled exponent {d} on non-link variable {self.sig.names[i]}"
                    )

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __add__(self, other: "RingElt") -> "RingElt":
        if self.sig != other.sig:
            raise SignatureMismatch("cannot add elements of different rings")
        return RingElt(self.sig, self.terms ^ other.terms)

    def __mul__(self, other: "RingElt") -> "RingElt":
        if self.sig != other.sig:
            raise SignatureMismatch("cannot multiply elements of different rings")
        sig = self.sig
        acc = set()
        for a in self.terms:
            for b in other.terms:
                m = tuple(x + y for x, y in zip(a, b))
                if any(d >= sig.truncation[i] for i, d in enumerate(m)):
                    continue
                for i, d in enumerate(m):
                    if d < sig.floor[i]:
                        raise LaurentWindowError(
                            f"product leaves Laurent window on {sig.names[i]}"
                        )
                acc ^= {m}
        return RingElt(sig, frozenset(acc))

    def gr_u(self) -> Fraction:
        """min over monomials of the distinguished-variable degree; see re_gru."""
        if not self.terms:
            raise CoefficientError("gr_U undefined for 0")
        i = self.sig.distinguished_index()
        if i is None:
            return Fraction(0)
        return Fraction(min(m[i] for m in self.terms), 2)

    def monomials(self):
        return sorted(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for m in self.monomials():
            factors = []
            for name, d in zip(self.sig.names, m):
                if d == 0:
                    continue
                if d % 2 == 0:
                    factors.append(name if d == 2 else f"{name}^{d // 2}")
                else:
                    factors.append(f"{name}^{d}/2")
            bits.append("*".join(factors) if factors else "1")
        return " + ".join(bits)


def zero(sig: RingSignature) -> RingElt:
    return RingElt(sig, frozenset())


def one(sig: RingSignature) -> RingElt:
    return RingElt(sig, frozenset({(0,) * sig.n}))


def monomial(sig: RingSignature, doubled: dict[str, int]) -> RingElt:
    """Monomial from doubled exponents keyed by variable name."""
    m = [0] * sig.n
    for name, d in doubled.items():
        m[sig.index(name)] = d
    m = tuple(m)
    if any(d >= sig.truncation[i] for i, d in enumerate(m)):
        return zero(sig)
    return RingElt(sig, frozenset({m}))


def re_arith(op: str, a: RingElt, b: RingElt) -> RingElt:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise CoefficientError(f"unknown op {op!r}")


def re_specialize(a: RingElt, target: RingSignature, atoms_per_doubled: dict[str, int]) -> RingElt:
    """Substitute every variable by a power of the single collapse variable.

    ``atoms_per_doubled[name] = k`` sends one *doubled* unit of ``name`` to
    k doubled units of the collapse variable.  With k=1 everywhere this is
    the standard collapse u = U_i^{1/2} = U^{1/2}: the u-exponent of a
    monomial is the sum of its doubled exponents.
    """
    if target.n != 1:
        raise CoefficientError("specialization target must have one variable")
    acc = set()
    for m in a.terms:
        d = 0
        for i, e in enumerate(m):
            k = atoms_per_doubled[a.sig.names[i]]
            if k <= 0:
                raise ParityError("collapse exponent must be positive")
            d += e * k
        if not target.exponent_ok(0, d):
            raise ParityError("parity violation under specialization")
        if d >= target.truncation[0]:
            continue
        acc ^= {(d,)}
    return RingElt(target, frozenset(acc))


def collapse_signature(truncation: int = 16) -> RingSignature:
    """Single collapse variable u with u^2 = U; doubled exponent d is u^d."""
    return signature([("u", LINK)], truncation)


def collapse(a: RingElt, truncation: Optional[int] = None) -> RingElt:
    t = truncation if truncation is not None else max(a.sig.truncation, default=16)
    return re_specialize(a, collapse_signature(t), {n: 1 for n in a.sig.names})


# ---------------------------------------------------------------------------
# Local systems and Hom elements


@dataclass(frozen=True)
class LocalSystem:
    """Trivial (rank 1) or the standard rank-2 system with monodromy phi."""

    rank: int

    def __post_init__(self):
        if self.rank not in (1, 2):
            raise CoefficientError("local systems have rank 1 or 2")


TRIVIAL = LocalSystem(1)
RANK2 = LocalSystem(2)


def _basis_gr(rank: int, i: int) -> Fraction:
    # gr_U e_0 = 0, gr_U e_1 = 1/2 on the rank-2 system; the trivial basis is 0.
    if rank == 2:
        return Fraction(i, 2)
    return Fraction(0)


@dataclass(frozen=True)
class HomElt:
    """Morphism source -> target with RingElt matrix entries.

    ``entries[(i, j)]`` is the coefficient of e_i e_j^* (target basis i,
    source basis j); rank-1 systems use the single basis index 0.
    """

    sig: RingSignature
    source: LocalSystem
    target: LocalSystem
    entries: tuple  # tuple of tuples, entries[i][j]: RingElt

    @staticmethod
    def build(sig, source, target, table: dict[tuple[int, int], RingElt]) -> "HomElt":
        rows = []
        for i in range(target.rank):
            row = []
            for j in range(source.rank):
                row.append(table.get((i, j), zero(sig)))
            rows.append(tuple(row))
        return HomElt(sig, source, target, tuple(rows))

    @staticmethod
    def zero(sig, source, target) -> "HomElt":
        return HomElt.build(sig, source, target, {})

    @staticmethod
    def identity(sig, system: LocalSystem) -> "HomElt":
        return HomElt.build(sig, system, system, {(i, i): one(sig) for i in range(system.rank)})

    @staticmethod
    def basis(sig, source, target, i: int, j: int) -> "HomElt":
        return HomElt.build(sig, source, target, {(i, j): one(sig)})

    def is_zero(self) -> bool:
        return all(not e for row in self.entries for e in row)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "HomElt") -> "HomElt":
        if (self.sig, self.source, self.target) != (other.sig, other.source, other.target):
            raise SignatureMismatch("Hom elements live in different spaces")
        rows = tuple(
            tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.entries, other.entries)
        )
        return HomElt(self.sig, self.source, self.target, rows)

    def compose(self, other: "HomElt") -> "HomElt":
        """self after other: (self . other): other.source -> self.target."""
        if other.target != self.source:
            raise ChainingError("Hom composition mismatch")
        if other.sig != self.sig:
            raise SignatureMismatch("Hom composition across rings")
        table = {}
        for i in range(self.target.rank):
            for j in range(other.source.rank):
                acc = zero(self.sig)
                for k in range(self.source.rank):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                table[(i, j)] = acc
        return HomElt.build(self.sig, other.source, self.target, table)

    def scale(self, r: RingElt) -> "HomElt":
        rows = tuple(tuple(r * e for e in row) for row in self.entries)
        return HomElt(self.sig, self.source, self.target, rows)

    def gr_u(self) -> Fraction:
        """Minimum of gr_U over nonzero summands; undefined for 0."""
        if self.is_zero():
            raise CoefficientError("gr_U undefined for 0")
        vals = []
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e:
                    basis = _basis_gr(self.target.rank, i) - _basis_gr(self.source.rank, j)
                    vals.append(e.gr_u() + basis)
        return min(vals)

    def terms(self):
        """Yield ((i, j), monomial) pairs of nonzero summands."""
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                for m in e.terms:
                    yield (i, j), m

    def map_entries(self, fn) -> "HomElt":
        rows = tuple(tuple(fn(e) for e in row) for row in self.entries)
        return HomElt(self.sig, self.source, self.target, rows)

    def __repr__(self):
        bits = []
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if not e:
                    continue
                if self.source.rank == 1 and self.target.rank == 1:
                    label = ""
                elif self.source.rank == 1:
                    label = f"e{i}"
                elif self.target.rank == 1:
                    label = f"e{j}*"
                else:
                    label = f"e{i}e{j}*"
                bits.append(f"({e}){label}" if label else f"({e})")
        return " + ".join(bits) if bits else "0"


def re_gru(a) -> Fraction:
    """gr_U of a RingElt or HomElt; raises on 0."""
    return a.gr_u()


def phi_power(sig: RingSignature, k: int) -> HomElt:
    """phi^k on the rank-2 system, phi = e_1 e_0^* + U e_0 e_1^*.

    phi^2 = U Id, so phi^k = U^{floor(k/2)} phi^(k mod 2); negative k needs
    the Laurent window on the distinguished variable to be open.
    """
    di = sig.distinguished_index()
    if di is None:
        raise CoefficientError("phi needs a distinguished variable")
    uname = sig.names[di]

    def upow(n: int) -> RingElt:
        if n >= 0 and 2 * n >= sig.truncation[di]:
            return zero(sig)
        if 2 * n < sig.floor[di]:
            raise LaurentWindowError(f"phi power needs {uname}^{n}, below the Laurent floor")
        return monomial(sig, {uname: 2 * n})

    q, r = divmod(k, 2)  # k = 2q + r, r in {0,1}
    if r == 0:
        return HomElt.build(sig, RANK2, RANK2, {(0, 0): upow(q), (1, 1): upow(q)})
    return HomElt.build(sig, RANK2, RANK2, {(1, 0): upow(q), (0, 1): upow(q + 1)})


def compose_monodromy(sig: RingSignature, crossings: list[int], fs: list[HomElt]) -> HomElt:
    """rho(p_0,...,p_d)(f_1 (x) ... (x) f_d).

    ``crossings[j]`` is the signed G-crossing count of the boundary path on
    object j (j = 0..d); ``fs`` lists f_1..f_d in order.  Object j sits
    between f_j and f_{j+1}; rank-1 objects must have crossing count 0.
    """
    d = len(fs)
    if len(crossings) != d + 1:
        raise ChainingError("need one crossing count per object")
    for j in range(d - 1):
        if fs[j].target != fs[j + 1].source:
            raise ChainingError("monodromy factors do not chain")

    def phi_on(system: LocalSystem, c: int) -> HomElt:
        if system.rank == 1:
            if c != 0:
                raise ChainingError("G-crossings on a trivial local system")
            return HomElt.identity(sig, system)
        return phi_power(sig, c)

    acc = phi_on(fs[0].source, crossings[0])
    for j in range(d):
        acc = fs[j].compose(acc)
        acc = phi_on(fs[j].target, crossings[j + 1]).compose(acc)
    return acc


def is_filtered(x: HomElt, carries_theta_plus: bool) -> bool:
    """Positivity test of the filtered subcomplex.

    Only e_0 e_1^* x on a theta^+ generator between two rank-2 systems is
    ruled out; everything with a rank-1 endpoint is filtered.
    """
    if x.source.rank == 1 or x.target.rank == 1:
        return True
    if not carries_theta_plus:
        return True
    if x.is_zero():
        return True
    return x.gr_u() >= 0
