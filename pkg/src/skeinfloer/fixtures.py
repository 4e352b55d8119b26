"""The diagram corpus: hand-encoded piecewise-linear curve data for every
local picture the verification suites drive.  Coordinates are convenient
rational representatives; the tests pin the invariants, not the geometry."""

from __future__ import annotations

from fractions import Fraction as F

from .diagram import BasepointSpec, CurveSpec, PLCircle, PLCurveSpec


def vline(a) -> PLCircle:
    a = F(a)
    return PLCircle(((a, F(0)), (a, F(1))))


def hline(b) -> PLCircle:
    b = F(b)
    return PLCircle(((F(0), b), (F(1), b)))


def sline(c, p, q) -> PLCircle:
    """Straight line of class (p, q) through (c, 0)."""
    c = F(c)
    return PLCircle(((c, F(0)), (c + p, F(q))))


def vtranslate(a, e, yc, depth, h) -> PLCircle:
    """Vertical translate at x = a+e with one poke crossing x = a."""
    a, e, yc, depth, h = F(a), F(e), F(yc), F(depth), F(h)
    return PLCircle(
        ((a + e, F(0)), (a + e, yc - h), (a - depth, yc), (a + e, yc + h), (a + e, F(1)))
    )


def htranslate(b, e, xc, depth, h) -> PLCircle:
    """Horizontal translate at y = b+e with one poke crossing y = b."""
    b, e, xc, depth, h = F(b), F(e), F(xc), F(depth), F(h)
    return PLCircle(
        ((F(0), b + e), (xc - h, b + e), (xc, b - depth), (xc + h, b + e), (F(1), b + e))
    )


def stranslate(c, p, q, e, tc, depth, h) -> PLCircle:
    """Translate (shifted right by e) of the (p, q)-line through (c, 0),
    with one horizontal poke crossing the original at parameter tc."""
    c, e, tc, depth, h = F(c), F(e), F(tc), F(depth), F(h)

    def at(t):
        return (c + e + p * t, q * t)

    tip = (c - depth + p * tc, q * tc)
    return PLCircle(((c + e, F(0)), at(tc - h), tip, at(tc + h), (c + e + p, F(q))))


def curve(name, circ, ls="trivial") -> CurveSpec:
    circles = circ if isinstance(circ, tuple) else (circ,)
    return CurveSpec(name=name, local_system=ls, circles=circles)


def bp(name, t, cls, x, y) -> BasepointSpec:
    return BasepointSpec(name=name, btype=t, cls=cls, pos=(F(x), F(y)))


# --- basic knot fixtures -------------------------------------------------------


def unknot() -> PLCurveSpec:
    return PLCurveSpec(
        curves=(curve("a", hline(F(7, 16))), curve("b", vline(F(1, 2)))),
        basepoints=(
            bp("w", "link", "u1", F(29, 64), F(1, 8)),
            bp("z", "link", "u1", F(37, 64), F(1, 8)),
        ),
    )


def trefoil() -> PLCurveSpec:
    beta = PLCircle(
        (
            (F(0), F(1, 4)),
            (F(5, 16), F(3, 4)),
            (F(7, 16), F(1, 4)),
            (F(9, 16), F(3, 4)),
            (F(1), F(5, 4)),
        )
    )
    return PLCurveSpec(
        curves=(curve("a", hline(F(1, 2))), curve("b", beta)),
        basepoints=(
            bp("w", "link", "u1", F(5, 16), F(9, 16)),
            bp("z", "link", "u1", F(7, 16), F(7, 16)),
        ),
    )


def two_generator_split() -> PLCurveSpec:
    """Two straight curves of classes (1,0) and (1,2) with the basepoint pair
    split across the two square regions; the differential vanishes."""
    return PLCurveSpec(
        curves=(curve("a", hline(F(5, 16))), curve("b", sline(F(1, 5), 1, 2))),
        basepoints=(
            bp("w", "link", "u1", F(1, 2), F(1, 8)),
            bp("z", "link", "u1", F(99, 128), F(1, 2)),
        ),
    )


def translate_pair_mixed() -> PLCurveSpec:
    """A curve and its standard translate with one basepoint inside the
    in-between annulus: two connecting domains with weights 1 and u."""
    return PLCurveSpec(
        curves=(
            curve("b", vline(F(1, 2))),
            curve("b'", vtranslate(F(1, 2), F(1, 32), F(1, 2), F(1, 32), F(1, 16))),
        ),
        basepoints=(
            bp("w", "link", "u1", F(33, 64), F(1, 8)),
            bp("z", "link", "u1", F(1, 8), F(1, 8)),
        ),
    )


def surgery_local() -> PLCurveSpec:
    """The local two-curve surgery triple: a horizontal curve, a slope-two
    curve, and the vertical curve carrying the rank-2 system, plus standard
    translates of all three.  One weight-U basepoint at the tail of the
    monodromy arc."""
    yg = F(1, 4)
    b0 = hline(F(1, 8))
    b2 = sline(F(11, 16), 1, 2)
    binf = vline(F(1, 2))
    # translate of the vertical curve pokes across it around the arc G
    binf_t = PLCircle(
        (
            (F(33, 64), F(0)),
            (F(33, 64), yg - F(1, 128)),
            (F(29, 64), yg + F(1, 128)),
            (F(33, 64), yg + F(3, 128)),
            (F(33, 64), F(1)),
        )
    )
    b0_t = htranslate(F(1, 8), F(1, 64), F(31, 32), F(1, 64), F(1, 128))
    b2_t = stranslate(F(11, 16), 1, 2, F(1, 64), F(3, 16), F(1, 64), F(1, 128))
    return PLCurveSpec(
        curves=(
            curve("b0", b0),
            curve("b2", b2),
            curve("binf", binf, ls="rank2"),
            curve("b0'", b0_t),
            curve("b2'", b2_t),
            curve("binf'", binf_t, ls="rank2"),
        ),
        basepoints=(
            bp("v", "gminus", "U", F(35, 64), yg),
            bp("gp", "gplus", "G+", F(27, 64), yg),
        ),
        arc_g=((F(35, 64), yg), (F(27, 64), yg)),
    )


def skein_local() -> PLCurveSpec:
    """The local resolution pair: two nearly-vertical curves flanking the
    ideal vertical, a horizontal curve, a slope-two curve, and standard
    translates of all four, over one pair of half-weight basepoints."""
    ba = vline(F(15, 32))
    bb = PLCircle(
        (
            (F(17, 32), F(0)),
            (F(17, 32), F(39, 64)),
            (F(29, 64), F(21, 32)),
            (F(17, 32), F(45, 64)),
            (F(17, 32), F(1)),
        )
    )
    b0 = hline(F(1, 8))
    b2 = sline(F(11, 16), 1, 2)
    ba_t = vtranslate(F(15, 32), F(1, 64), F(51, 64), F(1, 64), F(1, 128))
    bb_t = PLCircle(
        (
            (F(35, 64), F(0)),
            (F(35, 64), F(53, 64)),
            (F(33, 64), F(27, 32)),
            (F(35, 64), F(55, 64)),
            (F(35, 64), F(1)),
        )
    )
    b0_t = htranslate(F(1, 8), F(1, 64), F(31, 32), F(1, 64), F(1, 128))
    b2_t = stranslate(F(11, 16), 1, 2, F(1, 64), F(3, 16), F(1, 64), F(1, 128))
    return PLCurveSpec(
        curves=(
            curve("ba", ba),
            curve("bb", bb),
            curve("b0", b0),
            curve("b2", b2),
            curve("ba'", ba_t),
            curve("bb'", bb_t),
            curve("b0'", b0_t),
            curve("b2'", b2_t),
        ),
        basepoints=(
            bp("w", "link", "u1", F(27, 64), F(1, 4)),
            bp("z", "link", "u1", F(37, 64), F(1, 4)),
        ),
    )


REGISTRY = {
    "unknot": unknot,
    "trefoil": trefoil,
    "two-generator-split": two_generator_split,
    "translate-pair-mixed": translate_pair_mixed,
    "surgery-local": surgery_local,
    "skein-local": skein_local,
}


def get(name: str) -> PLCurveSpec:
    return REGISTRY[name]()


def sub_spec(spec: PLCurveSpec, names) -> PLCurveSpec:
    """Restriction of a fixture to a subset of its attaching curves, in the
    induced order; basepoints and the monodromy arc are kept."""
    keep = [c for c in spec.curves if c.name in set(names)]
    return PLCurveSpec(
        curves=tuple(keep), basepoints=spec.basepoints, arc_g=spec.arc_g, genus=spec.genus
    )
