"""Closed-form degrees-of-freedom regions for a three-node full-duplex link.

The network is a Z-topology: an uplink user transmits to a base station that
simultaneously transmits to a downlink user, so the only cross-link is the
base station's own transmitter coupling back into its receiver.  Every
quantity here is an exact rational; degrees of freedom in the continuous
model are genuinely non-integer and are never rounded.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .intervals import DirectionSet, DomainError, Rational, _frac


def _pos(x: Fraction) -> Fraction:
    """Positive part."""
    return x if x > 0 else Fraction(0)


class DegenerateGeometryError(ValueError):
    """A scattering-union measure vanished where a length ratio needs it."""


@dataclass(frozen=True)
class ArrayHalfLengths:
    """Carrier-wavelength-normalized array half-lengths (physical span 2L).

    An array of half-length L resolves direction cosines at resolution
    1/(2L), so a support of width w carries 2*L*w signal dimensions.
    """

    l_t1: Fraction
    l_r1: Fraction
    l_t2: Fraction
    l_r2: Fraction

    def __post_init__(self):
        for name in ("l_t1", "l_r1", "l_t2", "l_r2"):
            value = _frac(getattr(self, name))
            if value < 0:
                raise DomainError(f"array half-length {name} is negative")
            object.__setattr__(self, name, value)

    def scaled(self, factor: Rational) -> "ArrayHalfLengths":
        c = _frac(factor)
        return ArrayHalfLengths(
            self.l_t1 * c, self.l_r1 * c, self.l_t2 * c, self.l_r2 * c
        )


@dataclass(frozen=True)
class ScatteringGeometry:
    """Six effective scattering intervals plus the four array half-lengths.

    t11/r11 describe the uplink, t22/r22 the downlink, and t12/r12 the
    self-interference path from the base-station transmitter back into its
    own receiver.  The user devices are hidden from each other, so the
    remaining cross-sets are identically empty and not stored.
    """

    t11: DirectionSet
    r11: DirectionSet
    t22: DirectionSet
    r22: DirectionSet
    t12: DirectionSet
    r12: DirectionSet
    lengths: ArrayHalfLengths

    def scaled(self, factor: Rational) -> "ScatteringGeometry":
        return replace(self, lengths=self.lengths.scaled(factor))


@dataclass(frozen=True)
class CornerPoints:
    """The two corner points bracketing the sum-constraint facet."""

    p_prime: tuple[Fraction, Fraction]
    p_double_prime: tuple[Fraction, Fraction]

    def __post_init__(self):
        (d1p, d2p), (d1pp, d2pp) = self.p_prime, self.p_double_prime
        if min(d1p, d2p, d1pp, d2pp) < 0:
            raise ValueError("corner coordinates must be nonnegative")
        if d1p < d1pp or d2p > d2pp:
            raise ValueError("corners do not bracket the sum facet")


@dataclass(frozen=True)
class DofRegion:
    """Convex polygon of achievable (d1, d2) pairs in the first quadrant.

    The cap triple is authoritative for cap-form regions (everything the
    full-duplex bound produces); the vertex list is derived and is what
    plotting and exact polygon comparison use.  The half-duplex triangle
    with unequal axis caps is not cap-form, so its dsum_cap records the
    largest vertex coordinate sum instead.
    """

    d1_cap: Fraction
    d2_cap: Fraction
    dsum_cap: Fraction
    vertices: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        for x, y in self.vertices:
            if x < 0 or y < 0 or x > self.d1_cap or y > self.d2_cap:
                raise ValueError(f"vertex ({x}, {y}) violates the caps")
            if x + y > self.dsum_cap:
                raise ValueError(f"vertex ({x}, {y}) violates the sum cap")

    def contains(self, point: tuple[Rational, Rational]) -> bool:
        """Exact membership test on the convex hull of the vertices."""
        x, y = _frac(point[0]), _frac(point[1])
        verts = self.vertices
        if len(verts) == 1:
            return (x, y) == verts[0]
        if len(verts) == 2:
            (x0, y0), (x1, y1) = verts
            dx, dy = x1 - x0, y1 - y0
            if dx * (y - y0) != dy * (x - x0):
                return False
            t_num = dx * (x - x0) + dy * (y - y0)
            return 0 <= t_num <= dx * dx + dy * dy
        for i in range(len(verts)):
            ax, ay = verts[i]
            bx, by = verts[(i + 1) % len(verts)]
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < 0:
                return False
        return True

    def is_subset_of(self, other: "DofRegion") -> bool:
        return all(other.contains(v) for v in self.vertices)

    def area(self) -> Fraction:
        if len(self.vertices) < 3:
            return Fraction(0)
        twice = Fraction(0)
        for i in range(len(self.vertices)):
            ax, ay = self.vertices[i]
            bx, by = self.vertices[(i + 1) % len(self.vertices)]
            twice += ax * by - bx * ay
        return twice / 2


class RegionRelation(Enum):
    EQUAL = "equal"
    A_STRICT_SUBSET_B = "a_strict_subset_b"
    B_STRICT_SUBSET_A = "b_strict_subset_a"
    INCOMPARABLE = "incomparable"


def fd_caps(g: ScatteringGeometry) -> tuple[Fraction, Fraction, Fraction]:
    """Per-flow and sum dimension caps of the full-duplex region.

    Each flow is capped by the smaller end of its own link; the sum is
    capped by the interference-free slack on both base-station arrays plus
    the larger of the two backscatter loads.
    """
    L = g.lengths
    d1_max = 2 * min(L.l_t1 * g.t11.measure(), L.l_r1 * g.r11.measure())
    d2_max = 2 * min(L.l_t2 * g.t22.measure(), L.l_r2 * g.r22.measure())
    dsum_max = (
        2 * L.l_t2 * (g.t22 - g.t12).measure()
        + 2 * L.l_r1 * (g.r11 - g.r12).measure()
        + 2 * max(L.l_t2 * g.t12.measure(), L.l_r1 * g.r12.measure())
    )
    return d1_max, d2_max, dsum_max


def corner_points(g: ScatteringGeometry) -> CornerPoints:
    """Both corner points of the full-duplex region.

    p' gives flow 1 its full point-to-point dimension and flow 2 the most
    it can add on top; p'' is the mirror.  Each branch selects whether the
    transmit or the receive end of the maximized flow is the bottleneck
    (ties go to the first branch), and min{...}^+ clamps at zero.
    """
    L = g.lengths
    a = L.l_t1 * g.t11.measure()  # uplink transmit product
    b = L.l_r1 * g.r11.measure()  # uplink receive product
    c = L.l_t2 * g.t22.measure()  # downlink transmit product
    d = L.l_r2 * g.r22.measure()  # downlink receive product
    e = L.l_t2 * g.t12.measure()  # backscatter load at T2
    f = L.l_r1 * g.r12.measure()  # backscatter load at R1
    p = L.l_t2 * (g.t22 - g.t12).measure()
    q = L.l_t2 * (g.t22 & g.t12).measure()
    r = L.l_r1 * (g.r11 - g.r12).measure()
    s = L.l_r1 * (g.r11 & g.r12).measure()
    u = L.l_r1 * (g.r12 - g.r11).measure()
    v = L.l_t2 * (g.t12 - g.t22).measure()

    d1_prime = 2 * min(a, b)
    if a >= b:
        d_t2 = 2 * p + 2 * _pos(min(q, _pos(e - f) + u))
        d2_prime = min(d_t2, 2 * d)
    else:
        # a < b leaves slack at R1; the interference budget grows by the
        # receive-side slack not already covered by spare backscatter room.
        delta_t2 = 2 * p + 2 * min(q, e - _pos(a - (r + _pos(f - e))))
        d2_prime = min(delta_t2, 2 * d)

    d2_double = 2 * min(c, d)
    if d >= c:
        d_r1 = 2 * r + 2 * _pos(min(s, _pos(f - e) + v))
        d1_double = min(2 * a, d_r1)
    else:
        delta_r1 = 2 * r + 2 * min(s, f - _pos(d - (p + _pos(e - f))))
        d1_double = min(2 * a, delta_r1)

    return CornerPoints((d1_prime, d2_prime), (d1_double, d2_double))


def region_from_caps(
    d1_cap: Rational, d2_cap: Rational, dsum_cap: Rational
) -> DofRegion:
    """Polygon of {(d1, d2) >= 0 : d1 <= d1_cap, d2 <= d2_cap, sum <= dsum_cap}.

    Requires dsum_cap >= max(d1_cap, d2_cap), which every geometry-derived
    cap triple satisfies.
    """
    d1c, d2c, dsc = _frac(d1_cap), _frac(d2_cap), _frac(dsum_cap)
    if dsc < max(d1c, d2c):
        raise ValueError("sum cap below an individual cap")
    zero = Fraction(0)
    verts: list[tuple[Fraction, Fraction]] = [(zero, zero)]
    if d1c > 0:
        verts.append((d1c, zero))
    if dsc < d1c + d2c:
        for vert in ((d1c, dsc - d1c), (dsc - d2c, d2c)):
            if vert != verts[-1]:
                verts.append(vert)
    elif d1c > 0 and d2c > 0:
        verts.append((d1c, d2c))
    if d2c > 0 and (zero, d2c) != verts[-1]:
        verts.append((zero, d2c))
    return DofRegion(d1c, d2c, dsc, tuple(verts))


def fd_region(g: ScatteringGeometry) -> DofRegion:
    """Full-duplex region: the cap polygon of fd_caps."""
    return region_from_caps(*fd_caps(g))


def hd_region(g: ScatteringGeometry) -> DofRegion:
    """Half-duplex region: time sharing between the two flows.

    Sweeping the time-share parameter traces rectangles whose hull is the
    triangle on the two per-flow caps; there is no self-interference, so
    only the point-to-point caps matter.
    """
    d1c, d2c, _ = fd_caps(g)
    zero = Fraction(0)
    verts: list[tuple[Fraction, Fraction]] = [(zero, zero)]
    if d1c > 0:
        verts.append((d1c, zero))
    if d2c > 0:
        verts.append((zero, d2c))
    return DofRegion(d1c, d2c, max(d1c, d2c), tuple(verts))


def region_relate(a: DofRegion, b: DofRegion) -> RegionRelation:
    """Exact polygon comparison of two regions."""
    a_in_b = a.is_subset_of(b)
    b_in_a = b.is_subset_of(a)
    if a_in_b and b_in_a:
        return RegionRelation.EQUAL
    if a_in_b:
        return RegionRelation.A_STRICT_SUBSET_B
    if b_in_a:
        return RegionRelation.B_STRICT_SUBSET_A
    return RegionRelation.INCOMPARABLE


def is_rectangular(g: ScatteringGeometry) -> bool:
    """True when the sum cap is inactive and the region is a rectangle."""
    d1_max, d2_max, dsum_max = fd_caps(g)
    return dsum_max >= d1_max + d2_max


def genie_expand(g: ScatteringGeometry) -> ScatteringGeometry:
    """Overlap-completing expansion that lands on the original sum cap.

    Widens both backscatter intervals to their union with the matching
    forward interval and lengthens the two base-station arrays exactly
    enough to pay for the widening, so the larger of the two signaling
    dimensions of the result equals dsum_max of the input.
    """
    t_union = g.t22 | g.t12
    r_union = g.r11 | g.r12
    if not t_union or not r_union:
        raise DegenerateGeometryError(
            "expansion needs nonzero-measure scattering unions on both sides"
        )
    L = g.lengths
    l_t2 = L.l_t2 + L.l_r1 * (g.r11 - g.r12).measure() / t_union.measure()
    l_r1 = L.l_r1 + L.l_t2 * (g.t22 - g.t12).measure() / r_union.measure()
    return ScatteringGeometry(
        t11=g.t11,
        r11=r_union,
        t22=t_union,
        r22=g.r22,
        t12=t_union,
        r12=r_union,
        lengths=ArrayHalfLengths(L.l_t1, l_r1, l_t2, L.l_r2),
    )


def make_symmetric(
    length: Rational, fwd: DirectionSet, back: DirectionSet
) -> ScatteringGeometry:
    """All four arrays of one half-length; forward/backscatter supports shared."""
    l = _frac(length)
    return ScatteringGeometry(
        t11=fwd,
        r11=fwd,
        t22=fwd,
        r22=fwd,
        t12=back,
        r12=back,
        lengths=ArrayHalfLengths(l, l, l, l),
    )


def make_fully_spread(l_bs: Rational, l_usr: Rational) -> ScatteringGeometry:
    """Scatterers everywhere: every support is all of [-1, 1]."""
    full = DirectionSet.full()
    bs, usr = _frac(l_bs), _frac(l_usr)
    return ScatteringGeometry(
        t11=full,
        r11=full,
        t22=full,
        r22=full,
        t12=full,
        r12=full,
        lengths=ArrayHalfLengths(usr, bs, bs, usr),
    )
