"""Exact set algebra over finite unions of half-open subintervals of [-1, 1].

Direction sets live on the direction-cosine axis: a linear array resolves
elevation angles only through cos(theta), so every angular support collapses
to a subset of [-1, 1].  Endpoints are exact rationals throughout; the region
formulas downstream chain many set differences, and floating-point tolerance
stacking would corrupt corner-point equalities that must hold exactly.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Union

import mpmath

Rational = Union[Fraction, int, str, float]

LOWER = Fraction(-1)
UPPER = Fraction(1)


class DomainError(ValueError):
    """Endpoint or angle outside the admissible domain."""


class MalformedIntervalError(ValueError):
    """Interval specification with lo >= hi."""


def _frac(value: Rational) -> Fraction:
    return Fraction(value)


# Exact cosines at the handful of grid angles (in degrees) that show up in
# hand-written scenarios; everything else is correctly rounded.
_EXACT_COS = {
    Fraction(0): Fraction(1),
    Fraction(60): Fraction(1, 2),
    Fraction(90): Fraction(0),
    Fraction(120): Fraction(-1, 2),
    Fraction(180): Fraction(-1),
}


def cos_degrees(angle: Rational, digits: int = 12) -> Fraction:
    """Cosine of an angle in degrees, as an exact rational.

    Well-known exact values are returned exactly; any other angle is
    evaluated in high precision, correctly rounded to ``digits`` decimal
    places and rationalized.  The result is clamped into [-1, 1].
    """
    theta = _frac(angle)
    exact = _EXACT_COS.get(theta)
    if exact is not None:
        return exact
    with mpmath.workdps(digits + 25):
        value = mpmath.cos(
            mpmath.mpf(theta.numerator) / theta.denominator * mpmath.pi / 180
        )
        scaled = int(mpmath.nint(value * mpmath.mpf(10) ** digits))
    approx = Fraction(scaled, 10**digits)
    return min(max(approx, LOWER), UPPER)


class DirectionSet:
    """Canonical finite union of disjoint half-open intervals [lo, hi).

    Construction canonicalizes: intervals are sorted by lower endpoint and
    overlapping or touching intervals are merged, so equal sets compare
    equal structurally.  The empty set is an empty interval tuple.
    Instances are immutable and hashable; all operations are pure, so the
    type is safe to share across threads.
    """

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[tuple[Rational, Rational]] = ()):
        cleaned = []
        for lo, hi in intervals:
            lo, hi = _frac(lo), _frac(hi)
            if lo >= hi:
                raise MalformedIntervalError(
                    f"interval [{lo}, {hi}) has lo >= hi"
                )
            if lo < LOWER or hi > UPPER:
                raise DomainError(f"interval [{lo}, {hi}) leaves [-1, 1]")
            cleaned.append((lo, hi))
        cleaned.sort()
        merged: list[tuple[Fraction, Fraction]] = []
        for lo, hi in cleaned:
            if merged and lo <= merged[-1][1]:
                last_lo, last_hi = merged[-1]
                merged[-1] = (last_lo, max(last_hi, hi))
            else:
                merged.append((lo, hi))
        self.intervals: tuple[tuple[Fraction, Fraction], ...] = tuple(merged)

    @classmethod
    def empty(cls) -> "DirectionSet":
        return cls()

    @classmethod
    def full(cls) -> "DirectionSet":
        return cls([(LOWER, UPPER)])

    @classmethod
    def from_angles(
        cls,
        angle_pairs: Iterable[tuple[Rational, Rational]],
        digits: int = 12,
    ) -> "DirectionSet":
        """Map angular supports, in degrees on [0, 180], through the cosine.

        The cosine is decreasing on the elevation range, so an angle span
        [a, b] lands on the direction span [cos b, cos a].  Degenerate
        zero-width angle pairs map to a zero-measure image and vanish.
        """
        spans = []
        for a, b in angle_pairs:
            a, b = _frac(a), _frac(b)
            if a > b:
                raise MalformedIntervalError(
                    f"angle pair [{a}, {b}] has lo > hi"
                )
            if a < 0 or b > 180:
                raise DomainError(
                    f"angle pair [{a}, {b}] leaves [0, 180] degrees"
                )
            lo, hi = cos_degrees(b, digits), cos_degrees(a, digits)
            if lo < hi:
                spans.append((lo, hi))
        return cls(spans)

    # -- structural protocol -------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectionSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        body = ", ".join(f"({lo}, {hi})" for lo, hi in self.intervals)
        return f"DirectionSet([{body}])"

    def __contains__(self, x: Rational) -> bool:
        x = _frac(x)
        return any(lo <= x < hi for lo, hi in self.intervals)

    # -- set algebra ---------------------------------------------------------

    def measure(self) -> Fraction:
        """Total width, in [0, 2]."""
        return sum((hi - lo for lo, hi in self.intervals), Fraction(0))

    def union(self, other: "DirectionSet") -> "DirectionSet":
        return DirectionSet(self.intervals + other.intervals)

    def intersection(self, other: "DirectionSet") -> "DirectionSet":
        out = []
        a, b = self.intervals, other.intervals
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] <= b[j][1]:
                i += 1
            else:
                j += 1
        return DirectionSet(out)

    def difference(self, other: "DirectionSet") -> "DirectionSet":
        out = []
        for lo, hi in self.intervals:
            cursor = lo
            for blo, bhi in other.intervals:
                if bhi <= cursor:
                    continue
                if blo >= hi:
                    break
                if blo > cursor:
                    out.append((cursor, blo))
                cursor = max(cursor, bhi)
                if cursor >= hi:
                    break
            if cursor < hi:
                out.append((cursor, hi))
        return DirectionSet(out)

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def complement(self) -> "DirectionSet":
        """Complement within [-1, 1]."""
        return DirectionSet.full() - self

    def issubset(self, other: "DirectionSet") -> bool:
        return not self.difference(other)

    def components(self) -> tuple["DirectionSet", ...]:
        return tuple(DirectionSet([iv]) for iv in self.intervals)

    def take_from_left(self, amount: Rational) -> "DirectionSet":
        """Leftmost subset with exactly the requested measure."""
        need = _frac(amount)
        if need < 0:
            raise ValueError("requested measure is negative")
        out = []
        for lo, hi in self.intervals:
            if need == 0:
                break
            width = min(hi - lo, need)
            out.append((lo, lo + width))
            need -= width
        if need > 0:
            raise ValueError(
                f"set of measure {self.measure()} cannot supply {amount}"
            )
        return DirectionSet(out)


def refine(sets: Sequence[DirectionSet]) -> list[DirectionSet]:
    """Coarsest contiguous partition of union(sets) by membership pattern.

    Every atom is a single interval that is either contained in or disjoint
    from each input set; adjacent pieces with identical membership merge, so
    ``refine([a])`` returns a's connected components.  Atoms are pairwise
    disjoint and cover exactly the union of the inputs.
    """
    points = sorted({p for ds in sets for iv in ds.intervals for p in iv})
    runs: list[list] = []
    for lo, hi in zip(points, points[1:]):
        mid = (lo + hi) / 2
        signature = tuple(mid in ds for ds in sets)
        if not any(signature):
            continue
        if runs and runs[-1][1] == lo and runs[-1][2] == signature:
            runs[-1][1] = hi
        else:
            runs.append([lo, hi, signature])
    return [DirectionSet([(lo, hi)]) for lo, hi, _ in runs]
