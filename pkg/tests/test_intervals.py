"""Unit and property tests for the direction-set algebra."""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fddof import (
    DirectionSet,
    DomainError,
    MalformedIntervalError,
    cos_degrees,
    refine,
)

GRID = 64


def ds(*pairs):
    return DirectionSet(pairs)


# -- strategies ---------------------------------------------------------------

@st.composite
def direction_sets(draw, max_fragments=3):
    k = draw(st.integers(0, max_fragments))
    if k == 0:
        return DirectionSet()
    points = draw(
        st.lists(
            st.integers(-GRID, GRID), min_size=2 * k, max_size=2 * k, unique=True
        )
    )
    points.sort()
    return DirectionSet(
        [
            (F(points[2 * i], GRID), F(points[2 * i + 1], GRID))
            for i in range(k)
        ]
    )


def bitmap(d: DirectionSet):
    """Brute-force rasterization on the 1/GRID cell grid over [-1, 1]."""
    return [(F(2 * j + 1, 2 * GRID) - 1) in d for j in range(2 * GRID)]


# -- construction -------------------------------------------------------------

class TestCanonicalize:
    def test_overlapping_intervals_merge(self):
        assert ds((0, F(1, 2)), (F(1, 4), F(3, 4))).intervals == ((F(0), F(3, 4)),)

    def test_touching_intervals_merge(self):
        assert ds((-1, 0), (0, 1)).intervals == ((F(-1), F(1)),)

    def test_empty_input(self):
        assert DirectionSet().intervals == ()
        assert not DirectionSet()

    def test_unsorted_input_is_sorted(self):
        assert ds((F(1, 2), 1), (-1, 0)).intervals == (
            (F(-1), F(0)),
            (F(1, 2), F(1)),
        )

    def test_endpoint_outside_domain(self):
        with pytest.raises(DomainError):
            ds((-2, 0))
        with pytest.raises(DomainError):
            ds((0, F(3, 2)))

    def test_zero_width_rejected(self):
        with pytest.raises(MalformedIntervalError):
            ds((0, 0))
        with pytest.raises(MalformedIntervalError):
            ds((F(1, 2), F(1, 4)))

    def test_string_and_float_endpoints(self):
        assert ds(("1/4", "3/4")).intervals == ((F(1, 4), F(3, 4)),)
        assert ds((0.25, 0.75)).intervals == ((F(1, 4), F(3, 4)),)

    @given(direction_sets())
    def test_reconstruction_is_identity(self, d):
        assert DirectionSet(d.intervals) == d


class TestFromAngles:
    def test_full_elevation_range(self):
        d = DirectionSet.from_angles([(0, 180)])
        assert d == DirectionSet.full()
        assert d.measure() == 2

    def test_degenerate_point_vanishes(self):
        assert DirectionSet.from_angles([(90, 90)]) == DirectionSet()

    def test_exact_special_values(self):
        d = DirectionSet.from_angles([(60, 90)])
        assert d.intervals == ((F(0), F(1, 2)),)
        assert d.measure() == F(1, 2)

    def test_orientation_reversal(self):
        assert DirectionSet.from_angles([(0, 60)]).intervals == ((F(1, 2), F(1)),)

    def test_angle_outside_range(self):
        with pytest.raises(DomainError):
            DirectionSet.from_angles([(-10, 0)])
        with pytest.raises(DomainError):
            DirectionSet.from_angles([(170, 190)])

    def test_descending_pair_rejected(self):
        with pytest.raises(MalformedIntervalError):
            DirectionSet.from_angles([(90, 60)])

    def test_generic_angle_correctly_rounded(self):
        approx = cos_degrees(45)
        assert abs(float(approx) - math.cos(math.radians(45))) < 1e-12
        assert approx.denominator <= 10**12

    def test_generic_angles_round_trip_through_sets(self):
        d = DirectionSet.from_angles([(30, 45)])
        (lo, hi), = d.intervals
        assert abs(float(lo) - math.cos(math.radians(45))) < 1e-12
        assert abs(float(hi) - math.cos(math.radians(30))) < 1e-12


# -- set operations -----------------------------------------------------------

class TestOperations:
    def test_intersection_example(self):
        assert ds((0, 1)) & ds((F(1, 2), 1)) == ds((F(1, 2), 1))

    def test_difference_example(self):
        assert ds((0, 1)) - ds((F(1, 4), F(1, 2))) == ds(
            (0, F(1, 4)), (F(1, 2), 1)
        )

    def test_union_example(self):
        assert ds((0, F(1, 4))) | ds((F(1, 4), 1)) == ds((0, 1))

    def test_measure_full(self):
        assert DirectionSet.full().measure() == 2

    def test_measure_empty(self):
        assert DirectionSet().measure() == 0

    def test_measure_additive(self):
        assert ds((0, F(1, 4)), (F(1, 2), 1)).measure() == F(3, 4)

    def test_contains(self):
        d = ds((0, F(1, 2)))
        assert F(0) in d
        assert F(1, 4) in d
        assert F(1, 2) not in d  # half-open

    def test_complement(self):
        assert ds((0, F(1, 2))).complement() == ds((-1, 0), (F(1, 2), 1))
        assert DirectionSet.full().complement() == DirectionSet()

    def test_take_from_left(self):
        d = ds((0, F(1, 4)), (F(1, 2), 1))
        taken = d.take_from_left(F(1, 2))
        assert taken == ds((0, F(1, 4)), (F(1, 2), F(3, 4)))
        assert d.take_from_left(0) == DirectionSet()
        with pytest.raises(ValueError):
            d.take_from_left(2)

    @given(direction_sets(), direction_sets())
    def test_bitmap_union(self, a, b):
        want = [x or y for x, y in zip(bitmap(a), bitmap(b))]
        assert bitmap(a | b) == want

    @given(direction_sets(), direction_sets())
    def test_bitmap_intersection(self, a, b):
        want = [x and y for x, y in zip(bitmap(a), bitmap(b))]
        assert bitmap(a & b) == want

    @given(direction_sets(), direction_sets())
    def test_bitmap_difference(self, a, b):
        want = [x and not y for x, y in zip(bitmap(a), bitmap(b))]
        assert bitmap(a - b) == want

    @given(direction_sets(), direction_sets())
    def test_inclusion_exclusion_exact(self, a, b):
        assert (a | b).measure() + (a & b).measure() == a.measure() + b.measure()

    @given(direction_sets(), direction_sets())
    def test_measure_monotone(self, a, b):
        inner = a & b
        assert inner.issubset(a)
        assert inner.measure() <= a.measure()

    @given(direction_sets(), direction_sets())
    def test_difference_recomposes(self, a, b):
        assert (a - b) | (a & b) == a

    @given(direction_sets(), st.integers(0, 4))
    def test_take_from_left_properties(self, a, quarters):
        amount = a.measure() * quarters / 4
        taken = a.take_from_left(amount)
        assert taken.measure() == amount
        assert taken.issubset(a)


# -- refinement ---------------------------------------------------------------

class TestRefine:
    def test_two_set_example(self):
        atoms = refine([ds((0, 1)), ds((F(1, 2), 1))])
        assert atoms == [ds((0, F(1, 2))), ds((F(1, 2), 1))]

    def test_single_set_gives_components(self):
        a = ds((0, F(1, 4)), (F(1, 2), 1))
        assert refine([a, DirectionSet()]) == list(a.components())

    def test_empty_family(self):
        assert refine([]) == []
        assert refine([DirectionSet()]) == []

    def test_interior_split(self):
        atoms = refine([ds((0, 1)), ds((F(1, 4), F(1, 2)))])
        assert atoms == [
            ds((0, F(1, 4))),
            ds((F(1, 4), F(1, 2))),
            ds((F(1, 2), 1)),
        ]

    @given(st.lists(direction_sets(), min_size=1, max_size=4))
    @settings(max_examples=150)
    def test_atoms_classify_each_input(self, sets):
        atoms = refine(sets)
        union = DirectionSet()
        for d in sets:
            union = union | d
        combined = DirectionSet()
        for atom in atoms:
            assert len(atom.intervals) == 1
            # disjoint from everything accumulated so far
            assert not (atom & combined)
            combined = combined | atom
            for d in sets:
                hit = atom & d
                assert hit == atom or not hit
        assert combined == union

    @given(st.lists(direction_sets(), min_size=1, max_size=3))
    def test_atoms_are_coarsest(self, sets):
        # adjacent atoms must differ in membership somewhere, otherwise the
        # partition would not be the coarsest one
        atoms = refine(sets)
        for left, right in zip(atoms, atoms[1:]):
            if left.intervals[0][1] != right.intervals[0][0]:
                continue
            left_sig = tuple(bool(left & d == left) for d in sets)
            right_sig = tuple(bool(right & d == right) for d in sets)
            assert left_sig != right_sig


def test_cosine_precision_is_configurable():
    coarse = cos_degrees(F(45, 2), digits=4)
    fine = cos_degrees(F(45, 2), digits=14)
    assert coarse.denominator <= 10**4
    assert fine.denominator <= 10**14
    assert abs(float(fine) - math.cos(math.radians(22.5))) < 1e-14
    assert coarse != fine
