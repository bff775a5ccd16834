from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings
from hypothesis import given
from hypothesis import strategies as st

from hyperlab.setcore import (
    SetFamily,
    Subset,
    all_subsets,
    check_points,
    fin,
    fin_n,
    format_mask,
    intersection_closure,
    lift_minus,
    lift_plus,
    mask_of,
    minus_sets,
    plus_sets,
    points_of,
    union_closure,
)

from .strategies import families, ground_sizes, subsets

NOVT_CLOSED = SetFamily.of(3, [[1], [1, 2], [0, 1, 2]])
NOVT_OPENS = SetFamily.of(3, [[], [0], [0, 2], [0, 1, 2]])
NOVT1_OPENS = SetFamily.of(3, [[], [0], [2], [0, 2], [1, 2], [0, 1, 2]])


class MaskTests(SimpleTestCase):
    @given(st.sets(st.integers(min_value=0, max_value=15)))
    def test_points_round_trip(self, points):
        self.assertEqual(points_of(mask_of(points)), sorted(points))

    def test_format(self):
        self.assertEqual(format_mask(0b101), "{0,2}")
        self.assertEqual(format_mask(0), "{}")


class SubsetTests(SimpleTestCase):
    @given(st.data())
    def test_de_morgan(self, data):
        n = data.draw(ground_sizes())
        a, b = data.draw(subsets(n)), data.draw(subsets(n))
        self.assertEqual((a | b).complement(), a.complement() & b.complement())
        self.assertEqual((a & b).complement(), a.complement() | b.complement())

    @given(subsets())
    def test_difference_is_intersection_with_complement(self, a):
        full = Subset.full(a.ground_size)
        self.assertEqual(full - a, a.complement())
        self.assertTrue(a.issubset(full))

    def test_point_outside_ground(self):
        with self.assertRaises(ValidationError) as ctx:
            Subset.of(3, [3])
        self.assertEqual(ctx.exception.code, "out_of_range")

    def test_ground_mismatch(self):
        with self.assertRaises(ValidationError) as ctx:
            Subset.of(2, [0]) & Subset.of(3, [0])
        self.assertEqual(ctx.exception.code, "ground_mismatch")


class SetFamilyTests(SimpleTestCase):
    def test_members_are_sorted_and_unique(self):
        family = SetFamily(3, (4, 1, 4, 2))
        self.assertEqual(family.masks, (1, 2, 4))
        self.assertEqual(len(family), 3)

    def test_of_accepts_subsets_masks_and_point_lists(self):
        family = SetFamily.of(3, [Subset.of(3, [0]), 6, [0, 1]])
        self.assertEqual(family.points_lists(), [[0], [0, 1], [1, 2]])

    @given(st.data())
    def test_union_and_intersection(self, data):
        n = data.draw(ground_sizes())
        f, g = data.draw(families(n)), data.draw(families(n))
        self.assertTrue(f.intersection(g).issubset(f))
        self.assertTrue(f.issubset(f.union(g)))
        self.assertEqual(f.difference(g).intersection(g), SetFamily.empty(n))


class PlusMinusTests(SimpleTestCase):
    def test_plus_sets(self):
        self.assertEqual(plus_sets(Subset.full(3), NOVT_CLOSED), NOVT_CLOSED)
        self.assertEqual(plus_sets(Subset.of(3, [0, 2]), NOVT_CLOSED), SetFamily.empty(3))
        self.assertEqual(
            plus_sets(Subset.of(3, [1, 2]), NOVT_CLOSED).points_lists(), [[1], [1, 2]]
        )

    def test_minus_sets(self):
        self.assertEqual(minus_sets(Subset.empty(3), NOVT_CLOSED), SetFamily.empty(3))
        self.assertEqual(minus_sets(Subset.of(3, [0]), NOVT_CLOSED).points_lists(), [[0, 1, 2]])
        self.assertEqual(
            minus_sets(Subset.of(3, [2]), NOVT_CLOSED).points_lists(), [[1, 2], [0, 1, 2]]
        )

    @given(st.data())
    def test_plus_preserves_intersections(self, data):
        n = data.draw(ground_sizes())
        a, b, m = data.draw(subsets(n)), data.draw(subsets(n)), data.draw(families(n))
        self.assertEqual(plus_sets(a & b, m), plus_sets(a, m).intersection(plus_sets(b, m)))

    @given(st.data())
    def test_minus_preserves_unions(self, data):
        n = data.draw(ground_sizes())
        a, b, m = data.draw(subsets(n)), data.draw(subsets(n)), data.draw(families(n))
        self.assertEqual(minus_sets(a | b, m), minus_sets(a, m).union(minus_sets(b, m)))

    @given(st.data())
    def test_monotone(self, data):
        n = data.draw(ground_sizes())
        a, extra, m = data.draw(subsets(n)), data.draw(subsets(n)), data.draw(families(n))
        b = a | extra
        self.assertTrue(plus_sets(a, m).issubset(plus_sets(b, m)))
        self.assertTrue(minus_sets(a, m).issubset(minus_sets(b, m)))

    def test_lift_plus_collapses(self):
        lifted = lift_plus(NOVT_OPENS, NOVT_CLOSED)
        self.assertEqual(lifted, (SetFamily.empty(3), NOVT_CLOSED))

    def test_lift_plus_on_second_example(self):
        closed = SetFamily.of(3, [[0], [1], [0, 1], [1, 2], [0, 1, 2]])
        lifted = [f.points_lists() for f in lift_plus(NOVT1_OPENS, closed)]
        self.assertIn([[0]], lifted)
        self.assertIn([[1], [1, 2]], lifted)

    def test_lift_minus(self):
        lifted = {f.masks for f in lift_minus(NOVT_OPENS, NOVT_CLOSED)}
        expected = {
            (),
            NOVT_CLOSED.masks,
            SetFamily.of(3, [[0, 1, 2]]).masks,
            SetFamily.of(3, [[1, 2], [0, 1, 2]]).masks,
        }
        self.assertEqual(lifted, expected)
        self.assertEqual(lift_minus(SetFamily.of(3, [[1]]), NOVT_CLOSED), (NOVT_CLOSED,))


class FiniteFamilyTests(SimpleTestCase):
    def test_fin_n(self):
        self.assertEqual(fin_n(3, 1).points_lists(), [[0], [1], [2]])
        self.assertEqual(len(fin(3)), 7)
        self.assertEqual(len(fin_n(4, 2)), 10)

    def test_fin_n_rejects_zero(self):
        with self.assertRaises(ValidationError) as ctx:
            fin_n(3, 0)
        self.assertEqual(ctx.exception.code, "out_of_range")

    def test_all_subsets(self):
        self.assertEqual(len(all_subsets(3)), 8)

    def test_base_spaces_and_index_spaces_have_separate_limits(self):
        self.assertEqual(Subset(17, 1).ground_size, 17)
        for build in (check_points, fin, all_subsets):
            with self.subTest(build=build.__name__):
                with self.assertRaises(ValidationError) as ctx:
                    build(17)
                self.assertEqual(ctx.exception.code, "out_of_range")
        with self.assertRaises(ValidationError) as ctx:
            Subset(4097, 1)
        self.assertEqual(ctx.exception.code, "out_of_range")

    @override_settings(HYPERLAB_MAX_GROUND=2)
    def test_points_limit_is_a_setting(self):
        self.assertEqual(len(fin(2)), 3)
        with self.assertRaises(ValidationError):
            fin_n(3, 1)


class ClosureTests(SimpleTestCase):
    def test_intersection_closure(self):
        family = SetFamily.of(2, [[0], [1]])
        self.assertEqual(intersection_closure(family).points_lists(), [[], [0], [1]])
        self.assertEqual(intersection_closure(NOVT_OPENS), NOVT_OPENS)

    def test_union_closure(self):
        family = SetFamily.of(2, [[0], [1]])
        self.assertEqual(union_closure(family).points_lists(), [[0], [1], [0, 1]])
        self.assertEqual(union_closure(fin_n(3, 1)), fin(3))
        self.assertEqual(union_closure(NOVT1_OPENS), NOVT1_OPENS)

    def test_empty_family(self):
        with self.assertRaises(ValidationError) as ctx:
            intersection_closure(SetFamily.empty(3))
        self.assertEqual(ctx.exception.code, "empty_family")

    @given(families(min_size=1))
    def test_closures_are_closed_and_idempotent(self, family):
        meets = intersection_closure(family)
        joins = union_closure(family)
        self.assertTrue(family.issubset(meets) and family.issubset(joins))
        self.assertEqual(intersection_closure(meets), meets)
        self.assertEqual(union_closure(joins), joins)
        for u in meets.masks:
            for v in meets.masks:
                self.assertIn(u & v, meets)
