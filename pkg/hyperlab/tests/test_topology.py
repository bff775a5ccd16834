from itertools import combinations

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase, override_settings
from hypothesis import given
from hypothesis import strategies as st

from hyperlab.setcore import SetFamily, Subset, all_subsets, fin_n, points_of
from hyperlab.topology import (
    FiniteTopology,
    SpaceMap,
    closed_family,
    closure_of,
    discrete,
    enumerate_topologies,
    enumerate_topologies_direct,
    from_base,
    from_subbase,
    identity_map,
    indiscrete,
    is_base_for,
    is_compact,
    is_continuous,
    is_dense,
    is_inversely_continuous,
    is_p_regular,
    is_regular,
    is_subbase_for,
    is_t0,
    is_t1,
    is_t2,
    minimal_base,
    minimal_refinement,
    product_topology,
    subbase_from_witnesses,
    subspace_topology,
    weight,
)

from .strategies import families, topologies, topologies_on

NOVT = FiniteTopology.from_open_sets(3, [[], [0], [0, 2], [0, 1, 2]])
NOVT1 = FiniteTopology.from_open_sets(3, [[], [0], [2], [0, 2], [1, 2], [0, 1, 2]])


class ConstructionTests(SimpleTestCase):
    def test_invalid_topology(self):
        with self.assertRaises(ValidationError) as ctx:
            FiniteTopology.from_open_sets(3, [[], [0], [1], [0, 1, 2]])
        self.assertEqual(ctx.exception.code, "invalid_topology")

    def test_from_subbase(self):
        self.assertEqual(from_subbase(3, SetFamily.empty(3)), indiscrete(3))
        self.assertEqual(from_subbase(3, fin_n(3, 1)), discrete(3))
        generated = from_subbase(3, SetFamily.of(3, [[0, 1], [1, 2]]))
        self.assertEqual(len(generated), 5)
        self.assertFalse(is_subbase_for(SetFamily.of(3, [[0, 1], [1, 2]]), discrete(3)))

    def test_from_base(self):
        self.assertEqual(from_base(3, SetFamily.of(3, [[0, 1, 2]])), indiscrete(3))
        self.assertEqual(from_base(2, SetFamily.of(2, [[0], [1]])), discrete(2))
        b_family = SetFamily.of(3, [[], [0], [2], [0, 2], [0, 1, 2]])
        self.assertEqual(from_base(3, b_family).opens, b_family)
        self.assertTrue(is_base_for(b_family, from_base(3, b_family)))

    def test_from_base_rejects_non_base(self):
        with self.assertRaises(ValidationError) as ctx:
            from_base(3, SetFamily.of(3, [[0, 1], [1, 2]]))
        self.assertEqual(ctx.exception.code, "invalid_base")
        with self.assertRaises(ValidationError):
            from_base(3, SetFamily.of(3, [[0]]))

    def test_from_subbase_is_the_coarsest_topology_containing_it(self):
        for n in (1, 2, 3):
            spaces = topologies_on(n)
            for chosen in range(1 << (1 << n)):
                subbase = SetFamily(n, tuple(m for m in range(1 << n) if chosen >> m & 1))
                generated = from_subbase(n, subbase)
                self.assertTrue(subbase.issubset(generated.opens))
                for space in spaces:
                    if subbase.issubset(space.opens):
                        self.assertTrue(generated.is_coarser_than(space))

    @given(topologies())
    def test_opens_are_their_own_base_and_subbase(self, topology):
        self.assertTrue(is_base_for(topology.opens, topology))
        self.assertTrue(is_subbase_for(topology.opens, topology))
        self.assertTrue(is_base_for(minimal_base(topology), topology))


class ClosureTests(SimpleTestCase):
    def test_closure(self):
        self.assertEqual(closure_of(NOVT, Subset.of(3, [0])), Subset.full(3))
        self.assertEqual(closure_of(NOVT, Subset.of(3, [1])), Subset.of(3, [1]))
        self.assertTrue(is_dense(NOVT, Subset.of(3, [0])))
        self.assertFalse(is_dense(discrete(3), Subset.of(3, [0, 1])))

    def test_closed_family(self):
        self.assertEqual(closed_family(NOVT).points_lists(), [[1], [1, 2], [0, 1, 2]])
        self.assertEqual(
            closed_family(NOVT1).points_lists(), [[0], [1], [0, 1], [1, 2], [0, 1, 2]]
        )
        self.assertEqual(closed_family(indiscrete(3)).points_lists(), [[0, 1, 2]])

    @given(topologies(), st.data())
    def test_closure_is_smallest_closed_superset(self, topology, data):
        mask = data.draw(st.integers(min_value=0, max_value=topology.full))
        closure = topology.closure(mask)
        self.assertTrue(topology.is_closed(closure))
        self.assertEqual(closure & mask, mask)
        for closed in topology.closed_masks():
            if closed & mask == mask:
                self.assertEqual(closure & closed, closure)


    @given(topologies(), st.data())
    def test_closure_axioms(self, topology, data):
        a = data.draw(st.integers(min_value=0, max_value=topology.full))
        b = a | data.draw(st.integers(min_value=0, max_value=topology.full))
        closure = topology.closure(a)
        self.assertEqual(topology.closure(0), 0)
        self.assertEqual(closure & a, a)
        self.assertEqual(topology.closure(closure), closure)
        self.assertEqual(closure & topology.closure(b), closure)
        self.assertTrue(topology.is_open(topology.full & ~closure))


class SeparationTests(SimpleTestCase):
    def test_second_example_space(self):
        self.assertTrue(is_t0(NOVT))
        self.assertFalse(is_t1(NOVT))

    def test_discrete_and_indiscrete(self):
        space = discrete(3)
        self.assertTrue(all(check(space) for check in (is_t0, is_t1, is_t2, is_regular)))
        self.assertFalse(is_t0(indiscrete(2)))
        self.assertTrue(is_regular(indiscrete(2)))

    def test_p_regular(self):
        self.assertTrue(is_p_regular(discrete(3), all_subsets(3)))
        self.assertFalse(is_p_regular(NOVT1, NOVT1.opens))

    def test_p_regular_needs_a_subbase(self):
        with self.assertRaises(ValidationError) as ctx:
            is_p_regular(discrete(2), SetFamily.of(2, [[0]]))
        self.assertEqual(ctx.exception.code, "not_subbase")

    @given(topologies())
    def test_opens_regularity_is_regularity(self, topology):
        self.assertEqual(is_p_regular(topology, topology.opens), is_regular(topology))

    def test_p_regular_subbase_forces_regularity(self):
        proper = 0
        for n in (1, 2, 3):
            for space in topologies_on(n):
                opens = space.opens.masks
                for size in range(1, len(opens) + 1):
                    for chosen in combinations(opens, size):
                        family = SetFamily(n, chosen)
                        if not is_subbase_for(family, space) or not is_p_regular(space, family):
                            continue
                        self.assertTrue(is_regular(space), (space, family))
                        proper += family != space.opens
        self.assertGreater(proper, 0)

    @given(topologies())
    def test_finite_t1_is_discrete(self, topology):
        self.assertEqual(is_t1(topology), topology == discrete(topology.ground_size))
        self.assertEqual(is_t2(topology), is_t1(topology))


class WeightTests(SimpleTestCase):
    def test_weight(self):
        self.assertEqual(weight(3, SetFamily.of(3, [[], [0, 1, 2]])), 1)
        self.assertEqual(weight(3, NOVT.opens), 3)
        self.assertEqual(weight(2, all_subsets(2)), 2)
        self.assertEqual(NOVT.weight(), 3)

    def test_refinement_may_need_every_member(self):
        singletons = fin_n(3, 1)
        self.assertEqual(minimal_refinement(3, singletons), singletons)
        self.assertEqual(minimal_refinement(2, SetFamily.of(2, [[]])), SetFamily.empty(2))

    @given(families(3, min_size=1))
    def test_refinement_refines(self, family):
        refinement = minimal_refinement(3, family)
        self.assertTrue(refinement.issubset(family))
        for u in family.masks:
            for x in points_of(u):
                self.assertTrue(any(v >> x & 1 and v & ~u == 0 for v in refinement.masks))

    @override_settings(HYPERLAB_WEIGHT_CAP=2)
    def test_weight_cap(self):
        self.assertIsNone(minimal_refinement(3, NOVT.opens))

    @given(topologies())
    def test_space_weight_is_the_minimal_refinement(self, topology):
        self.assertEqual(topology.weight(), weight(topology.ground_size, topology.opens))

    @given(topologies())
    def test_witness_subbase(self, topology):
        subbase = subbase_from_witnesses(topology, topology.opens)
        self.assertTrue(subbase.issubset(topology.opens))
        self.assertTrue(is_subbase_for(subbase, topology))


class ProductAndSubspaceTests(SimpleTestCase):
    def test_product(self):
        self.assertEqual(product_topology(NOVT, 1), NOVT)
        self.assertEqual(product_topology(discrete(2), 2), discrete(4))
        square = product_topology(NOVT, 2)
        self.assertEqual(square.ground_size, 9)
        self.assertEqual(len(square), 20)

    @override_settings(HYPERLAB_PRODUCT_LIMIT=8)
    def test_product_limit(self):
        with self.assertRaises(ValidationError) as ctx:
            product_topology(NOVT, 2)
        self.assertEqual(ctx.exception.code, "out_of_range")

    def test_subspace(self):
        self.assertEqual(subspace_topology(NOVT, Subset.full(3)).topology, NOVT)
        sub = subspace_topology(NOVT, Subset.of(3, [1, 2]))
        self.assertEqual(sub.points, (1, 2))
        self.assertEqual(sub.topology.opens.points_lists(), [[], [1], [0, 1]])
        self.assertEqual(sub.to_parent(0b10), 0b100)
        self.assertEqual(subspace_topology(NOVT, Subset.of(3, [2])).topology.ground_size, 1)


class MapTests(SimpleTestCase):
    def test_identity(self):
        f = identity_map(NOVT, NOVT)
        self.assertTrue(is_continuous(f))
        self.assertTrue(is_inversely_continuous(f))

    def test_discrete_to_indiscrete(self):
        f = identity_map(discrete(2), indiscrete(2))
        self.assertTrue(is_continuous(f))
        self.assertFalse(is_inversely_continuous(f))
        self.assertEqual(identity_map(indiscrete(2), discrete(2)).first_discontinuity(), 0b01)

    def test_inverse_of_non_injective(self):
        f = SpaceMap(discrete(2), indiscrete(1), (0, 0))
        with self.assertRaises(ValidationError) as ctx:
            is_inversely_continuous(f)
        self.assertEqual(ctx.exception.code, "not_injective")

    def test_map_must_be_total(self):
        with self.assertRaises(ValidationError):
            SpaceMap(discrete(2), discrete(2), (0,))

    @given(topologies())
    def test_finite_spaces_are_compact(self, topology):
        self.assertTrue(is_compact(topology))


class EnumerationTests(SimpleTestCase):
    def test_counts(self):
        self.assertEqual([len(list(enumerate_topologies(n))) for n in (1, 2, 3)], [1, 4, 29])
        self.assertEqual(sum(1 for _ in enumerate_topologies(4)), 355)

    def test_two_enumerations_agree(self):
        for n in (1, 2, 3):
            by_preorder = {t.opens.masks for t in enumerate_topologies(n)}
            direct = {t.opens.masks for t in enumerate_topologies_direct(n)}
            self.assertEqual(by_preorder, direct)

    def test_out_of_range(self):
        with self.assertRaises(ValidationError):
            list(enumerate_topologies(5))

    def test_first_two_point_topologies(self):
        spaces = [t.opens.points_lists() for t in enumerate_topologies(2)]
        self.assertEqual(spaces[0], [[], [0], [1], [0, 1]])
        self.assertEqual(spaces[1], [[], [0], [0, 1]])

    def test_all_enumerated_are_valid(self):
        for t in enumerate_topologies(3):
            FiniteTopology(t.ground_size, t.opens)
