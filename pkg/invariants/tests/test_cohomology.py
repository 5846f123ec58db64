from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from invariants.catalog import catalog, cycle, get_entry, octahedron
from invariants.cohomology import (
    betti, cochain_complex, costar_cohomology, hochster_rhs_direct, hochster_rhs_fine,
    hochster_rhs_total, isotypic_betti, isotypic_betti_orbit_sums, relative_cohomology_dims,
    unreduced_betti,
)
from invariants.complexes import SimplicialComplex, mask_of
from invariants.exceptions import ComplexAssertionError


class BettiTests(SimpleTestCase):

    def test_catalog_betti_numbers(self):
        for entry in catalog():
            with self.subTest(entry=entry.name):
                self.assertEqual(tuple(betti(entry.complex)), entry.betti)

    def test_empty_complex_has_reduced_class_in_degree_minus_one(self):
        self.assertEqual(betti(SimplicialComplex.empty(2)), [1])

    def test_unreduced_betti_of_circle(self):
        self.assertEqual(unreduced_betti(cycle(5), 0), 1)
        self.assertEqual(unreduced_betti(cycle(5), 1), 1)


class RelativeCohomologyTests(SimpleTestCase):

    def test_void_and_empty_give_reduced_cohomology(self):
        K = octahedron()
        reduced = betti(K)
        self.assertEqual(relative_cohomology_dims(K, SimplicialComplex.void(6)), reduced)
        self.assertEqual(relative_cohomology_dims(K, SimplicialComplex.empty(6)), reduced)

    def test_relative_to_itself_vanishes(self):
        K = octahedron()
        self.assertEqual(relative_cohomology_dims(K, K), [0, 0, 0, 0])

    def test_costar_of_vertex_in_sphere(self):
        self.assertEqual(costar_cohomology(octahedron(), mask_of([0])), (0, 0, 0, 1))

    def test_not_a_subcomplex(self):
        other = SimplicialComplex.from_facets([[1, 4]], 6)
        with self.assertRaises(ValidationError) as ctx:
            relative_cohomology_dims(octahedron(), other)
        self.assertEqual(ctx.exception.code, "not_subcomplex")


class CochainComplexTests(SimpleTestCase):

    def test_square_zero_and_equivariance(self):
        for entry in catalog():
            with self.subTest(entry=entry.name):
                complex_rep = cochain_complex(entry.complex, action=entry.action)
                complex_rep.assert_square_zero()
                complex_rep.assert_equivariant()

    def test_broken_differential_is_caught(self):
        complex_rep = cochain_complex(cycle(3))
        edge = mask_of([0, 1])
        complex_rep.coboundary[0] = {1: 1, 2: 1, 4: 1}
        complex_rep.coboundary[1] = {edge: 1, mask_of([0, 2]): 1}
        with self.assertRaises(ComplexAssertionError):
            complex_rep.assert_square_zero()


class IsotypicBettiTests(SimpleTestCase):

    def test_documented_tables(self):
        for entry in catalog():
            with self.subTest(entry=entry.name):
                self.assertEqual(isotypic_betti(entry.complex, entry.action).table, entry.betti_fine)

    def test_orbit_sum_route_agrees(self):
        for name in ("oct3", "c9", "torus7", "triangle"):
            entry = get_entry(name)
            with self.subTest(entry=name):
                self.assertEqual(
                    isotypic_betti_orbit_sums(entry.complex, entry.action).table,
                    isotypic_betti(entry.complex, entry.action).table,
                )

    def test_isotypic_completeness(self):
        for entry in catalog():
            table = isotypic_betti(entry.complex, entry.action)
            for i in range(-1, entry.complex.d):
                self.assertEqual(table.total(i), entry.betti[i + 1])

    def test_odd_p_top_class_is_invariant(self):
        table = isotypic_betti(get_entry("c9").complex, get_entry("c9").action)
        self.assertEqual(table.row(1), (1, 0, 0))


class HochsterRightHandSideTests(SimpleTestCase):

    def test_regular_representation_for_positive_j(self):
        entry = get_entry("torus7")
        value = hochster_rhs_fine(entry.complex, entry.action, 2, 1)
        self.assertEqual(len(set(value)), 1)
        self.assertEqual(sum(value), hochster_rhs_total(entry.complex, 2, 1))

    def test_j_zero_is_isotypic_betti(self):
        entry = get_entry("torus7")
        self.assertEqual(hochster_rhs_fine(entry.complex, entry.action, 2, 0), (2, 0, 0, 0, 0, 0, 0))

    def test_direct_route(self):
        for name, i, j in (("c9", 2, 1), ("oct3", 3, 1), ("c9", 2, 0)):
            entry = get_entry(name)
            with self.subTest(entry=name, i=i, j=j):
                self.assertEqual(
                    hochster_rhs_direct(entry.complex, entry.action, i, j),
                    hochster_rhs_fine(entry.complex, entry.action, i, j),
                )

    def test_needs_free_action(self):
        entry = get_entry("simplex")
        with self.assertRaises(ValidationError):
            hochster_rhs_fine(entry.complex, entry.action, 1, 1)
