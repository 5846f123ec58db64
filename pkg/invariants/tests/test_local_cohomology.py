from django.test import SimpleTestCase, override_settings
from hypothesis import given, settings
from hypothesis import strategies as st

from invariants.catalog import cycle, get_entry, octahedron
from invariants.conf import Caps
from invariants.exceptions import ResourceCapExceeded
from invariants.local_cohomology import (
    check_caps, hom_dimension, hom_dimension_from_strands, local_cohomology_fine,
    local_cohomology_total, ring_dimension, strand_complex, strand_euler_consistent, strands,
    verify_refined_hochster,
)


class RingDimensionTests(SimpleTestCase):

    def test_octahedron(self):
        K = octahedron()
        self.assertEqual([ring_dimension(K, i) for i in range(3)], [1, 6, 18])

    def test_negative_degree(self):
        self.assertEqual(ring_dimension(octahedron(), -1), 0)


class StrandTests(SimpleTestCase):

    def test_strands_cover_the_hom_complex(self):
        for name, t, j in (("c9", 1, 1), ("c9", 2, 1), ("oct3", 2, 1), ("oct3", 3, 0)):
            K = get_entry(name).complex
            with self.subTest(entry=name, t=t, j=j):
                self.assertEqual(hom_dimension_from_strands(K, t, j), hom_dimension(K, t, j))

    def test_strand_complexes_square_to_zero(self):
        K = get_entry("oct3").complex
        for strand in strands(K, 2, 1):
            strand_complex(K, strand).assert_square_zero()

    @given(st.sampled_from([("c9", 1), ("oct3", 1), ("torus7", 1)]), st.data())
    @settings(max_examples=15, deadline=None)
    def test_euler_characteristic_per_strand(self, case, data):
        name, j = case
        K = get_entry(name).complex
        strand = data.draw(st.sampled_from(strands(K, 2, j)))
        self.assertTrue(strand_euler_consistent(K, strand))


class LocalCohomologyTests(SimpleTestCase):

    def test_sphere_vanishes_below_top(self):
        K = octahedron()
        for i in range(3):
            for j in range(2):
                self.assertEqual(local_cohomology_total(K, i, j), 0)

    def test_torus_degree_zero(self):
        entry = get_entry("torus7")
        self.assertEqual(
            local_cohomology_fine(entry.complex, entry.action, 2, 0), (2, 0, 0, 0, 0, 0, 0)
        )

    def test_circle_top_degree_zero(self):
        entry = get_entry("c9")
        self.assertEqual(local_cohomology_fine(entry.complex, entry.action, 2, 0), (1, 0, 0))

    def test_octahedron_characters_are_inverted(self):
        entry = get_entry("oct3")
        self.assertEqual(local_cohomology_fine(entry.complex, entry.action, 3, 0), (0, 1))

    def test_modular_prescreen_agrees(self):
        entry = get_entry("c9")
        self.assertEqual(
            local_cohomology_fine(entry.complex, entry.action, 2, 1, modular=True),
            local_cohomology_fine(entry.complex, entry.action, 2, 1, modular=False),
        )


class RefinedHochsterTests(SimpleTestCase):

    def test_octahedron_grid(self):
        entry = get_entry("oct3")
        report = verify_refined_hochster(entry.complex, entry.action, range(4), range(2))
        self.assertTrue(report.all_match)
        self.assertEqual(report.lhs(3, 1), (3, 3))

    def test_nine_gon_grid(self):
        entry = get_entry("c9")
        report = verify_refined_hochster(entry.complex, entry.action, range(3), range(3))
        self.assertTrue(report.all_match)

    def test_torus_grid(self):
        entry = get_entry("torus7")
        report = verify_refined_hochster(entry.complex, entry.action, range(4), range(2))
        self.assertTrue(report.all_match)
        self.assertEqual(report.lhs(2, 0), (2, 0, 0, 0, 0, 0, 0))

    def test_zero_strands_pass(self):
        entry = get_entry("triangle")
        report = verify_refined_hochster(entry.complex, entry.action, range(1), range(2))
        self.assertTrue(report.all_match)
        self.assertTrue(all(row.lhs == 0 for row in report.rows))


class CapTests(SimpleTestCase):

    def test_explicit_caps(self):
        with self.assertRaises(ResourceCapExceeded) as ctx:
            check_caps(cycle(9), 2, Caps(n=8, j=3))
        self.assertEqual(ctx.exception.code, "RESOURCE_CAP")

    @override_settings(ESR_CAPS={"n": 14, "j": 1})
    def test_caps_from_settings(self):
        with self.assertRaises(ResourceCapExceeded):
            local_cohomology_total(cycle(9), 1, 2)
