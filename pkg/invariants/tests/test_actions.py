from django.core.exceptions import ValidationError
from django.test import SimpleTestCase

from invariants.actions import (
    CyclicAction, ExponentVector, compositions, face_orbits, require_free, t_slice,
    t_slice_orbits, validate_action, vertex_orbits,
)
from invariants.catalog import catalog, cycle, get_entry, octahedron
from invariants.complexes import SimplicialComplex, mask_of


class CyclicActionTests(SimpleTestCase):

    def test_not_a_permutation(self):
        with self.assertRaises(ValidationError) as ctx:
            CyclicAction.from_images(2, [1, 1, 2])
        self.assertEqual(ctx.exception.code, "not_a_permutation")

    def test_wrong_order(self):
        with self.assertRaises(ValidationError) as ctx:
            CyclicAction.from_images(3, [2, 1, 3])
        self.assertEqual(ctx.exception.code, "bad_order")

    def test_composite_order(self):
        with self.assertRaises(ValidationError):
            CyclicAction.from_images(4, [2, 3, 4, 1])

    def test_sign_of_rotated_edge(self):
        action = CyclicAction.from_images(3, [2, 3, 1])
        # g(1), g(3) = 2, 1 is out of order
        self.assertEqual(action.apply_mask(mask_of([0, 2])), mask_of([0, 1]))
        self.assertEqual(action.sign(mask_of([0, 2])), -1)
        self.assertEqual(action.sign(mask_of([0, 1])), 1)

    def test_power_cycles_back(self):
        action = get_entry("torus7").action
        self.assertEqual(action.power(7).images(), list(range(1, 8)))


class ValidationTests(SimpleTestCase):

    def test_catalog_metadata(self):
        for entry in catalog():
            with self.subTest(entry=entry.name):
                report = validate_action(entry.complex, entry.action)
                self.assertEqual((report.free, report.very_free), (entry.free, entry.very_free))

    def test_not_an_automorphism(self):
        action = CyclicAction.from_images(2, [2, 1, 3, 4, 5, 6])
        action_on_cycle = CyclicAction.from_images(2, [2, 1, 3, 4])
        K = SimplicialComplex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]], 4)
        with self.assertRaises(ValidationError) as ctx:
            validate_action(K, action_on_cycle)
        self.assertEqual(ctx.exception.code, "not_an_automorphism")
        with self.assertRaises(ValidationError) as ctx:
            validate_action(K, action)
        self.assertEqual(ctx.exception.code, "size_mismatch")

    def test_simplex_identity_is_not_free(self):
        entry = get_entry("simplex")
        with self.assertRaises(ValidationError) as ctx:
            require_free(entry.complex, entry.action)
        self.assertEqual(ctx.exception.code, "not_free")

    def test_reflection_fixes_an_edge(self):
        K = SimplicialComplex.from_facets([[1, 2], [2, 3], [3, 4], [4, 1]], 4)
        report = validate_action(K, CyclicAction.from_images(2, [2, 1, 4, 3]))
        self.assertFalse(report.free)
        self.assertIn(report.fixed_face, [(1, 2), (3, 4)])

    def test_trivial_group_acts_freely(self):
        K = octahedron()
        self.assertTrue(validate_action(K, CyclicAction.identity(K.n)).free)


class OrbitTests(SimpleTestCase):

    def test_vertex_orbits(self):
        entry = get_entry("c9")
        self.assertEqual(len(vertex_orbits(entry.complex, entry.action)), 3)
        self.assertEqual(len(vertex_orbits(get_entry("torus7").complex, get_entry("torus7").action)), 1)

    def test_face_orbits_are_free(self):
        entry = get_entry("oct3")
        decomposition = face_orbits(entry.complex, entry.action)
        sizes = decomposition.sizes()
        # ∅ is the only fixed face
        self.assertEqual(sizes.count(1), 1)
        self.assertEqual(sum(sizes), 27)

    def test_compositions(self):
        self.assertEqual(sorted(compositions(3, 2)), [(1, 2), (2, 1)])
        self.assertEqual(list(compositions(0, 0)), [()])
        self.assertEqual(list(compositions(2, 3)), [])


class TSliceTests(SimpleTestCase):

    def test_degree_zero(self):
        self.assertEqual(t_slice(octahedron(), 0), [ExponentVector((0,) * 6)])

    def test_octahedron_degree_two(self):
        self.assertEqual(len(t_slice(octahedron(), 2)), 18)

    def test_torus_degree_one_is_one_orbit(self):
        entry = get_entry("torus7")
        decomposition = t_slice_orbits(entry.complex, entry.action, 1)
        self.assertEqual(decomposition.sizes(), [7])

    def test_nine_gon_degree_two(self):
        entry = get_entry("c9")
        decomposition = t_slice_orbits(entry.complex, entry.action, 2)
        self.assertEqual(len(t_slice(cycle(9), 2)), 18)
        self.assertTrue(all(decomposition.free_flags))
