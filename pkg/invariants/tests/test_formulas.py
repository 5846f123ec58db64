from django.test import SimpleTestCase
from hypothesis import given
from hypothesis import strategies as st
from sympy import QQ

from invariants.catalog import get_entry
from invariants.cohomology import betti, isotypic_betti
from invariants.formulas import (
    adin_bound, buchsbaum_bound, congruence_holds, cs_schenzel_formula, klee_sides,
    multiset_bounds, nonzeropart_bound, quotient_euler_sides, schenzel_fine_formula,
    schenzel_totals_formula, sigma_prop_formula, sigma_totals_formula, sr_hilbert_coefficient,
    stanley_cs_formula, stanley_extension_range, stanley_very_free_bound, zeropart_bound,
)


def facts(name):
    entry = get_entry(name)
    K = entry.complex
    return K, K.h_vector(), betti(K), isotypic_betti(K, entry.action)


class RingFormulaTests(SimpleTestCase):

    def test_octahedron_degree_one(self):
        self.assertEqual(sr_hilbert_coefficient((1, 3, 3, 1), 3, 2, 1), QQ(3))

    def test_torus_degree_one(self):
        self.assertEqual(sr_hilbert_coefficient((1, 4, 10, -1), 3, 7, 1), QQ(1))


class QuotientFormulaTests(SimpleTestCase):

    def test_nine_gon_invariant_lsop(self):
        K, h, _, table = facts("c9")
        series = schenzel_fine_formula(h, table, K.d, 3, 0)
        self.assertEqual(series.as_rows(), [[1, 0, 0], [1, 3, 3], [1, 0, 0]])

    def test_stanley_formula_for_the_octahedron(self):
        series = stanley_cs_formula((1, 3, 3, 1), 3)
        self.assertEqual(series.as_rows(), [[1, 0], [3, 0], [3, 0], [1, 0]])

    def test_p2_specialisation(self):
        for name in ("oct3", "icosa"):
            K, h, _, table = facts(name)
            for m in (0, 1):
                with self.subTest(entry=name, m=m):
                    self.assertEqual(
                        cs_schenzel_formula(h, table, K.d, m),
                        schenzel_fine_formula(h, table, K.d, 2, m),
                    )

    def test_torus_totals(self):
        K, h, values, _ = facts("torus7")
        self.assertEqual(schenzel_totals_formula(h, values, K.d), (1, 4, 10, 1))
        self.assertEqual(sigma_totals_formula(h, values, K.d), (1, 4, 4, 0))

    def test_sigma_over_theta_for_a_sphere_is_zero(self):
        K, _, _, table = facts("c9")
        self.assertEqual(sigma_prop_formula(table, K.d, 3, 0).table, {})

    def test_sigma_over_theta_for_the_torus(self):
        K, _, _, table = facts("torus7")
        series = sigma_prop_formula(table, K.d, 7, 0)
        self.assertEqual(series.row(2), (6, 0, 0, 0, 0, 0, 0))


class BoundTests(SimpleTestCase):

    def test_adin(self):
        self.assertEqual(adin_bound(3, 2), (1, 3, 3, 1))
        self.assertEqual(adin_bound(4, 3), (1, 2, 3, 2, 1))

    def test_adin_needs_divisible_dimension(self):
        with self.assertRaises(ValueError):
            adin_bound(3, 3)

    def test_torus_buchsbaum(self):
        _, _, values, _ = facts("torus7")
        self.assertEqual(buchsbaum_bound(values, 3, 2), 6)

    def test_torus_zeropart(self):
        _, _, _, table = facts("torus7")
        self.assertEqual(zeropart_bound(table, 3, 7, 2), 24)

    def test_nine_gon_nonzeropart(self):
        _, _, _, table = facts("c9")
        self.assertEqual(nonzeropart_bound(table, 2, 3, 2, 1), 1)

    def test_multisets(self):
        _, _, _, table = facts("c9")
        bounds = multiset_bounds(table, 2, 3, 1)
        self.assertEqual([multiset for multiset, _ in bounds], [(1, 1), (1, 2), (2, 2)])

    def test_very_free(self):
        self.assertEqual(stanley_very_free_bound(3, 2, 1), 3)
        self.assertEqual(stanley_very_free_bound(3, 2, 2), 3)
        self.assertEqual(stanley_very_free_bound(4, 5, 1), 16)

    def test_extension_range(self):
        _, _, torus_betti, _ = facts("torus7")
        self.assertEqual(stanley_extension_range(torus_betti, 3), 2)
        _, _, sphere_betti, _ = facts("oct3")
        self.assertEqual(stanley_extension_range(sphere_betti, 3), 3)


class IdentityTests(SimpleTestCase):

    def test_klee_on_manifolds(self):
        for name in ("oct3", "torus7", "c9"):
            K, h, _, _ = facts(name)
            for i in range(K.d + 1):
                with self.subTest(entry=name, i=i):
                    lhs, rhs = klee_sides(h, K.d, K.reduced_euler(), i)
                    self.assertEqual(lhs, rhs)

    def test_congruence_for_free_actions(self):
        for name in ("oct3", "torus7", "c9", "icosa"):
            entry = get_entry(name)
            h = entry.complex.h_vector()
            for i in range(entry.d + 1):
                self.assertTrue(congruence_holds(h, entry.d, entry.p, i))

    def test_congruence_can_fail(self):
        self.assertFalse(congruence_holds((1, 5, 1), 2, 2, 1))

    @given(st.sampled_from(["oct3", "torus7", "c9", "icosa", "triangle"]))
    def test_quotient_euler(self, name):
        entry = get_entry(name)
        table = isotypic_betti(entry.complex, entry.action)
        lhs, rhs = quotient_euler_sides(entry.complex.reduced_euler(), table, entry.p)
        self.assertEqual(lhs, rhs)
