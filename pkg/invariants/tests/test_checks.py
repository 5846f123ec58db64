from unittest import mock

from django.test import SimpleTestCase

from invariants.actions import CyclicAction
from invariants.catalog import CatalogEntry, get_entry
from invariants.checks import (
    FAIL, NOT_APPLICABLE, PASS, VerificationReport, check_hochster, check_inequalities,
    check_misc, check_schenzel, check_sigma_and_duality, lefschetz_probe, run_suites,
)
from invariants.complexes import SimplicialComplex
from invariants.conf import Caps
from invariants.exceptions import (
    ComplexAssertionError, LsopConstructionError, NotPeriodicError, ResourceCapExceeded,
)


def statuses(report, tag):
    return {record.status for record in report.by_tag(tag)}


class VerificationReportTests(SimpleTestCase):

    def test_counts(self):
        report = VerificationReport("misc", "c9")
        report.add("euler", {}, 0, 0)
        with self.assertLogs("invariants.checks", level="WARNING"):
            report.add("klee", {"i": 1}, 2, 3)
        report.not_applicable("adin", {"p": 3}, "needs_cm_free_divisible")
        self.assertEqual(report.counts(), {PASS: 1, FAIL: 1, NOT_APPLICABLE: 1})
        self.assertFalse(report.ok)

    def test_explicit_ok_overrides_equality(self):
        report = VerificationReport("inequalities", "c9")
        record = report.add("buchsbaum-inequality", {"i": 1}, 4, 7, ok=True)
        self.assertEqual(record.status, PASS)
        self.assertEqual(record.as_dict()["expected"], 4)

    def test_not_applicable_keeps_numbers(self):
        report = VerificationReport("inequalities", "torus7")
        record = report.not_applicable("zeropart", {"i": 2}, "lsop", expected=24, computed=10)
        self.assertEqual((record.expected, record.computed), (24, 10))
        self.assertTrue(report.ok)


class HochsterSuiteTests(SimpleTestCase):

    def test_nine_gon(self):
        report = check_hochster(get_entry("c9"), i_range=range(3), j_range=range(2))
        self.assertTrue(report.ok)
        self.assertEqual(len(report.by_tag("refined-hochster")), 6)
        self.assertEqual(statuses(report, "hom-dimension"), {PASS})
        self.assertEqual(statuses(report, "hochster-euler"), {PASS})

    def test_not_free(self):
        report = check_hochster(get_entry("simplex"))
        self.assertEqual(report.counts()[NOT_APPLICABLE], 3)
        self.assertEqual(report.records[0].reason, "not_free")

    def test_caps_propagate(self):
        with self.assertRaises(ResourceCapExceeded):
            check_hochster(get_entry("c9"), caps=Caps(n=3, j=0))

    def test_broken_complex_is_a_failure(self):
        for error in (ComplexAssertionError("d∘d ≠ 0"), NotPeriodicError("M^3 ≠ I", p=3)):
            with self.subTest(code=error.code):
                with mock.patch("invariants.checks.verify_refined_hochster", side_effect=error):
                    with self.assertLogs("invariants.checks", level="WARNING"):
                        report = check_hochster(get_entry("c9"), i_range=range(2), j_range=range(1))
                self.assertFalse(report.ok)
                self.assertEqual(report.counts()[FAIL], 3)
                self.assertEqual({record.reason for record in report.records}, {error.code})


class SchenzelSuiteTests(SimpleTestCase):

    def test_octahedron(self):
        report = check_schenzel(get_entry("oct3"), seed=0)
        self.assertTrue(report.ok)
        for tag in ("schenzel-totals", "schenzel-fine", "cs-schenzel", "stanley-cs", "lsop-replay"):
            self.assertEqual(statuses(report, tag), {PASS}, tag)

    def test_nine_gon(self):
        report = check_schenzel(get_entry("c9"), seed=0)
        self.assertTrue(report.ok)
        self.assertEqual(statuses(report, "cs-schenzel"), {NOT_APPLICABLE})
        self.assertEqual(statuses(report, "artinian-seed-independence"), {PASS})

    def test_torus_keeps_totals(self):
        report = check_schenzel(get_entry("torus7"), seed=0)
        self.assertEqual(statuses(report, "schenzel-totals"), {PASS})
        (fine,) = report.by_tag("schenzel-fine")
        self.assertEqual(fine.status, NOT_APPLICABLE)
        self.assertEqual(fine.reason, LsopConstructionError.INSUFFICIENT_ISOTYPIC_SPACE)

    def test_simplex(self):
        report = check_schenzel(get_entry("simplex"), seed=0)
        (totals,) = report.by_tag("schenzel-totals")
        self.assertEqual(totals.computed, [1, 0, 0, 0])
        self.assertEqual(report.by_tag("schenzel-fine")[0].reason, "not_free")


class SigmaSuiteTests(SimpleTestCase):

    def test_octahedron(self):
        report = check_sigma_and_duality(get_entry("oct3"), seed=0)
        self.assertTrue(report.ok)
        (delta,) = report.by_tag("sigma-top-delta")
        self.assertEqual(delta.computed, [1, 0])
        (socle,) = report.by_tag("socle-character")
        self.assertEqual(socle.computed, 0)
        self.assertEqual(statuses(report, "odd-p-top-invariant"), {NOT_APPLICABLE})

    def test_nine_gon(self):
        report = check_sigma_and_duality(get_entry("c9"), seed=0)
        self.assertTrue(report.ok)
        for tag in ("odd-p-top-invariant", "pairing", "ds-invariant", "ds-corollary"):
            self.assertEqual(statuses(report, tag), {PASS}, tag)

    def test_torus(self):
        report = check_sigma_and_duality(get_entry("torus7"), seed=0)
        self.assertTrue(report.ok)
        self.assertEqual(statuses(report, "odd-p-top-invariant"), {PASS})
        self.assertEqual(statuses(report, "sigma-theorem"), {NOT_APPLICABLE})
        self.assertEqual(statuses(report, "ds-invariant"), {NOT_APPLICABLE})


class InequalitySuiteTests(SimpleTestCase):

    def test_torus_guarded_zeropart(self):
        report = check_inequalities(get_entry("torus7"), seed=0)
        self.assertTrue(report.ok)
        zeropart = {record.inputs["i"]: record for record in report.by_tag("zeropart")}
        self.assertEqual(zeropart[2].status, NOT_APPLICABLE)
        self.assertEqual((zeropart[2].expected, zeropart[2].computed), (24, 10))
        self.assertEqual(statuses(report, "buchsbaum-inequality"), {PASS})
        self.assertEqual(statuses(report, "adin"), {NOT_APPLICABLE})

    def test_nine_gon(self):
        report = check_inequalities(get_entry("c9"), seed=0)
        self.assertTrue(report.ok)
        nonzero = [r for r in report.by_tag("nonzeropart") if r.inputs["i"] == 2]
        self.assertEqual([(r.expected, r.computed) for r in nonzero], [(1, 1), (1, 1)])
        for tag in ("adin", "stanley-very-free", "stanley-extension"):
            self.assertEqual(statuses(report, tag), {PASS}, tag)

    def test_octahedron(self):
        report = check_inequalities(get_entry("oct3"), seed=0)
        self.assertTrue(report.ok)
        (adin,) = report.by_tag("adin")
        self.assertEqual(adin.expected, [1, 3, 3, 1])


class MiscSuiteTests(SimpleTestCase):

    def test_catalog_entries_pass(self):
        for name in ("oct3", "c9", "torus7", "triangle", "simplex"):
            with self.subTest(entry=name):
                self.assertTrue(check_misc(get_entry(name)).ok)

    def test_simplex_guards(self):
        report = check_misc(get_entry("simplex"))
        self.assertEqual(statuses(report, "klee"), {NOT_APPLICABLE})
        self.assertEqual(statuses(report, "congruence"), {NOT_APPLICABLE})
        self.assertEqual(statuses(report, "ring-dimension"), {PASS})

    def test_klee_needs_orientable_manifold(self):
        # six-vertex real projective plane
        K = SimplicialComplex.from_facets(
            [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6],
             [2, 3, 5], [3, 4, 6], [2, 4, 5], [3, 5, 6], [2, 4, 6]], 6,
        )
        entry = CatalogEntry.from_documents("rp2", K, CyclicAction.identity(6))
        self.assertTrue(entry.flags["homology_manifold"])
        (klee,) = check_misc(entry).by_tag("klee")
        self.assertEqual(klee.status, NOT_APPLICABLE)
        self.assertEqual(klee.reason, "not_orientable_manifold")


class LefschetzProbeTests(SimpleTestCase):

    def test_octahedron(self):
        probe = lefschetz_probe(get_entry("oct3"), seed=0, trials=4)
        self.assertTrue(probe.applicable)
        self.assertEqual([r.degree for r in probe.results], [0, 1])

    def test_simplex(self):
        probe = lefschetz_probe(get_entry("simplex"))
        self.assertFalse(probe.applicable)
        self.assertEqual(probe.reason, "not_orientable_manifold")


class RunSuitesTests(SimpleTestCase):

    def test_order(self):
        entries = [get_entry("triangle"), get_entry("c9")]
        reports = run_suites(["misc", "inequalities"], entries, seed=0, workers=1)
        self.assertEqual(
            [(r.suite, r.entry) for r in reports],
            [("misc", "triangle"), ("misc", "c9"), ("inequalities", "triangle"), ("inequalities", "c9")],
        )

    def test_process_pool_matches_serial(self):
        entries = [get_entry("triangle"), get_entry("c9")]
        serial = run_suites(["misc"], entries, seed=0, workers=1)
        pooled = run_suites(["misc"], entries, seed=0, workers=2)
        self.assertEqual([r.as_dict() for r in pooled], [r.as_dict() for r in serial])
