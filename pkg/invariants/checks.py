"""Verification suites over catalog entries.

Every check produces exactly one ``CheckRecord`` per requested comparison.
A check whose hypotheses fail is recorded as not-applicable with the reason;
the numbers are still recorded when they could be computed.
"""
import json
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from math import comb

from . import conf
from .actions import CyclicAction, validate_action
from .cohomology import (
    _at, betti, hochster_rhs_direct, hochster_rhs_fine, isotypic_betti,
    isotypic_betti_orbit_sums,
)
from .exceptions import (
    ComplexAssertionError, LsopConstructionError, NotPeriodicError, QuotientError,
)
from .formulas import (
    adin_bound, buchsbaum_bound, congruence_holds, cs_schenzel_formula, klee_sides,
    multiset_bounds, nonzeropart_bound, quotient_euler_sides, schenzel_fine_formula,
    schenzel_totals_formula, sigma_fine_formula, sigma_prop_formula, sigma_totals_formula,
    stanley_cs_formula, stanley_extension_range, stanley_very_free_bound, zeropart_bound,
)
from .hilbert import FineHilbert
from .local_cohomology import (
    hom_dimension, hom_dimension_from_strands, ring_dimension, strand_euler_consistent,
    strands, verify_refined_hochster,
)
from .sr_ring import (
    QuotientEngine, build_lsop, expected_ring_dimension, fine_ring_dims, generic_lsop,
    lefschetz_search, lsop_from_json, lsop_to_json, monomial_basis, pairing_report,
    sr_hilbert_fine,
)
from .topology import classify

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
NOT_APPLICABLE = "not-applicable"

SR_HILBERT_DEGREE = 6


# -------------------------------------------------
# Reports
# -------------------------------------------------
@dataclass
class CheckRecord:
    tag: str
    inputs: dict
    expected: object
    computed: object
    status: str
    reason: str = ""

    def as_dict(self):
        return {
            "tag": self.tag,
            "inputs": self.inputs,
            "expected": self.expected,
            "computed": self.computed,
            "status": self.status,
            "reason": self.reason,
        }


@dataclass
class VerificationReport:
    suite: str
    entry: str
    records: list = field(default_factory=list)

    def add(self, tag, inputs, expected, computed, ok=None, reason=""):
        """Record a comparison; ``ok`` defaults to expected == computed."""
        if ok is None:
            ok = expected == computed
        status = PASS if ok else FAIL
        record = CheckRecord(tag, inputs, expected, computed, status, reason)
        self.records.append(record)
        if not ok:
            logger.warning("%s/%s %s failed: expected %s, computed %s",
                           self.suite, self.entry, tag, expected, computed)
        return record

    def not_applicable(self, tag, inputs, reason, expected=None, computed=None):
        record = CheckRecord(tag, inputs, expected, computed, NOT_APPLICABLE, reason)
        self.records.append(record)
        logger.info("%s/%s %s not applicable: %s", self.suite, self.entry, tag, reason)
        return record

    def counts(self):
        totals = {PASS: 0, FAIL: 0, NOT_APPLICABLE: 0}
        for record in self.records:
            totals[record.status] += 1
        return totals

    @property
    def ok(self):
        return not self.counts()[FAIL]

    def by_tag(self, tag):
        return [record for record in self.records if record.tag == tag]

    def as_dict(self):
        return {
            "suite": self.suite,
            "entry": self.entry,
            "counts": self.counts(),
            "ok": self.ok,
            "records": [record.as_dict() for record in self.records],
        }


# -------------------------------------------------
# Shared facts per entry
# -------------------------------------------------
def _facts(entry):
    K, action = entry.complex, entry.action
    report = validate_action(K, action)
    return {
        "classification": classify(K),
        "action": report,
        "table": isotypic_betti(K, action),
        "betti": betti(K),
        "h": K.h_vector(),
    }


def _lsop_or_reason(entry, m, seed):
    """(lsop, None) or (None, reason code)."""
    if not validate_action(entry.complex, entry.action).free:
        return None, "not_free"
    try:
        return build_lsop(entry.complex, entry.action, m, seed), None
    except LsopConstructionError as e:
        return None, e.code


def _rows(series, degrees):
    return [list(series.row(i)) for i in degrees]


# -------------------------------------------------
# Hochster
# -------------------------------------------------
def check_hochster(entry, i_range=None, j_range=None, caps=None, modular=None):
    K, action = entry.complex, entry.action
    default_i, default_j = entry.hochster_grid()
    i_range = list(default_i if i_range is None else i_range)
    j_range = list(default_j if j_range is None else j_range)
    report = VerificationReport("hochster", entry.name)
    tags = ("refined-hochster", "classical-hochster", "hochster-direct")
    if not validate_action(K, action).free:
        for tag in tags:
            report.not_applicable(tag, {"p": action.p}, "not_free")
        return report
    try:
        comparison = verify_refined_hochster(K, action, i_range, j_range, caps, modular)
    except (ComplexAssertionError, NotPeriodicError) as e:
        for tag in tags:
            report.add(tag, {"i": i_range, "j": j_range}, None, None, ok=False, reason=e.code)
        return report
    p = comparison.p
    betti_table = isotypic_betti(K, action)
    for i, j, lhs_total, rhs_total, classical in comparison.totals:
        inputs = {"i": i, "j": j, "p": p}
        report.add("refined-hochster", inputs, list(comparison.rhs(i, j)), list(comparison.lhs(i, j)))
        report.add("classical-hochster", inputs, classical, lhs_total, ok=lhs_total == rhs_total == classical)
        direct = hochster_rhs_direct(K, action, i, j)
        report.add("hochster-direct", inputs, list(hochster_rhs_fine(K, action, i, j, betti_table)), list(direct))

    for j in j_range:
        for t in i_range:
            report.add(
                "hom-dimension", {"t": t, "j": j},
                hom_dimension(K, t, j), hom_dimension_from_strands(K, t, j),
            )
        shapes = {}
        for t in i_range:
            for strand in strands(K, t, j):
                shapes.setdefault(strand.shape, strand)
        consistent = sum(1 for strand in shapes.values() if strand_euler_consistent(K, strand))
        report.add("hochster-euler", {"j": j, "strand_shapes": len(shapes)}, len(shapes), consistent)
    return report


# -------------------------------------------------
# Schenzel
# -------------------------------------------------
def check_schenzel(entry, seed=None):
    K, action = entry.complex, entry.action
    seed = conf.seed(seed)
    facts = _facts(entry)
    report = VerificationReport("schenzel", entry.name)
    d, p, m = K.d, max(action.p, 1), entry.default_m
    h, table = facts["h"], facts["table"]
    inputs = {"seed": seed, "m": m, "p": p}
    fine_tags = ("schenzel-fine", "schenzel-fine-totals", "cs-schenzel", "stanley-cs",
                 "artinian-seed-independence", "lsop-replay")

    if not facts["classification"].buchsbaum:
        for tag in ("schenzel-totals",) + fine_tags:
            report.not_applicable(tag, inputs, "not_buchsbaum")
        return report

    expected_totals = list(schenzel_totals_formula(h, facts["betti"], d))
    try:
        generic = generic_lsop(K, seed)
        engine = QuotientEngine(K, CyclicAction.identity(K.n), generic)
        report.add("schenzel-totals", {"seed": seed, "generic": True},
                   expected_totals, list(engine.artinian().totals()))
    except LsopConstructionError as e:
        report.not_applicable("schenzel-totals", {"seed": seed}, e.code, expected=expected_totals)
    except QuotientError as e:
        report.add("schenzel-totals", {"seed": seed, "generic": True}, expected_totals, None,
                   ok=False, reason=e.code)

    lsop, reason = _lsop_or_reason(entry, m, seed)
    if lsop is None:
        for tag in fine_tags:
            report.not_applicable(tag, inputs, reason)
        return report

    try:
        computed = QuotientEngine(K, action, lsop).artinian()
    except QuotientError as e:
        for tag in fine_tags:
            report.add(tag, inputs, None, None, ok=False, reason=e.code)
        return report
    degrees = range(d + 1)
    expected = schenzel_fine_formula(h, table, d, p, m)
    report.add("schenzel-fine", inputs, expected, computed)
    report.add("schenzel-fine-totals", inputs, expected_totals, list(computed.totals()))

    if p == 2:
        report.add("cs-schenzel", inputs, cs_schenzel_formula(h, table, d, m), computed)
    else:
        report.not_applicable("cs-schenzel", inputs, "p_not_2")
    if p == 2 and m % 2 == 1 and facts["classification"].cohen_macaulay:
        report.add("stanley-cs", inputs, stanley_cs_formula(h, d), computed)
    else:
        report.not_applicable("stanley-cs", inputs, "needs_cm_p2_odd_forms")

    other, reason = _lsop_or_reason(entry, m, seed + 1)
    if other is None:
        report.not_applicable("artinian-seed-independence", inputs, reason)
    else:
        again = QuotientEngine(K, action, other).artinian()
        report.add("artinian-seed-independence", dict(inputs, other_seed=seed + 1),
                   _rows(computed, degrees), _rows(again, degrees))

    replayed = lsop_from_json(json.loads(json.dumps(lsop_to_json(lsop))), K)
    replayed_dims = QuotientEngine(K, action, replayed).artinian()
    report.add("lsop-replay", inputs, computed, replayed_dims,
               ok=replayed.certificate.valid and replayed_dims == computed)
    return report


# -------------------------------------------------
# Sigma module and duality
# -------------------------------------------------
def _socle_expectation(table, d, p, m):
    """Socle character (m·d − c) mod p, c the character of H̃^{d−1}."""
    characters = [c for c in range(p) if table.get(d - 1, c)]
    if len(characters) != 1:
        return None
    return (m * d - characters[0]) % p


def check_sigma_and_duality(entry, seed=None):
    K, action = entry.complex, entry.action
    seed = conf.seed(seed)
    facts = _facts(entry)
    classification = facts["classification"]
    report = VerificationReport("sigma", entry.name)
    d, p, m = K.d, max(action.p, 1), entry.default_m
    h, table, b = facts["h"], facts["table"], facts["betti"]
    inputs = {"seed": seed, "m": m, "p": p}
    sigma_tags = ("sigma-proposition", "sigma-theorem", "sigma-top-delta", "sigma-totals",
                  "lemma-g-stable", "sigma-monomial-rank")
    duality_tags = ("pairing", "socle-character", "fine-symmetry")
    manifold = (classification.homology_manifold and classification.orientable
                and classification.connected)

    # H̃^{d−1} is G-invariant when p is odd
    if p > 2 and manifold and validate_action(K, action).free:
        report.add("odd-p-top-invariant", {"p": p}, _at(b, d - 1), table.get(d - 1, 0))
    else:
        report.not_applicable("odd-p-top-invariant", {"p": p}, "needs_odd_p_free_orientable_manifold")

    if not classification.buchsbaum:
        for tag in sigma_tags + duality_tags + ("ds-invariant", "ds-corollary"):
            report.not_applicable(tag, inputs, "not_buchsbaum")
        return report

    lsop, reason = _lsop_or_reason(entry, m, seed)
    if lsop is None:
        for tag in sigma_tags + duality_tags:
            report.not_applicable(tag, inputs, reason)
    else:
        engine = QuotientEngine(K, action, lsop)
        try:
            over_theta, quotient = engine.sigma_quotients()
        except QuotientError as e:
            for tag in sigma_tags + duality_tags:
                report.add(tag, inputs, None, None, ok=False, reason=e.code)
            over_theta = None
        if over_theta is not None:
            _sigma_records(report, engine, inputs, h, table, b, over_theta, quotient)
            if manifold:
                _duality_records(report, engine, inputs, table, quotient)
            else:
                for tag in duality_tags:
                    report.not_applicable(tag, inputs, "not_orientable_manifold")

    _ds_records(report, entry, seed, manifold, table, b)
    return report


def _sigma_records(report, engine, inputs, h, table, b, over_theta, quotient):
    d, p, m = engine.d, engine.p, inputs["m"]
    below = range(d)
    report.add("sigma-proposition", inputs, sigma_prop_formula(table, d, p, m), over_theta)
    formula = sigma_fine_formula(h, table, d, p, m)
    report.add("sigma-theorem", dict(inputs, degrees=f"0..{d - 1}"),
               _rows(formula, below), _rows(quotient, below))
    delta = [quotient.get(d, k) - formula.get(d, k) for k in range(p)]
    report.add("sigma-top-delta", dict(inputs, degree=d),
               [table.get(d - 1, (m * d - k) % p) for k in range(p)], delta)
    totals = sigma_totals_formula(h, b, d)
    report.add("sigma-totals", dict(inputs, degrees=f"0..{d - 1}"),
               [totals[i] for i in below], [quotient.total(i) for i in below])
    degrees = range(d + 1)
    stable = [i for i in degrees if not engine.sigma_is_g_stable(i)]
    report.add("lemma-g-stable", inputs, [], stable)
    report.add("sigma-monomial-rank", inputs,
               [sum(engine.sigma(i, c).rank for c in range(p)) for i in degrees],
               [engine.monomial_sigma(i).rank for i in degrees])


def _duality_records(report, engine, inputs, table, quotient):
    d, p, m = engine.d, engine.p, inputs["m"]
    try:
        pairing = pairing_report(engine.K, engine.action, engine.lsop, engine)
    except QuotientError as e:
        for tag in ("pairing", "socle-character", "fine-symmetry"):
            report.add(tag, inputs, None, None, ok=False, reason=e.code)
        return
    report.add("pairing", inputs, True, pairing.perfect,
               reason="" if pairing.perfect else "rank_deficient")
    report.add("socle-character", inputs, _socle_expectation(table, d, p, m), pairing.socle_character)
    s = pairing.socle_character
    asymmetric = [
        [i, j] for i in range(d + 1) for j in range(p)
        if quotient.get(i, j) != quotient.get(d - i, s - j)
    ]
    report.add("fine-symmetry", dict(inputs, socle_character=s), [], asymmetric)


def _ds_records(report, entry, seed, manifold, table, b):
    K, action = entry.complex, entry.action
    d, p = K.d, max(action.p, 1)
    inputs = {"seed": seed, "m": 0, "p": p}
    if not manifold:
        for tag in ("ds-invariant", "ds-corollary"):
            report.not_applicable(tag, inputs, "not_orientable_manifold")
        return
    if table.get(d - 1, 0) != _at(b, d - 1):
        for tag in ("ds-invariant", "ds-corollary"):
            report.not_applicable(tag, inputs, "top_cohomology_not_invariant")
        return
    lsop, reason = _lsop_or_reason(entry, 0, seed)
    if lsop is None:
        for tag in ("ds-invariant", "ds-corollary"):
            report.not_applicable(tag, inputs, reason)
        return
    engine = QuotientEngine(K, action, lsop)
    _, quotient = engine.sigma_quotients()
    report.add("ds-invariant", inputs,
               [quotient.get(d - i, 0) for i in range(d + 1)],
               [quotient.get(i, 0) for i in range(d + 1)])
    top = quotient.row(d)
    broken = [
        [i, j] for i in range(d + 1) for j in range(p)
        if quotient.get(i, j) != quotient.get(d - i, -j)
    ]
    report.add("ds-corollary", inputs, {"socle": [1] + [0] * (p - 1), "asymmetric": []},
               {"socle": list(top), "asymmetric": broken})


# -------------------------------------------------
# Inequalities
# -------------------------------------------------
def check_inequalities(entry, seed=None):
    K, action = entry.complex, entry.action
    seed = conf.seed(seed)
    facts = _facts(entry)
    classification = facts["classification"]
    report = VerificationReport("inequalities", entry.name)
    d, p = K.d, max(action.p, 1)
    h, table, b = facts["h"], facts["table"], facts["betti"]
    free = facts["action"].free and p > 1
    degrees = range(d + 1)

    if not classification.buchsbaum:
        for tag in ("buchsbaum-inequality", "zeropart", "nonzeropart", "multiset",
                    "stanley-extension"):
            report.not_applicable(tag, {"p": p}, "not_buchsbaum")
    else:
        for i in degrees:
            bound = buchsbaum_bound(b, d, i)
            report.add("buchsbaum-inequality", {"i": i}, bound, h[i], ok=h[i] >= bound)
        if not free:
            for tag in ("zeropart", "nonzeropart", "multiset", "stanley-extension"):
                report.not_applicable(tag, {"p": p}, "not_free")
        else:
            _fine_inequalities(report, entry, seed, h, table, b)

    if classification.cohen_macaulay and facts["action"].very_free and p > 1:
        for i in degrees:
            bound = stanley_very_free_bound(d, p, i)
            report.add("stanley-very-free", {"i": i, "p": p}, bound, h[i], ok=h[i] >= bound)
    else:
        report.not_applicable("stanley-very-free", {"p": p}, "needs_cm_very_free")

    if classification.cohen_macaulay and free and d % (p - 1) == 0:
        bound = adin_bound(d, p)
        report.add("adin", {"p": p, "d": d}, list(bound), list(h),
                   ok=all(h[i] >= bound[i] for i in degrees))
    else:
        report.not_applicable("adin", {"p": p, "d": d}, "needs_cm_free_divisible")
    return report


def _fine_inequalities(report, entry, seed, h, table, b):
    K, action = entry.complex, entry.action
    d, p = K.d, max(action.p, 1)
    lsop, reason = _lsop_or_reason(entry, 0, seed)
    for i in range(d + 1):
        bound = zeropart_bound(table, d, p, i)
        inputs = {"i": i, "p": p}
        if lsop is None:
            report.not_applicable("zeropart", inputs, reason, expected=bound, computed=h[i])
        else:
            report.add("zeropart", inputs, bound, h[i], ok=h[i] >= bound)
        for k in range(1, p):
            bound = nonzeropart_bound(table, d, p, i, k)
            inputs = {"i": i, "k": k, "p": p}
            if lsop is None:
                report.not_applicable("nonzeropart", inputs, reason, expected=bound, computed=h[i])
            else:
                report.add("nonzeropart", inputs, bound, h[i], ok=h[i] >= bound)
        bounds = multiset_bounds(table, d, p, i)
        largest = max(bound for _, bound in bounds)
        report.add("multiset", {"i": i, "p": p, "multisets": len(bounds)}, largest, h[i],
                   ok=h[i] >= largest)

    reach = stanley_extension_range(b, d)
    expected = [stanley_very_free_bound(d, p, i) for i in range(reach + 1)]
    inputs = {"p": p, "through": reach}
    if lsop is None:
        report.not_applicable("stanley-extension", inputs, reason,
                              expected=expected, computed=list(h[:reach + 1]))
    else:
        report.add("stanley-extension", inputs, expected, list(h[:reach + 1]),
                   ok=all(h[i] >= expected[i] for i in range(reach + 1)))


# -------------------------------------------------
# Identities, ring dimensions and catalog metadata
# -------------------------------------------------
def check_misc(entry, seed=None):
    K, action = entry.complex, entry.action
    facts = _facts(entry)
    classification = facts["classification"]
    report = VerificationReport("misc", entry.name)
    d, p = K.d, max(action.p, 1)
    h, table, b = facts["h"], facts["table"], facts["betti"]
    chi = K.reduced_euler()
    free = facts["action"].free and p > 1

    report.add("euler", {}, chi, sum((-1) ** i * _at(b, i) for i in range(-1, d)))
    report.add("h-top", {"d": d}, (-1) ** (d - 1) * chi, h[d])

    if not classification.homology_manifold:
        report.not_applicable("klee", {}, "not_homology_manifold")
    elif not (classification.orientable and classification.connected):
        report.not_applicable("klee", {}, "not_orientable_manifold")
    else:
        for i in range(d + 1):
            lhs, rhs = klee_sides(h, d, chi, i)
            report.add("klee", {"i": i}, rhs, lhs)

    if free:
        for i in range(d + 1):
            expected = (-1) ** i * comb(d, i)
            report.add("congruence", {"i": i, "p": p}, expected % p, h[i] % p,
                       ok=congruence_holds(h, d, p, i))
        closed = sr_hilbert_fine(K, action, SR_HILBERT_DEGREE)
        counted = FineHilbert(p, top=SR_HILBERT_DEGREE)
        for i in range(SR_HILBERT_DEGREE + 1):
            for c, value in enumerate(fine_ring_dims(K, action, i)):
                counted.set(i, c, value)
        report.add("sr-hilbert", {"through": SR_HILBERT_DEGREE, "p": p}, closed, counted)
        euler, invariant = quotient_euler_sides(chi, table, p)
        report.add("quotient-euler", {"p": p}, euler, invariant)
    else:
        for tag in ("congruence", "sr-hilbert", "quotient-euler"):
            report.not_applicable(tag, {"p": p}, "not_free")

    for i in range(SR_HILBERT_DEGREE + 1):
        counted = len(monomial_basis(K, i))
        report.add("ring-dimension", {"i": i}, expected_ring_dimension(K, i), counted,
                   ok=counted == expected_ring_dimension(K, i) == ring_dimension(K, i))

    report.add("isotypic-completeness", {"p": p},
               [_at(b, i) for i in range(-1, d)], [table.total(i) for i in range(-1, d)])
    report.add("isotypic-routes", {"p": p}, table.as_dict(),
               isotypic_betti_orbit_sums(K, action).as_dict())

    if p == 2 and free and classification.cohen_macaulay:
        report.add("cs-closed-forms", {"m": 1}, stanley_cs_formula(h, d),
                   cs_schenzel_formula(h, table, d, 1))
    else:
        report.not_applicable("cs-closed-forms", {"p": p}, "needs_cm_free_p2")

    report.add("classification", {}, entry.flags, classification.flags)
    report.add("action-metadata", {},
               {"free": entry.free, "very_free": entry.very_free},
               {"free": facts["action"].free, "very_free": facts["action"].very_free})
    report.add("documented-invariants", {},
               {"f": list(entry.f), "h": list(entry.h), "betti": list(entry.betti)},
               {"f": list(K.f_vector()), "h": list(h), "betti": list(b)})
    report.add("documented-isotypic-betti", {},
               {f"{i},{j}": v for (i, j), v in sorted(entry.betti_fine.items())},
               {f"{i},{j}": v for (i, j), v in sorted(table.table.items())})
    return report


# -------------------------------------------------
# Lefschetz probe
# -------------------------------------------------
@dataclass
class LefschetzProbeReport:
    entry: str
    seed: int
    trials: int
    applicable: bool
    reason: str = ""
    results: list = field(default_factory=list)

    def as_dict(self):
        return {
            "entry": self.entry,
            "seed": self.seed,
            "trials": self.trials,
            "applicable": self.applicable,
            "reason": self.reason,
            "results": [result.as_dict() for result in self.results],
        }


def lefschetz_probe(entry, seed=None, trials=8):
    """Exploratory: per character degree, search for an injective multiplier."""
    seed = conf.seed(seed)
    classification = classify(entry.complex)
    probe = LefschetzProbeReport(entry.name, seed, trials, False)
    if not (classification.homology_manifold and classification.orientable):
        probe.reason = "not_orientable_manifold"
        return probe
    lsop, reason = _lsop_or_reason(entry, entry.default_m, seed)
    if lsop is None:
        probe.reason = reason
        return probe
    engine = QuotientEngine(entry.complex, entry.action, lsop)
    probe.applicable = True
    for degree in range(max(entry.action.p, 1)):
        result = lefschetz_search(engine, degree, seed, trials)
        logger.info("lefschetz %s m'=%s found=%s", entry.name, degree, result.found)
        probe.results.append(result)
    return probe


# -------------------------------------------------
# Suites
# -------------------------------------------------
SUITES = {
    "hochster": check_hochster,
    "schenzel": check_schenzel,
    "sigma": check_sigma_and_duality,
    "inequalities": check_inequalities,
    "misc": check_misc,
}


def run_check(suite, entry, seed=None, caps=None, modular=None):
    if suite == "hochster":
        return check_hochster(entry, caps=caps, modular=modular)
    return SUITES[suite](entry, seed)


def run_suites(suites, entries, seed=None, caps=None, modular=None, workers=None):
    """Reports in (suite, entry) order; entries run in a process pool when workers > 1."""
    tasks = [(suite, entry) for suite in suites for entry in entries]
    workers = workers or conf.workers()
    logger.info("running %s checks with %s worker(s)", len(tasks), workers)
    if workers <= 1 or len(tasks) <= 1:
        return [run_check(suite, entry, seed, caps, modular) for suite, entry in tasks]
    results = [None] * len(tasks)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(run_check, suite, entry, seed, caps, modular): k
            for k, (suite, entry) in enumerate(tasks)
        }
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return results
