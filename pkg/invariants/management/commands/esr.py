import logging
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError

from invariants import conf
from invariants.actions import CyclicAction, validate_action, vertex_orbits
from invariants.catalog import CatalogEntry, catalog, get_entry
from invariants.checks import SUITES, lefschetz_probe, run_suites
from invariants.cohomology import betti, isotypic_betti
from invariants.documents import load_action, load_complex, read_json
from invariants.exceptions import EsrError
from invariants.formulas import schenzel_fine_formula, sigma_fine_formula
from invariants.local_cohomology import verify_refined_hochster
from invariants.reports import dumps, render_text
from invariants.sr_ring import (
    QuotientEngine, build_lsop, generic_lsop, lsop_from_json, lsop_to_json, minimal_nonfaces,
)
from invariants.topology import classify

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Fine (Z x G)-graded invariants of Stanley-Reisner rings with free Z/pZ actions."

    # -------------------------------------------------
    # Arguments
    # -------------------------------------------------
    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)

        def add(name, help_text, inputs=True):
            sub = subparsers.add_parser(name, help=help_text)
            sub.add_argument("--json", action="store_true", help="Machine-readable output.")
            sub.add_argument("--caps", default=None, help="Resource caps, e.g. n=14,j=3.")
            sub.add_argument("--fast-mod", action="store_true", default=None,
                             help="Pre-screen ranks modulo a prime.")
            sub.add_argument("--seed", type=int, default=None, help="Construction seed.")
            if inputs:
                sub.add_argument("complex", nargs="?", default=None, help="Complex JSON document.")
                sub.add_argument("--action", default=None, help="Action JSON document.")
                sub.add_argument("--name", default=None, help="Catalog entry instead of documents.")
            return sub

        sub = add("catalog", "List the built-in complexes.", inputs=False)
        sub.add_argument("--name", default=None)

        add("info", "Face counts, classification and action metadata.")
        add("betti", "Reduced and isotypic Betti numbers.")

        sub = add("hochster", "Compare both sides of the refined Hochster formula.")
        sub.add_argument("--imax", type=int, default=None)
        sub.add_argument("--jmax", type=int, default=None)

        for name, text in (("artinian", "Fine Hilbert function of an Artinian reduction."),
                           ("sigma", "Fine Hilbert functions of the sigma module quotients.")):
            sub = add(name, text)
            sub.add_argument("--m", type=int, default=None, help="Character degree of the forms.")
            sub.add_argument("--lsop", default=None, help="Replay a serialized l.s.o.p.")
            if name == "artinian":
                sub.add_argument("--generic", action="store_true",
                                 help="Non-equivariant l.s.o.p., totals only.")

        sub = add("lsop", "Build and serialize an l.s.o.p.")
        sub.add_argument("--m", type=int, default=None)
        sub.add_argument("--generic", action="store_true")
        sub.add_argument("--out", default=None, help="Write the JSON here instead of stdout.")

        sub = add("verify", "Run verification suites.")
        sub.add_argument("--suite", default="all", choices=sorted(SUITES) + ["all"])
        sub.add_argument("--workers", type=int, default=None)

        sub = add("probe-lefschetz", "Exploratory search for Lefschetz elements.")
        sub.add_argument("--trials", type=int, default=8)

    # -------------------------------------------------
    # Dispatch
    # -------------------------------------------------
    def handle(self, *args, **options):
        handler = getattr(self, "handle_" + options["subcommand"].replace("-", "_"))
        try:
            return handler(options)
        except ValidationError as e:
            self._fail({"error": "; ".join(e.messages), "code": e.code}, options)
        except EsrError as e:
            self._fail(e.as_dict(), options)

    def _fail(self, body, options):
        if options.get("json"):
            self.stdout.write(dumps(body))
        raise CommandError(body["error"], returncode=2)

    def _emit(self, options, data, template, **context):
        if options["json"]:
            self.stdout.write(dumps(data))
        else:
            self.stdout.write(render_text(template, **context), ending="")

    def _caps(self, options):
        return conf.parse_caps(options["caps"]) if options.get("caps") else None

    def _inputs(self, options):
        """(entry or None, K, action) from --name or the documents."""
        if options.get("name"):
            entry = get_entry(options["name"])
            return entry, entry.complex, entry.action
        if not options.get("complex"):
            raise CommandError("Give a complex document or --name.")
        K = load_complex(options["complex"])
        if options.get("action"):
            action = load_action(options["action"], K)
        else:
            action = CyclicAction.identity(K.n)
        return None, K, action

    def _entries(self, options):
        if options.get("name"):
            return [get_entry(options["name"])]
        if options.get("complex"):
            _, K, action = self._inputs(options)
            return [CatalogEntry.from_documents(Path(options["complex"]).stem, K, action,
                                                options.get("m") or 0)]
        return catalog()

    def _default_m(self, options, entry):
        if options.get("m") is not None:
            return options["m"]
        return entry.default_m if entry else 0

    def _lsop(self, options, entry, K, action):
        if options.get("lsop"):
            lsop = lsop_from_json(read_json(options["lsop"]), K)
            if not lsop.certificate:
                raise ValidationError("The l.s.o.p. document fails the facet-rank test.",
                                      code="bad_lsop")
            return lsop
        return build_lsop(K, action, self._default_m(options, entry), options["seed"])

    # -------------------------------------------------
    # Subcommands
    # -------------------------------------------------
    def handle_catalog(self, options):
        entries = [get_entry(options["name"])] if options["name"] else catalog()
        data = [entry.as_dict() for entry in entries]
        self._emit(options, data, "catalog.txt", entries=data)

    def handle_info(self, options):
        entry, K, action = self._inputs(options)
        report = validate_action(K, action)
        data = {
            "name": entry.name if entry else None,
            "n": K.n,
            "d": K.d,
            "facets": [list(K.label(f)) for f in K.sorted_facets()],
            "f": K.f_vector(),
            "h": K.h_vector(),
            "reduced_euler": K.reduced_euler(),
            "minimal_nonfaces": [list(t) for t in minimal_nonfaces(K)],
            "classification": classify(K).flags,
            "action": {
                "p": action.p,
                "perm": action.images(),
                "vertex_orbits": len(vertex_orbits(K, action)),
                **report.as_dict(),
            },
        }
        self._emit(options, data, "info.txt", info=data)

    def handle_betti(self, options):
        _, K, action = self._inputs(options)
        table = isotypic_betti(K, action)
        data = {
            "betti": {str(i - 1): value for i, value in enumerate(betti(K))},
            "p": table.p,
            "isotypic": table.as_dict(),
        }
        self._emit(options, data, "betti.txt", betti=data)

    def handle_hochster(self, options):
        entry, K, action = self._inputs(options)
        default_i = entry.i_max if entry else K.d
        default_j = entry.j_max if entry else 1
        i_range = range(0, (default_i if options["imax"] is None else options["imax"]) + 1)
        j_range = range(0, (default_j if options["jmax"] is None else options["jmax"]) + 1)
        report = verify_refined_hochster(K, action, i_range, j_range,
                                         self._caps(options), options["fast_mod"])
        self._emit(options, report, "hochster.txt", report=report)
        if not report.all_match:
            raise CommandError("Hochster comparison found mismatches.", returncode=1)

    def handle_artinian(self, options):
        entry, K, action = self._inputs(options)
        if options["generic"]:
            lsop = generic_lsop(K, options["seed"])
            engine = QuotientEngine(K, CyclicAction.identity(K.n), lsop)
            series = engine.artinian()
            data = {"lsop": lsop_to_json(lsop), "totals": list(series.totals())}
            self._emit(options, data, "artinian.txt", lsop=lsop_to_json(lsop),
                       totals=data["totals"], dims=series, formula=None)
            return
        lsop = self._lsop(options, entry, K, action)
        series = QuotientEngine(K, action, lsop).artinian()
        formula = None
        if lsop.m is not None:
            formula = schenzel_fine_formula(K.h_vector(), isotypic_betti(K, action), K.d,
                                            max(action.p, 1), lsop.m)
        data = {
            "lsop": lsop_to_json(lsop),
            "dims": series,
            "totals": list(series.totals()),
            "formula": formula,
        }
        self._emit(options, data, "artinian.txt", lsop=data["lsop"], totals=data["totals"],
                   dims=series, formula=formula)

    def handle_sigma(self, options):
        entry, K, action = self._inputs(options)
        lsop = self._lsop(options, entry, K, action)
        over_theta, quotient = QuotientEngine(K, action, lsop).sigma_quotients()
        formula = None
        if lsop.m is not None:
            formula = sigma_fine_formula(K.h_vector(), isotypic_betti(K, action), K.d,
                                         max(action.p, 1), lsop.m)
        data = {
            "lsop": lsop_to_json(lsop),
            "sigma_over_theta": over_theta,
            "quotient": quotient,
            "formula": formula,
        }
        self._emit(options, data, "sigma.txt", lsop=data["lsop"], over_theta=over_theta,
                   quotient=quotient, formula=formula)

    def handle_lsop(self, options):
        entry, K, action = self._inputs(options)
        if options["generic"]:
            lsop = generic_lsop(K, options["seed"])
        else:
            lsop = build_lsop(K, action, self._default_m(options, entry), options["seed"])
        document = dict(lsop_to_json(lsop), certificate=lsop.certificate, attempts=lsop.attempts)
        if options["out"]:
            Path(options["out"]).write_text(dumps(document), encoding="utf-8")
            logger.info("wrote l.s.o.p. to %s", options["out"])
            if not options["json"]:
                self.stdout.write(f"Wrote {options['out']}")
                return
        self.stdout.write(dumps(document))

    def handle_verify(self, options):
        if options["fast_mod"]:
            logger.warning("--fast-mod is a pre-screen only; verify runs in exact mode.")
        suites = sorted(SUITES) if options["suite"] == "all" else [options["suite"]]
        reports = run_suites(suites, self._entries(options), options["seed"],
                             self._caps(options), False, options["workers"])
        failures = sum(report.counts()["fail"] for report in reports)
        summary = {
            "pass": sum(report.counts()["pass"] for report in reports),
            "fail": failures,
            "not-applicable": sum(report.counts()["not-applicable"] for report in reports),
        }
        self._emit(options, {"summary": summary, "reports": reports}, "verify.txt",
                   summary=summary, reports=reports)
        if failures:
            raise CommandError(f"{failures} check(s) failed.", returncode=1)

    def handle_probe_lefschetz(self, options):
        probes = [lefschetz_probe(entry, options["seed"], options["trials"])
                  for entry in self._entries(options)]
        self._emit(options, probes, "probe.txt", probes=probes)
