import json
import tempfile
from io import StringIO
from pathlib import Path

from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from invariants.catalog import octahedron
from invariants.documents import complex_to_document
from invariants.exceptions import LsopConstructionError


def run(*args):
    out = StringIO()
    call_command("esr", *args, stdout=out)
    return out.getvalue()


def run_json(*args):
    return json.loads(run(*args, "--json"))


class CatalogCommandTests(SimpleTestCase):

    def test_json(self):
        names = [entry["name"] for entry in run_json("catalog")]
        self.assertEqual(names, ["oct3", "icosa", "c9", "torus7", "triangle", "simplex"])

    def test_text(self):
        output = run("catalog", "--name", "c9")
        self.assertIn("c9", output)
        self.assertIn("h=(1, 7, 1)", output)


class InfoCommandTests(SimpleTestCase):

    def test_catalog_entry(self):
        info = run_json("info", "--name", "oct3")
        self.assertEqual(info["f"], [1, 6, 12, 8])
        self.assertEqual(info["minimal_nonfaces"], [[1, 4], [2, 5], [3, 6]])
        self.assertTrue(info["action"]["free"])

    def test_documents(self):
        with tempfile.TemporaryDirectory() as tmp:
            complex_path = Path(tmp) / "oct.json"
            action_path = Path(tmp) / "anti.json"
            complex_path.write_text(json.dumps(complex_to_document(octahedron())))
            action_path.write_text(json.dumps({"p": 2, "perm": [4, 5, 6, 1, 2, 3]}))
            info = run_json("info", str(complex_path), "--action", str(action_path))
        self.assertIsNone(info["name"])
        self.assertEqual(info["action"]["vertex_orbits"], 3)

    def test_unknown_entry(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("esr", "info", "--name", "nope", "--json", stdout=out)
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(json.loads(out.getvalue())["code"], "unknown_entry")

    def test_needs_input(self):
        with self.assertRaises(CommandError):
            run("info")


class InvariantCommandTests(SimpleTestCase):

    def test_betti(self):
        data = run_json("betti", "--name", "torus7")
        self.assertEqual(data["betti"], {"-1": 0, "0": 0, "1": 2, "2": 1})
        self.assertEqual(data["isotypic"]["1"], [2, 0, 0, 0, 0, 0, 0])

    def test_hochster(self):
        data = run_json("hochster", "--name", "c9", "--imax", "2", "--jmax", "1")
        self.assertTrue(all(row["match"] for row in data["rows"]))

    def test_artinian(self):
        data = run_json("artinian", "--name", "c9", "--seed", "0")
        self.assertEqual(data["dims"]["rows"], [[1, 0, 0], [1, 3, 3], [1, 0, 0]])
        self.assertEqual(data["formula"]["rows"], data["dims"]["rows"])

    def test_generic_artinian(self):
        data = run_json("artinian", "--name", "torus7", "--generic", "--seed", "0")
        self.assertEqual(data["totals"], [1, 4, 10, 1])

    def test_lsop_construction_error(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("esr", "artinian", "--name", "torus7", "--json", stdout=out)
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(
            json.loads(out.getvalue())["code"], LsopConstructionError.INSUFFICIENT_ISOTYPIC_SPACE
        )

    def test_sigma_text(self):
        output = run("sigma", "--name", "oct3", "--seed", "0")
        self.assertIn("ring / sigma", output)

    def test_lsop_replay(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "lsop.json"
            run("lsop", "--name", "oct3", "--seed", "7", "--out", str(path))
            document = json.loads(path.read_text())
            self.assertTrue(document["certificate"]["valid"])
            data = run_json("artinian", "--name", "oct3", "--lsop", str(path))
        self.assertEqual(data["lsop"]["seed"], 7)
        self.assertEqual(data["totals"], [1, 3, 3, 1])


class VerifyCommandTests(SimpleTestCase):

    def test_misc_suite(self):
        data = run_json("verify", "--suite", "misc", "--name", "c9")
        self.assertEqual(data["summary"]["fail"], 0)
        self.assertEqual(data["reports"][0]["suite"], "misc")

    def test_text_summary(self):
        output = run("verify", "--suite", "inequalities", "--name", "torus7", "--seed", "0")
        self.assertIn("not-applicable", output)
        self.assertIn("summary", output)

    def test_caps_exit_code(self):
        out = StringIO()
        with self.assertRaises(CommandError) as ctx:
            call_command("esr", "verify", "--suite", "hochster", "--name", "c9",
                         "--caps", "n=3", "--json", stdout=out)
        self.assertEqual(ctx.exception.returncode, 2)
        self.assertEqual(json.loads(out.getvalue())["code"], "RESOURCE_CAP")

    def test_probe(self):
        probes = run_json("probe-lefschetz", "--name", "simplex")
        self.assertFalse(probes[0]["applicable"])
