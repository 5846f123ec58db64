import json
import tempfile
from pathlib import Path

from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from sympy import QQ

from invariants.catalog import CatalogEntry, octahedron
from invariants.documents import (
    action_from_document, complex_from_document, complex_to_document, load_action, load_complex,
    read_json,
)
from invariants.reports import dumps, plain


class DocumentTests(SimpleTestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)
        self.root = Path(self.tmp.name)

    def write(self, name, data):
        path = self.root / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return path

    def test_complex_round_trip(self):
        path = self.write("oct.json", complex_to_document(octahedron()))
        self.assertEqual(load_complex(path), octahedron())

    def test_action_document(self):
        K = load_complex(self.write("oct.json", complex_to_document(octahedron())))
        action = load_action(self.write("anti.json", {"p": 2, "perm": [4, 5, 6, 1, 2, 3]}), K)
        self.assertEqual(action.p, 2)
        self.assertEqual(action.images(), [4, 5, 6, 1, 2, 3])

    def test_action_must_preserve_faces(self):
        with self.assertRaises(ValidationError) as ctx:
            action_from_document({"p": 2, "perm": [2, 1, 3, 4, 5, 6]}, octahedron())
        self.assertEqual(ctx.exception.code, "not_an_automorphism")

    def test_missing_keys(self):
        with self.assertRaises(ValidationError) as ctx:
            complex_from_document({"facets": [[1, 2]]})
        self.assertEqual(ctx.exception.code, "bad_document")
        with self.assertRaises(ValidationError):
            action_from_document({"perm": [1]}, octahedron())

    def test_bad_facets(self):
        with self.assertRaises(ValidationError) as ctx:
            complex_from_document({"n": 3, "facets": [1, 2]})
        self.assertEqual(ctx.exception.code, "bad_document")

    def test_missing_file(self):
        with self.assertRaises(ValidationError) as ctx:
            read_json(self.root / "nope.json")
        self.assertEqual(ctx.exception.code, "missing_file")

    def test_not_json(self):
        with self.assertRaises(ValidationError) as ctx:
            read_json(self.write("broken.json", "{facets"))
        self.assertEqual(ctx.exception.code, "bad_document")


class AdHocEntryTests(SimpleTestCase):

    def test_entry_from_documents(self):
        K = octahedron()
        action = action_from_document({"p": 2, "perm": [4, 5, 6, 1, 2, 3]}, K)
        entry = CatalogEntry.from_documents("mine", K, action, m=1)
        self.assertTrue(entry.free)
        self.assertEqual(entry.h, (1, 3, 3, 1))
        self.assertEqual(entry.betti_fine, {(2, 1): 1})
        self.assertEqual(plain(entry)["betti_fine"], {"2,1": 1})


class EncoderTests(SimpleTestCase):

    def test_rationals(self):
        self.assertEqual(json.loads(dumps([QQ(1, 2), QQ(3)])), ["1/2", 3])

    def test_sets_are_sorted(self):
        self.assertEqual(json.loads(dumps({"s": {3, 1, 2}})), {"s": [1, 2, 3]})
