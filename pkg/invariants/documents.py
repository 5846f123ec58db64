"""JSON input documents for complexes, actions and l.s.o.p.'s."""
import json
from pathlib import Path

from django.core.exceptions import ValidationError

from .actions import CyclicAction, validate_action
from .complexes import build_complex


def read_json(path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise ValidationError(f"No such file: {path}", code="missing_file")
    except json.JSONDecodeError as e:
        raise ValidationError(f"{path} is not valid JSON: {e}", code="bad_document")


def complex_from_document(data):
    """{"n": int, "facets": [[int, ...], ...]} with 1-based vertices."""
    if not isinstance(data, dict) or "n" not in data or "facets" not in data:
        raise ValidationError(
            "A complex document needs the keys 'n' and 'facets'.", code="bad_document"
        )
    n = data["n"]
    facets = data["facets"]
    if not isinstance(n, int) or n < 0:
        raise ValidationError(f"'n' must be a nonnegative integer, got {n!r}.", code="bad_document")
    if not isinstance(facets, list) or not all(isinstance(f, list) for f in facets):
        raise ValidationError("'facets' must be a list of vertex lists.", code="bad_document")
    return build_complex(facets, n)


def action_from_document(data, K):
    """{"p": int, "perm": [int, ...]} giving g(v) for v = 1..n."""
    if not isinstance(data, dict) or "p" not in data or "perm" not in data:
        raise ValidationError(
            "An action document needs the keys 'p' and 'perm'.", code="bad_document"
        )
    action = CyclicAction.from_images(int(data["p"]), list(data["perm"]), bool(data.get("trivial")))
    validate_action(K, action)
    return action


def load_complex(path):
    return complex_from_document(read_json(path))


def load_action(path, K):
    return action_from_document(read_json(path), K)


def complex_to_document(K):
    return {"n": K.n, "facets": [list(K.label(f)) for f in K.sorted_facets()]}
