"""JSON and plain-text rendering of results."""
import dataclasses
import json

from django.core.serializers.json import DjangoJSONEncoder
from django.template.loader import render_to_string
from sympy import QQ

from .cyclotomic import CyclotomicScalar, rational_str


class InvariantsJSONEncoder(DjangoJSONEncoder):
    """Exact rationals as "a/b", cyclotomic scalars as coordinate lists."""

    def default(self, o):
        if QQ.of_type(o):
            text = rational_str(o)
            return int(text) if "/" not in text else text
        if isinstance(o, CyclotomicScalar):
            return o.to_json()
        if hasattr(o, "as_dict"):
            return o.as_dict()
        if dataclasses.is_dataclass(o) and not isinstance(o, type):
            return dataclasses.asdict(o)
        if isinstance(o, (set, frozenset)):
            return sorted(o)
        return super().default(o)


def dumps(obj, indent=2):
    return json.dumps(obj, cls=InvariantsJSONEncoder, indent=indent, ensure_ascii=False)


def plain(obj):
    """The JSON view of ``obj`` as Python lists, dicts and scalars."""
    return json.loads(dumps(obj, indent=None))


def render_text(template, **context):
    return render_to_string(f"invariants/{template}", {k: plain(v) for k, v in context.items()})
