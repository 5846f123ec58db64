"""Typed access to the ``ESR_*`` settings.

Library code reads configuration only through these helpers so that CLI
flags can override a single call without touching the environment.
"""
from dataclasses import dataclass

from django.conf import settings
from django.core.exceptions import ValidationError


@dataclass(frozen=True)
class Caps:
    n: int
    j: int

    def as_dict(self):
        return {"n": self.n, "j": self.j}


def caps(override=None):
    if override is not None:
        return override
    values = getattr(settings, "ESR_CAPS", {})
    return Caps(n=int(values.get("n", 14)), j=int(values.get("j", 3)))


def parse_caps(text, base=None):
    """Parse ``n=..,j=..`` on top of ``base`` (defaults to settings)."""
    current = caps(base).as_dict()
    for chunk in filter(None, (part.strip() for part in text.split(","))):
        key, sep, value = chunk.partition("=")
        key = key.strip()
        if not sep or key not in current:
            raise ValidationError(
                f"Bad cap '{chunk}', expected n=<int> or j=<int>.",
                code="bad_caps",
            )
        try:
            current[key] = int(value)
        except ValueError:
            raise ValidationError(
                f"Cap '{key}' needs an integer, got '{value}'.",
                code="bad_caps",
            )
    return Caps(**current)


def seed(override=None):
    if override is not None:
        return int(override)
    return int(getattr(settings, "ESR_SEED", 0))


def lsop_attempts():
    return int(getattr(settings, "ESR_LSOP_ATTEMPTS", 32))


def coefficient_bound():
    return int(getattr(settings, "ESR_COEFFICIENT_BOUND", 97))


def fast_mod(override=None):
    if override is not None:
        return bool(override)
    return bool(getattr(settings, "ESR_FAST_MOD", False))


def workers():
    return max(1, int(getattr(settings, "ESR_WORKERS", 1)))


def assert_complexes():
    return bool(getattr(settings, "ESR_ASSERT_COMPLEXES", True))
