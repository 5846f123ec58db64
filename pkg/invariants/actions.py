"""Cyclic group actions G = ℤ/pℤ on simplicial complexes.

An action is the image ``perm`` of every vertex under a fixed generator g.
Powers act on faces, exponent vectors and oriented faces; ``sign`` is the
parity of sorting (g(s_1), …, g(s_t)) for a face s_1 < … < s_t.
"""
import logging
from dataclasses import dataclass, field
from itertools import combinations

from django.core.exceptions import ValidationError
from sympy import isprime

from .complexes import bits, lex_key, mask_of

logger = logging.getLogger(__name__)


def _inversions(values):
    count = 0
    for a, b in combinations(values, 2):
        if a > b:
            count += 1
    return count


class ExponentVector(tuple):
    """U = (u_1, …, u_n) ∈ ℕ^n, stored 0-based."""

    __slots__ = ()

    @property
    def support(self):
        return mask_of(k for k, u in enumerate(self) if u)

    @property
    def norm(self):
        return sum(self)

    def act(self, action, power=1):
        image = [0] * len(self)
        for v, u in enumerate(self):
            image[action.apply_vertex(v, power)] = u
        return ExponentVector(image)

    def add_vertex(self, v, times=1):
        image = list(self)
        image[v] += times
        return ExponentVector(image)

    def __add__(self, other):
        return ExponentVector(a + b for a, b in zip(self, other))


class CyclicAction:
    """The generator g of ℤ/pℤ acting on vertices 0, …, n−1."""

    def __init__(self, p, perm, trivial=False):
        self.p = p
        self.perm = tuple(perm)
        self.trivial = trivial
        self.n = len(self.perm)
        self._powers = [tuple(range(self.n))]
        for _ in range(max(p, 1) - 1):
            previous = self._powers[-1]
            self._powers.append(tuple(self.perm[v] for v in previous))

    # -------------------------------------------------
    # Construction
    # -------------------------------------------------
    @classmethod
    def from_images(cls, p, images, trivial=False):
        """Build from 1-based images and validate order."""
        n = len(images)
        if sorted(images) != list(range(1, n + 1)):
            raise ValidationError(
                f"perm {list(images)} is not a permutation of [1, {n}].",
                code="not_a_permutation",
            )
        action = cls(p, [v - 1 for v in images], trivial=trivial)
        action.clean()
        return action

    @classmethod
    def identity(cls, n, p=1):
        return cls(p, range(n), trivial=True)

    def clean(self):
        if self.p != 1 and not isprime(self.p):
            raise ValidationError(f"p = {self.p} is not a prime.", code="bad_order")
        if not self.order_ok():
            raise ValidationError(
                f"perm does not have order exactly {self.p}.", code="bad_order"
            )

    def order_ok(self):
        identity = tuple(range(self.n))
        if self.perm == identity:
            return self.trivial or self.p == 1
        return self._apply_power(self.p) == identity

    def _apply_power(self, power):
        image = tuple(range(self.n))
        for _ in range(power):
            image = tuple(self.perm[v] for v in image)
        return image

    # -------------------------------------------------
    # Action on vertices, faces and vectors
    # -------------------------------------------------
    def apply_vertex(self, v, power=1):
        return self._powers[power % max(self.p, 1)][v]

    def apply_mask(self, mask, power=1):
        table = self._powers[power % max(self.p, 1)]
        image = 0
        for v in bits(mask):
            image |= 1 << table[v]
        return image

    def sign(self, mask, power=1):
        """ε(g^power, σ): parity of sorting the image of the ordered face."""
        table = self._powers[power % max(self.p, 1)]
        return -1 if _inversions([table[v] for v in bits(mask)]) & 1 else 1

    def power(self, k):
        return CyclicAction(self.p, self._powers[k % max(self.p, 1)], trivial=self.trivial)

    def images(self):
        return [v + 1 for v in self.perm]

    def __repr__(self):
        return f"CyclicAction(p={self.p}, perm={self.images()})"


@dataclass
class ActionReport:
    automorphism: bool
    order_ok: bool
    free: bool
    very_free: bool
    fixed_face: tuple = ()
    meeting_face: tuple = ()

    def as_dict(self):
        return {
            "automorphism": self.automorphism,
            "order_ok": self.order_ok,
            "free": self.free,
            "very_free": self.very_free,
        }


def validate_action(K, action):
    if action.n != K.n:
        raise ValidationError(
            f"Action on {action.n} vertices does not match n={K.n}.",
            code="size_mismatch",
        )
    for facet in K.sorted_facets():
        image = action.apply_mask(facet)
        if image not in K.facets:
            raise ValidationError(
                f"perm maps facet {list(K.label(facet))} to "
                f"{list(K.label(image))}, which is not a facet.",
                code="not_an_automorphism",
            )
    order_ok = action.order_ok()
    free, very_free = True, True
    fixed_face, meeting_face = (), ()
    powers = range(1, max(action.p, 1))
    for face in K.faces():
        if not face:
            continue
        for k in powers:
            image = action.apply_mask(face, k)
            if image == face:
                if free:
                    fixed_face = K.label(face)
                free = False
            elif K.is_face(face | image) and very_free:
                very_free = False
                meeting_face = K.label(face | image)
    if action.trivial and action.p > 1:
        free = bool(not K.vertex_mask)
    very_free = very_free and free
    report = ActionReport(True, order_ok, free, very_free, fixed_face, meeting_face)
    logger.debug("validate_action: %s", report)
    return report


def require_free(K, action):
    report = validate_action(K, action)
    if not report.free:
        raise ValidationError(
            f"The action is not free (face {list(report.fixed_face)} is fixed).",
            code="not_free",
        )
    return report


# -------------------------------------------------
# Orbits
# -------------------------------------------------
@dataclass
class OrbitDecomposition:
    orbits: list = field(default_factory=list)
    representatives: list = field(default_factory=list)
    free_flags: list = field(default_factory=list)

    def __len__(self):
        return len(self.orbits)

    def sizes(self):
        return [len(orbit) for orbit in self.orbits]


def orbits(items, act, p, key=None):
    """Partition ``items`` under ``act(item, power)``; representatives are minimal."""
    key = key or (lambda item: item)
    seen = set()
    decomposition = OrbitDecomposition()
    for item in sorted(items, key=key):
        if item in seen:
            continue
        orbit = []
        for k in range(max(p, 1)):
            image = act(item, k)
            if image not in orbit:
                orbit.append(image)
        seen.update(orbit)
        decomposition.orbits.append(orbit)
        decomposition.representatives.append(min(orbit, key=key))
        decomposition.free_flags.append(len(orbit) == max(p, 1))
    return decomposition


def vertex_orbits(K, action):
    return orbits(
        list(bits(K.vertex_mask)), lambda v, k: action.apply_vertex(v, k), action.p
    )


def face_orbits(K, action):
    return orbits(
        K.faces(), lambda f, k: action.apply_mask(f, k), action.p, key=lex_key
    )


# -------------------------------------------------
# T(Δ)_j
# -------------------------------------------------
def compositions(total, parts):
    """Tuples of ``parts`` positive integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def t_slice(K, j):
    """T(Δ)_j: exponent vectors with face support and norm j."""
    if not K.faces():
        return []
    if j == 0:
        return [ExponentVector((0,) * K.n)]
    vectors = []
    for size in range(1, min(j, K.d) + 1):
        for face in K.faces_of_size(size):
            vertices = list(bits(face))
            for parts in compositions(j, size):
                entries = [0] * K.n
                for v, u in zip(vertices, parts):
                    entries[v] = u
                vectors.append(ExponentVector(entries))
    return sorted(vectors)


def t_slice_orbits(K, action, j):
    return orbits(t_slice(K, j), lambda U, k: U.act(action, k), action.p)
