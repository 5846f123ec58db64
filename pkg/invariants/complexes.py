"""Finite simplicial complexes on the vertex set {0, …, n−1}.

Faces are bit masks. Documents and reports number vertices from 1; the
conversion happens in ``from_facets`` and ``label`` only.
"""
import logging
import threading
from math import comb

from django.core.exceptions import ValidationError

logger = logging.getLogger(__name__)

MAX_VERTICES = 64


def bits(mask):
    """Vertex indices of ``mask`` in increasing order."""
    index = 0
    while mask:
        if mask & 1:
            yield index
        mask >>= 1
        index += 1


def mask_of(vertices):
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def lex_key(mask):
    return tuple(bits(mask))


def submasks(mask):
    """Every subset of ``mask``, the empty set included."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def insertion_sign(mask, vertex):
    """(−1)^(position of ``vertex`` in the sorted face ``mask | {vertex}``)."""
    below = mask & ((1 << vertex) - 1)
    return -1 if below.bit_count() & 1 else 1


def _maximal(masks):
    ordered = sorted(set(masks), key=lambda m: -m.bit_count())
    kept = []
    for mask in ordered:
        if not any(mask & big == mask for big in kept):
            kept.append(mask)
    return frozenset(kept)


class SimplicialComplex:
    """A simplicial complex given by its facets.

    The void complex (no faces at all) and {∅} are different objects: the
    first has no facets, the second has the single facet 0.
    """

    def __init__(self, n, facets):
        if not 0 <= n <= MAX_VERTICES:
            raise ValidationError(
                f"Complexes are limited to {MAX_VERTICES} vertices, got n={n}.",
                code="too_many_vertices",
            )
        self.n = n
        self.facets = _maximal(facets)
        self._lock = threading.RLock()
        self._faces = None
        self._by_size = {}

    # -------------------------------------------------
    # Construction
    # -------------------------------------------------
    @classmethod
    def from_facets(cls, facets, n):
        """Build from 1-based vertex lists, merging comparable facets."""
        masks = []
        for facet in facets:
            for v in facet:
                if not isinstance(v, int) or not 1 <= v <= n:
                    raise ValidationError(
                        f"Vertex {v!r} of facet {list(facet)} is outside [1, {n}].",
                        code="vertex_out_of_range",
                    )
            masks.append(mask_of(v - 1 for v in facet))
        return cls(n, masks)

    @classmethod
    def from_faces(cls, n, faces):
        return cls(n, _maximal(faces) if faces else ())

    @classmethod
    def void(cls, n):
        return cls(n, ())

    @classmethod
    def empty(cls, n):
        return cls(n, (0,))

    # -------------------------------------------------
    # Faces
    # -------------------------------------------------
    @property
    def is_void(self):
        return not self.facets

    def faces(self):
        with self._lock:
            if self._faces is None:
                found = set()
                for facet in self.facets:
                    if facet not in found:
                        found.update(submasks(facet))
                self._faces = frozenset(found)
            return self._faces

    def is_face(self, mask):
        return mask in self.faces()

    def faces_of_size(self, size):
        """Faces with ``size`` vertices, in lexicographic order."""
        with self._lock:
            if size not in self._by_size:
                self._by_size[size] = sorted(
                    (f for f in self.faces() if f.bit_count() == size), key=lex_key
                )
            return self._by_size[size]

    @property
    def d(self):
        """dim + 1, i.e. the size of the largest facet."""
        return max((f.bit_count() for f in self.facets), default=0)

    @property
    def dim(self):
        return self.d - 1

    @property
    def vertex_mask(self):
        mask = 0
        for facet in self.facets:
            mask |= facet
        return mask

    def sorted_facets(self):
        return sorted(self.facets, key=lex_key)

    def is_pure(self):
        return len({f.bit_count() for f in self.facets}) <= 1

    def is_subcomplex(self, other):
        """True when ``other`` is a subcomplex of this complex."""
        return other.n == self.n and all(self.is_face(f) for f in other.facets)

    def label(self, mask):
        """1-based vertex tuple of a face."""
        return tuple(v + 1 for v in bits(mask))

    def _require_face(self, sigma):
        if not self.is_face(sigma):
            raise ValidationError(
                f"{list(self.label(sigma))} is not a face of the complex.",
                code="not_a_face",
            )

    # -------------------------------------------------
    # Counting
    # -------------------------------------------------
    def f_vector(self):
        """(f_{-1}, f_0, …, f_{d-1})."""
        counts = [0] * (self.d + 1)
        for face in self.faces():
            counts[face.bit_count()] += 1
        return tuple(counts) if self.faces() else ()

    def h_vector(self):
        f = self.f_vector()
        d = self.d
        return tuple(
            sum((-1) ** (i - j) * comb(d - j, i - j) * f[j] for j in range(i + 1))
            for i in range(d + 1)
        ) if f else ()

    def reduced_euler(self):
        """χ̃ = Σ_{i ≥ -1} (−1)^i f_i."""
        return sum((-1) ** (k - 1) * count for k, count in enumerate(self.f_vector()))

    def components(self):
        """Connected components of the 1-skeleton (0 for void and {∅})."""
        parent = {v: v for v in bits(self.vertex_mask)}

        def find(v):
            while parent[v] != v:
                parent[v] = parent[parent[v]]
                v = parent[v]
            return v

        for edge in self.faces_of_size(2):
            a, b = bits(edge)
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
        return len({find(v) for v in parent})

    # -------------------------------------------------
    # Local structure
    # -------------------------------------------------
    def star(self, sigma):
        self._require_face(sigma)
        return SimplicialComplex(self.n, [f for f in self.facets if f & sigma == sigma])

    def link(self, sigma):
        self._require_face(sigma)
        return SimplicialComplex(
            self.n, [f & ~sigma for f in self.facets if f & sigma == sigma]
        )

    def costar(self, sigma):
        """Faces not containing ``sigma``; void when ``sigma`` is ∅."""
        self._require_face(sigma)
        return SimplicialComplex.from_faces(
            self.n, [f for f in self.faces() if f & sigma != sigma]
        )

    # -------------------------------------------------
    # Dunder
    # -------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.n == other.n and self.facets == other.facets

    def __hash__(self):
        return hash((self.n, self.facets))

    def __getstate__(self):
        return {"n": self.n, "facets": self.facets}

    def __setstate__(self, state):
        self.__init__(state["n"], state["facets"])

    def __repr__(self):
        shown = [list(self.label(f)) for f in self.sorted_facets()]
        return f"SimplicialComplex(n={self.n}, facets={shown})"


def build_complex(facets, n):
    return SimplicialComplex.from_facets(facets, n)
