"""Built-in complexes with cyclic actions and their documented invariants."""
from dataclasses import dataclass, field
from functools import lru_cache

from django.core.exceptions import ValidationError

from .actions import CyclicAction, validate_action
from .cohomology import betti, isotypic_betti
from .complexes import SimplicialComplex
from .topology import classify


@dataclass
class CatalogEntry:
    name: str
    description: str
    complex: SimplicialComplex
    action: CyclicAction
    flags: dict
    free: bool
    very_free: bool
    f: tuple
    h: tuple
    betti: tuple
    betti_fine: dict = field(default_factory=dict)
    default_m: int = 0
    i_max: int = 0
    j_max: int = 0

    @property
    def p(self):
        return self.action.p

    @property
    def d(self):
        return self.complex.d

    @classmethod
    def from_documents(cls, name, K, action, m=0):
        """An ad-hoc entry whose metadata is computed rather than documented."""
        report = validate_action(K, action)
        return cls(
            name=name,
            description="Loaded from documents.",
            complex=K,
            action=action,
            flags=classify(K).flags,
            free=report.free,
            very_free=report.very_free,
            f=tuple(K.f_vector()),
            h=tuple(K.h_vector()),
            betti=tuple(betti(K)),
            betti_fine=dict(isotypic_betti(K, action).table),
            default_m=m,
            i_max=K.d,
            j_max=1,
        )

    def hochster_grid(self):
        return range(0, self.i_max + 1), range(0, self.j_max + 1)

    def as_dict(self):
        return {
            "name": self.name,
            "description": self.description,
            "n": self.complex.n,
            "facets": [list(self.complex.label(f)) for f in self.complex.sorted_facets()],
            "p": self.action.p,
            "perm": self.action.images(),
            "trivial": self.action.trivial,
            "flags": self.flags,
            "free": self.free,
            "very_free": self.very_free,
            "f": list(self.f),
            "h": list(self.h),
            "betti": list(self.betti),
            "betti_fine": {f"{i},{j}": v for (i, j), v in sorted(self.betti_fine.items())},
            "default_m": self.default_m,
            "hochster_grid": {"i_max": self.i_max, "j_max": self.j_max},
        }


def _flags(pure=True, connected=True, cm=False, buchsbaum=False, manifold=False, orientable=False):
    return {
        "pure": pure,
        "connected": connected,
        "cohen_macaulay": cm,
        "buchsbaum": buchsbaum,
        "homology_manifold": manifold,
        "orientable": orientable,
    }


def octahedron():
    facets = [[a, b, c] for a in (1, 4) for b in (2, 5) for c in (3, 6)]
    return SimplicialComplex.from_facets(facets, 6)


def icosahedron():
    top, bottom = 1, 12
    upper = [2 + i for i in range(5)]
    lower = [7 + i for i in range(5)]
    facets = []
    for i in range(5):
        nxt = (i + 1) % 5
        facets += [
            [top, upper[i], upper[nxt]],
            [upper[i], upper[nxt], lower[i]],
            [lower[i], lower[nxt], upper[nxt]],
            [bottom, lower[i], lower[nxt]],
        ]
    return SimplicialComplex.from_facets(facets, 12)


def cycle(n):
    return SimplicialComplex.from_facets([[i, i % n + 1] for i in range(1, n + 1)], n)


def torus7():
    facets = []
    for i in range(7):
        facets.append([i % 7 + 1, (i + 1) % 7 + 1, (i + 3) % 7 + 1])
        facets.append([i % 7 + 1, (i + 2) % 7 + 1, (i + 3) % 7 + 1])
    return SimplicialComplex.from_facets(facets, 7)


@lru_cache(maxsize=None)
def catalog():
    return [
        CatalogEntry(
            name="oct3",
            description="Boundary of the octahedron, antipodal action.",
            complex=octahedron(),
            action=CyclicAction.from_images(2, [4, 5, 6, 1, 2, 3]),
            flags=_flags(cm=True, buchsbaum=True, manifold=True, orientable=True),
            free=True, very_free=True,
            f=(1, 6, 12, 8), h=(1, 3, 3, 1), betti=(0, 0, 0, 1),
            betti_fine={(2, 1): 1},
            default_m=1, i_max=3, j_max=2,
        ),
        CatalogEntry(
            name="icosa",
            description="Boundary of the icosahedron, antipodal action.",
            complex=icosahedron(),
            action=CyclicAction.from_images(2, [12, 9, 10, 11, 7, 8, 5, 6, 2, 3, 4, 1]),
            flags=_flags(cm=True, buchsbaum=True, manifold=True, orientable=True),
            free=True, very_free=True,
            f=(1, 12, 30, 20), h=(1, 9, 9, 1), betti=(0, 0, 0, 1),
            betti_fine={(2, 1): 1},
            default_m=1, i_max=3, j_max=2,
        ),
        CatalogEntry(
            name="c9",
            description="The 9-gon, rotation by three steps.",
            complex=cycle(9),
            action=CyclicAction.from_images(3, [4, 5, 6, 7, 8, 9, 1, 2, 3]),
            flags=_flags(cm=True, buchsbaum=True, manifold=True, orientable=True),
            free=True, very_free=True,
            f=(1, 9, 9), h=(1, 7, 1), betti=(0, 0, 1),
            betti_fine={(1, 0): 1},
            default_m=0, i_max=2, j_max=2,
        ),
        CatalogEntry(
            name="torus7",
            description="The 7-vertex torus, shift i -> i+1.",
            complex=torus7(),
            action=CyclicAction.from_images(7, [2, 3, 4, 5, 6, 7, 1]),
            flags=_flags(buchsbaum=True, manifold=True, orientable=True),
            free=True, very_free=False,
            f=(1, 7, 21, 14), h=(1, 4, 10, -1), betti=(0, 0, 2, 1),
            betti_fine={(1, 0): 2, (2, 0): 1},
            default_m=0, i_max=3, j_max=1,
        ),
        CatalogEntry(
            name="triangle",
            description="Hollow triangle, rotation.",
            complex=cycle(3),
            action=CyclicAction.from_images(3, [2, 3, 1]),
            flags=_flags(cm=True, buchsbaum=True, manifold=True, orientable=True),
            free=True, very_free=False,
            f=(1, 3, 3), h=(1, 1, 1), betti=(0, 0, 1),
            betti_fine={(1, 0): 1},
            default_m=0, i_max=2, j_max=1,
        ),
        CatalogEntry(
            name="simplex",
            description="Full 2-simplex with the identity; not free.",
            complex=SimplicialComplex.from_facets([[1, 2, 3]], 3),
            action=CyclicAction.from_images(2, [1, 2, 3], trivial=True),
            flags=_flags(cm=True, buchsbaum=True),
            free=False, very_free=False,
            f=(1, 3, 3, 1), h=(1, 0, 0, 0), betti=(0, 0, 0, 0),
            default_m=0, i_max=0, j_max=0,
        ),
    ]


def get_entry(name):
    for entry in catalog():
        if entry.name == name:
            return entry
    raise ValidationError(
        f"No catalog entry named '{name}' (known: {', '.join(e.name for e in catalog())}).",
        code="unknown_entry",
    )
