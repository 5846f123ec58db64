"""Topological classification of a complex from the Betti numbers of its links."""
import logging
from dataclasses import dataclass

from .cohomology import _at, betti

logger = logging.getLogger(__name__)


@dataclass
class ClassificationReport:
    pure: bool
    connected: bool
    cohen_macaulay: bool
    buchsbaum: bool
    homology_manifold: bool
    orientable: bool
    reduced_euler: int

    def as_dict(self):
        return {
            "pure": self.pure,
            "connected": self.connected,
            "cohen_macaulay": self.cohen_macaulay,
            "buchsbaum": self.buchsbaum,
            "homology_manifold": self.homology_manifold,
            "orientable": self.orientable,
            "reduced_euler": self.reduced_euler,
        }

    @property
    def flags(self):
        return {k: v for k, v in self.as_dict().items() if k != "reduced_euler"}


def _acyclic_below_top(values, top):
    """β̃_i = 0 for every i < top (values indexed from −1)."""
    return all(not _at(values, i) for i in range(-1, top))


def _is_sphere(values, dim):
    return all(_at(values, i) == (1 if i == dim else 0) for i in range(-1, len(values) - 1))


def classify(K):
    faces = sorted(K.faces(), key=lambda f: f.bit_count())
    link_betti = {sigma: betti(K.link(sigma)) for sigma in faces}
    pure = K.is_pure()
    d = K.d

    def link_dim(sigma):
        return d - sigma.bit_count() - 1

    nonempty = [sigma for sigma in faces if sigma]
    cohen_macaulay = pure and all(
        _acyclic_below_top(link_betti[sigma], link_dim(sigma)) for sigma in faces
    )
    buchsbaum = pure and all(
        _acyclic_below_top(link_betti[sigma], link_dim(sigma)) for sigma in nonempty
    )
    manifold = pure and bool(nonempty) and all(
        _is_sphere(link_betti[sigma], link_dim(sigma)) for sigma in nonempty
    )
    components = K.components()
    top = _at(link_betti.get(0, betti(K)), d - 1)
    # H̃ and H agree in positive degrees; for d = 1 the top group is H^0
    unreduced_top = top + 1 if d == 1 and K.vertex_mask else top
    orientable = manifold and unreduced_top == components
    report = ClassificationReport(
        pure=pure,
        connected=components == 1,
        cohen_macaulay=cohen_macaulay,
        buchsbaum=buchsbaum,
        homology_manifold=manifold,
        orientable=orientable,
        reduced_euler=K.reduced_euler(),
    )
    logger.debug("classify %r: %s", K, report.as_dict())
    return report
