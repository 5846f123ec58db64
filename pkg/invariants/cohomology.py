"""Cochain complexes, (relative) cohomology and isotypic Betti numbers.

Cochains are augmented: the empty face spans degree −1, so C^·(Δ, void)
computes reduced cohomology. A cochain basis element δ_τ is moved by g to
ε(g, τ)·δ_{gτ}.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache

from django.core.exceptions import ValidationError

from . import conf
from .actions import require_free, t_slice, t_slice_orbits, validate_action
from .complexes import bits, insertion_sign, lex_key
from .cyclotomic import field_for
from .exceptions import ComplexAssertionError
from .linalg import EchelonBasis, SparseMatrix, eigenspace_dim, kernel_basis, rank, solve

logger = logging.getLogger(__name__)

QQ_FIELD = field_for(1)


class CochainComplexRep:
    """A cochain complex with signed-permutation bases.

    ``labels[t]`` lists the basis of degree t, ``coboundary[b]`` maps a
    basis label to ``{target: integer coefficient}``, and ``act(b, k)``
    returns ``(label, sign)`` with g^k·b = sign·label.
    """

    def __init__(self, labels, coboundary, act=None, p=1):
        self.labels = {t: list(ls) for t, ls in labels.items()}
        self.index = {t: {b: k for k, b in enumerate(ls)} for t, ls in self.labels.items()}
        self.coboundary = coboundary
        self.act = act
        self.p = p if act is not None else 1

    @property
    def degrees(self):
        return sorted(self.labels)

    def dim(self, t):
        return len(self.labels.get(t, ()))

    def matrix(self, t, field=QQ_FIELD):
        """δ_t : C^t → C^{t+1}."""
        rows = self.index.get(t + 1, {})
        entries = {}
        for col, label in enumerate(self.labels.get(t, ())):
            for target, value in self.coboundary[label].items():
                entries[(rows[target], col)] = value
        return SparseMatrix(len(rows), self.dim(t), entries, field)

    def rank(self, t, modular=False):
        if not self.dim(t) or not self.dim(t + 1):
            return 0
        return rank(self.matrix(t), modular=modular)

    def cohomology_dims(self, modular=False):
        ranks = {t: self.rank(t, modular) for t in self.degrees}
        return {t: self.dim(t) - ranks[t] - ranks.get(t - 1, 0) for t in self.degrees}

    def cohomology_dim(self, t, modular=False):
        if not self.dim(t):
            return 0
        return self.dim(t) - self.rank(t, modular) - self.rank(t - 1, modular)

    # -------------------------------------------------
    # Build-time assertions
    # -------------------------------------------------
    def assert_square_zero(self):
        for t in self.degrees:
            for label in self.labels[t]:
                total = {}
                for middle, a in self.coboundary[label].items():
                    for target, b in self.coboundary[middle].items():
                        total[target] = total.get(target, 0) + a * b
                if any(total.values()):
                    raise ComplexAssertionError(f"d∘d ≠ 0 at basis element {label!r}.")

    def assert_equivariant(self):
        if self.act is None:
            return
        for t in self.degrees:
            for label in self.labels[t]:
                image, sign = self.act(label, 1)
                if image not in self.index.get(t, {}):
                    raise ComplexAssertionError(f"g moves {label!r} out of degree {t}.")
                lhs = {}
                for target, value in self.coboundary[label].items():
                    moved, s = self.act(target, 1)
                    lhs[moved] = lhs.get(moved, 0) + s * value
                rhs = {target: sign * value for target, value in self.coboundary[image].items()}
                if {k: v for k, v in lhs.items() if v} != rhs:
                    raise ComplexAssertionError(f"g does not commute with d at {label!r}.")
                current, total_sign = label, 1
                for _ in range(self.p):
                    current, s = self.act(current, 1)
                    total_sign *= s
                if current != label or total_sign != 1:
                    raise ComplexAssertionError(f"g^{self.p} is not the identity at {label!r}.")

    def check(self):
        if conf.assert_complexes():
            self.assert_square_zero()
            self.assert_equivariant()
        return self

    # -------------------------------------------------
    # Action on cochains
    # -------------------------------------------------
    def act_vector(self, vector, t, power=1):
        """g^power applied to a coordinate vector of degree t."""
        labels = self.labels[t]
        index = self.index[t]
        image = {}
        for position, value in vector.items():
            moved, sign = self.act(labels[position], power)
            image[index[moved]] = value * sign
        return image

    # -------------------------------------------------
    # Isotypic splitting by orbit sums
    # -------------------------------------------------
    def _orbit_basis(self, t):
        """Per character: list of (representative, members) with members (label, sign)."""
        p = max(self.p, 1)
        per_character = [[] for _ in range(p)]
        seen = set()
        for label in self.labels.get(t, ()):
            if label in seen:
                continue
            if self.act is None:
                per_character[0].append((label, [(label, 1)]))
                seen.add(label)
                continue
            members = [self.act(label, k) for k in range(p)]
            if p > 1 and members[1][0] == label:
                sign = members[1][1]
                if sign == 1:
                    per_character[0].append((label, [(label, 1)]))
                elif p == 2:
                    per_character[1].append((label, [(label, 1)]))
                else:
                    raise ComplexAssertionError(f"{label!r} is fixed with sign −1 for odd p.")
            else:
                for c in range(p):
                    per_character[c].append((label, members))
            seen.update(m for m, _ in members)
        return per_character

    def isotypic_dims(self):
        """{t: [dim H^t restricted to character c for c in range(p)]}."""
        p = max(self.p, 1)
        field = field_for(p)
        bases = {t: self._orbit_basis(t) for t in self.degrees}
        ranks = {}
        for t in self.degrees:
            for c in range(p):
                source = bases[t][c]
                target = bases.get(t + 1, [[] for _ in range(p)])[c]
                if not source or not target:
                    ranks[(t, c)] = 0
                    continue
                rows = {rep: k for k, (rep, _) in enumerate(target)}
                columns = []
                for rep, members in source:
                    column = {}
                    for k, (member, sign) in enumerate(members):
                        coefficient = field.zeta(-c * k) * sign
                        for image, value in self.coboundary[member].items():
                            row = rows.get(image)
                            if row is not None:
                                column[row] = column.get(row, field.zero) + coefficient * value
                    columns.append(column)
                ranks[(t, c)] = rank(SparseMatrix.from_columns(columns, len(rows), field))
        return {
            t: [
                len(bases[t][c]) - ranks[(t, c)] - ranks.get((t - 1, c), 0)
                for c in range(p)
            ]
            for t in self.degrees
        }


# -------------------------------------------------
# Simplicial cochain complexes
# -------------------------------------------------
def _relative_faces(K, gamma):
    if gamma is None:
        return K.faces()
    if not K.is_subcomplex(gamma):
        raise ValidationError("Γ is not a subcomplex of the complex.", code="not_subcomplex")
    if gamma == K:
        return frozenset()
    if not any(gamma.faces() - {0}):
        return K.faces()
    return K.faces() - gamma.faces()


def cochain_complex(K, gamma=None, action=None):
    """C^·(K, Γ) with degrees −1, …, dim K; ``gamma`` None means the void complex."""
    faces = _relative_faces(K, gamma)
    labels = {t: [] for t in range(-1, K.d)}
    for face in sorted(faces, key=lex_key):
        labels[face.bit_count() - 1].append(face)
    vertices = list(bits(K.vertex_mask))
    coboundary = {}
    for face in faces:
        coboundary[face] = {
            face | (1 << v): insertion_sign(face, v)
            for v in vertices
            if not face >> v & 1 and (face | (1 << v)) in faces
        }
    act = None
    if action is not None:
        def act(face, power):
            return action.apply_mask(face, power), action.sign(face, power)
    return CochainComplexRep(labels, coboundary, act, action.p if action else 1)


def betti(K):
    """Reduced Betti numbers [β_{−1}, β_0, …, β_{d−1}]."""
    dims = cochain_complex(K).cohomology_dims()
    return [dims.get(t, 0) for t in range(-1, max(K.d, 0))]


def unreduced_betti(K, i):
    value = _at(betti(K), i)
    return value + 1 if i == 0 and K.faces_of_size(1) else value


def relative_cohomology_dims(K, gamma):
    """[dim H^i(K, Γ) for i = −1, …, d−1]."""
    dims = cochain_complex(K, gamma).cohomology_dims()
    return [dims.get(t, 0) for t in range(-1, max(K.d, 0))]


@lru_cache(maxsize=4096)
def costar_cohomology(K, sigma):
    """dims of H^·(K, cost σ), indexed from −1."""
    if sigma == 0:
        return tuple(betti(K))
    return tuple(relative_cohomology_dims(K, K.costar(sigma)))


def _at(values, i):
    return values[i + 1] if 0 <= i + 1 < len(values) else 0


# -------------------------------------------------
# Isotypic Betti numbers
# -------------------------------------------------
@dataclass
class IsotypicBettiTable:
    p: int
    d: int
    table: dict = field(default_factory=dict)

    def get(self, i, j):
        return self.table.get((i, j % max(self.p, 1)), 0)

    def row(self, i):
        return tuple(self.get(i, j) for j in range(max(self.p, 1)))

    def total(self, i):
        return sum(self.row(i))

    def degrees(self):
        return range(-1, max(self.d, 0))

    def as_dict(self):
        return {str(i): list(self.row(i)) for i in self.degrees()}


def cohomology_basis(complex_rep, t):
    """Cocycles representing a basis of H^t, plus a basis of the coboundaries."""
    size = complex_rep.dim(t)
    if not size:
        return [], []
    cocycles = kernel_basis(complex_rep.matrix(t))
    echelon = EchelonBasis(QQ_FIELD)
    boundaries = []
    if complex_rep.dim(t - 1):
        for column in complex_rep.matrix(t - 1).column_dicts():
            if column and echelon.insert(column):
                boundaries.append(column)
    representatives = [z for z in cocycles if echelon.insert(z)]
    return representatives, boundaries


def induced_action_matrix(complex_rep, t, representatives, boundaries):
    """Matrix of g on H^t in the basis ``representatives``."""
    r = len(representatives)
    basis = SparseMatrix.from_columns(representatives + boundaries, complex_rep.dim(t), QQ_FIELD)
    images = [complex_rep.act_vector(h, t) for h in representatives]
    coordinates = solve(basis, images)
    columns = [{k: v for k, v in x.items() if k < r} for x in coordinates]
    return SparseMatrix.from_columns(columns, r, QQ_FIELD)


def isotypic_betti(K, action):
    """β_i^j via the matrix of g on a computed basis of H̃^i(K)."""
    validate_action(K, action)
    p = max(action.p, 1)
    complex_rep = cochain_complex(K, action=action).check()
    table = IsotypicBettiTable(p=p, d=K.d)
    for t in range(-1, K.d):
        representatives, boundaries = cohomology_basis(complex_rep, t)
        if not representatives:
            continue
        matrix = induced_action_matrix(complex_rep, t, representatives, boundaries)
        for c in range(p):
            value = eigenspace_dim(matrix, c, p)
            if value:
                table.table[(t, c)] = value
    logger.debug("isotypic_betti: %s", table.as_dict())
    return table


def isotypic_betti_orbit_sums(K, action):
    """Same table as ``isotypic_betti``, from orbit-sum bases of the cochains."""
    validate_action(K, action)
    dims = cochain_complex(K, action=action).check().isotypic_dims()
    table = IsotypicBettiTable(p=max(action.p, 1), d=K.d)
    for t, row in dims.items():
        for c, value in enumerate(row):
            if value:
                table.table[(t, c)] = value
    return table


# -------------------------------------------------
# Right-hand side of the refined Hochster formula
# -------------------------------------------------
def hochster_rhs_total(K, i, j):
    """Σ_{U ∈ T(Δ)_j} dim H^{i−1}(Δ, cost s(U))."""
    return sum(_at(costar_cohomology(K, U.support), i - 1) for U in t_slice(K, j))


def hochster_rhs_fine(K, action, i, j, betti_table=None):
    """Per-character dims of ⊕_{U ∈ T(Δ)_j} H^{i−1}(Δ, cost s(U))."""
    require_free(K, action)
    p = max(action.p, 1)
    if j == 0:
        table = betti_table or isotypic_betti(K, action)
        return table.row(i - 1)
    decomposition = t_slice_orbits(K, action, j)
    total = 0
    per_character = 0
    for rep, size in zip(decomposition.representatives, decomposition.sizes()):
        value = _at(costar_cohomology(K, rep.support), i - 1)
        total += size * value
        per_character += value
    if total != p * per_character:
        raise ComplexAssertionError(
            f"T(Δ)_{j} has an orbit of size ≠ {p} under a free action."
        )
    return (per_character,) * p


def hochster_rhs_direct(K, action, i, j):
    """Isotypic dims of ⊕_U C^·(Δ, cost s(U)) at degree i−1, by orbit sums."""
    require_free(K, action)
    faces = K.faces()
    vertices = list(bits(K.vertex_mask))
    labels = {t: [] for t in range(-1, K.d)}
    coboundary = {}
    for U in t_slice(K, j):
        support = U.support
        for face in sorted(faces, key=lex_key):
            if face & support != support:
                continue
            labels[face.bit_count() - 1].append((U, face))
            coboundary[(U, face)] = {
                (U, face | (1 << v)): insertion_sign(face, v)
                for v in vertices
                if not face >> v & 1 and (face | (1 << v)) in faces
            }

    def act(label, power):
        U, face = label
        return (U.act(action, power), action.apply_mask(face, power)), action.sign(face, power)

    complex_rep = CochainComplexRep(labels, coboundary, act, action.p).check()
    dims = complex_rep.isotypic_dims()
    return tuple(dims.get(i - 1, [0] * max(action.p, 1)))
