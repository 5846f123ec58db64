"""Fine local cohomology of 𝕜[Δ] from the Koszul Hom complex.

H_𝔪^i(𝕜[Δ])_{−j} is the i-th cohomology of Hom_A(K_·, 𝕜[Δ])_{−j}, where K_·
is the Koszul complex on x_1^{j+1}, …, x_n^{j+1}. A basis element φ_{σ,μ}
sends e_σ to the monomial μ with deg μ = |σ|(j+1) − j. The differential
keeps the ℤ^n-degree a = deg μ − (j+1)·1_σ, so the complex splits into
strands indexed by a; g carries strand a to strand g·a.

Inside a strand, write N = {a_k < 0}, E = {a_k = −(j+1)}, P = {a_k > 0} and
Z for the rest. Its basis is σ = N ∪ S_P ∪ S_Z with S_P ⊆ P arbitrary and
P ∪ (N∖E) ∪ S_Z a face. The strand complex depends on a only through
(N, E, P), so cohomology is cached on those sets.
"""
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from math import comb

from . import conf
from .actions import compositions, require_free
from .cohomology import CochainComplexRep, hochster_rhs_fine, hochster_rhs_total, isotypic_betti
from .complexes import bits, insertion_sign, lex_key, mask_of, submasks
from .exceptions import ComplexAssertionError, ResourceCapExceeded

logger = logging.getLogger(__name__)


def ring_dimension(K, degree):
    """dim 𝕜[Δ]_degree = Σ_{σ ≠ ∅} C(degree − 1, |σ| − 1)."""
    if degree < 0 or not K.faces():
        return 0
    if degree == 0:
        return 1
    return sum(comb(degree - 1, face.bit_count() - 1) for face in K.faces() if face)


def hom_dimension(K, t, j):
    """dim Hom_A(K_t, 𝕜[Δ])_{−j} = C(n, t) · dim 𝕜[Δ]_{t(j+1)−j}."""
    return comb(K.n, t) * ring_dimension(K, t * (j + 1) - j)


def check_caps(K, j, caps=None):
    limits = conf.caps(caps)
    if K.n > limits.n or j > limits.j:
        raise ResourceCapExceeded(
            f"n={K.n}, j={j} exceeds the caps n≤{limits.n}, j≤{limits.j}.",
            n=K.n, j=j, caps=limits.as_dict(),
        )


# -------------------------------------------------
# Strands
# -------------------------------------------------
@dataclass(frozen=True)
class Strand:
    degree: tuple  # a ∈ ℤ^n
    negative: int  # N
    extreme: int  # E ⊆ N
    positive: int  # P

    @property
    def shape(self):
        return (self.negative, self.extreme, self.positive)


def _strand_from(n, j, negative_values, positive_values):
    degree = [0] * n
    negative = extreme = positive = 0
    for v, size in negative_values:
        degree[v] = -size
        negative |= 1 << v
        if size == j + 1:
            extreme |= 1 << v
    for v, size in positive_values:
        degree[v] = size
        positive |= 1 << v
    return Strand(tuple(degree), negative, extreme, positive)


def _zero_part_options(K, negative, extreme, positive):
    """Sets S_Z with P ∪ (N∖E) ∪ S_Z a face and S_Z disjoint from N ∪ P."""
    base = positive | (negative & ~extreme)
    blocked = negative | positive
    options = set()
    for face in K.faces():
        if face & base == base and not face & blocked & ~base:
            options.add(face & ~base)
    return sorted(options, key=lambda m: (m.bit_count(), lex_key(m)))


def strands(K, t, j):
    """All strands of Hom_A(K_·, 𝕜[Δ])_{−j} with a nonzero degree-t part."""
    n = K.n
    faces = K.faces()
    nonempty = [f for f in faces if f]
    found = []
    for size in range(0, min(t, n) + 1):
        for negative in combinations(range(n), size):
            for values in product(range(1, j + 2), repeat=size):
                excess = sum(values) - j
                if excess < 0:
                    continue
                pairs = list(zip(negative, values))
                negative_mask = mask_of(negative)
                base = mask_of(v for v, a in pairs if a < j + 1)
                if excess == 0:
                    candidates = [0] if base in faces else []
                else:
                    candidates = [
                        f for f in nonempty
                        if not f & negative_mask and f.bit_count() <= excess and (f | base) in faces
                    ]
                for positive in candidates:
                    vertices = list(bits(positive))
                    for parts in compositions(excess, len(vertices)):
                        strand = _strand_from(n, j, pairs, zip(vertices, parts))
                        if _has_degree(K, strand, t):
                            found.append(strand)
    return found


def _has_degree(K, strand, t):
    low = strand.negative.bit_count()
    if t < low:
        return False
    options = _zero_part_options_cached(K, *strand.shape)
    top = low + strand.positive.bit_count() + max((o.bit_count() for o in options), default=0)
    if t > top or not options:
        return False
    spare = t - low
    return any(
        o.bit_count() <= spare <= o.bit_count() + strand.positive.bit_count() for o in options
    )


@lru_cache(maxsize=65536)
def _zero_part_options_cached(K, negative, extreme, positive):
    return tuple(_zero_part_options(K, negative, extreme, positive))


def strand_complex(K, strand, action=None):
    """The strand as a cochain complex on labels σ, graded by |σ|."""
    negative, extreme, positive = strand.shape
    options = _zero_part_options_cached(K, negative, extreme, positive)
    option_set = set(options)
    labels = {}
    for zero_part in options:
        for positive_part in submasks(positive):
            sigma = negative | positive_part | zero_part
            labels.setdefault(sigma.bit_count(), []).append(sigma)
    free_vertices = [v for v in range(K.n) if not (negative >> v) & 1]
    coboundary = {}
    for sigma_list in labels.values():
        for sigma in sigma_list:
            zero_part = sigma & ~negative & ~positive
            targets = {}
            for v in free_vertices:
                if (sigma >> v) & 1:
                    continue
                if (positive >> v) & 1 or (zero_part | (1 << v)) in option_set:
                    targets[sigma | (1 << v)] = insertion_sign(sigma, v)
            coboundary[sigma] = targets
    for t in labels:
        labels[t].sort(key=lex_key)
    for t in range(min(labels, default=0), max(labels, default=-1) + 2):
        labels.setdefault(t, [])
    act = None
    if action is not None:
        def act(sigma, power):
            return action.apply_mask(sigma, power), action.sign(sigma, power)
    return CochainComplexRep(labels, coboundary, act, action.p if action else 1)


def act_on_degree(action, degree, power=1):
    image = [0] * len(degree)
    for v, value in enumerate(degree):
        image[action.apply_vertex(v, power)] = value
    return tuple(image)


@lru_cache(maxsize=65536)
def _strand_cohomology(K, shape, t, modular):
    strand = Strand((), *shape)
    complex_rep = strand_complex(K, strand)
    if conf.assert_complexes():
        complex_rep.assert_square_zero()
    return complex_rep.cohomology_dim(t, modular=modular)


def _fixed_strand_isotypic(K, strand, action, t):
    complex_rep = strand_complex(K, strand, action).check()
    dims = complex_rep.isotypic_dims()
    return dims.get(t, [0] * max(action.p, 1))


def local_cohomology_fine(K, action, i, j, caps=None, modular=None):
    """Per-character dims of H_𝔪^i(𝕜[Δ])_{−j} (character c: g acts by ζ^c)."""
    check_caps(K, j, caps)
    modular = conf.fast_mod(modular)
    p = max(action.p, 1)
    result = [0] * p
    for strand in strands(K, i, j):
        orbit = [act_on_degree(action, strand.degree, k) for k in range(p)]
        if strand.degree != min(orbit):
            continue
        if p > 1 and orbit[1] == strand.degree:
            for c, value in enumerate(_fixed_strand_isotypic(K, strand, action, i)):
                result[c] += value
            continue
        if len(set(orbit)) != p:
            raise ComplexAssertionError(f"Strand orbit of size ∉ {{1, {p}}} at {strand.degree}.")
        value = _strand_cohomology(K, strand.shape, i, modular)
        for c in range(p):
            result[c] += value
    logger.debug("H^%s_m(k[Δ])_-%s = %s", i, j, result)
    return tuple(result)


def local_cohomology_total(K, i, j, caps=None, modular=None):
    """dim H_𝔪^i(𝕜[Δ])_{−j} without the group."""
    check_caps(K, j, caps)
    modular = conf.fast_mod(modular)
    return sum(_strand_cohomology(K, s.shape, i, modular) for s in strands(K, i, j))


def hom_dimension_from_strands(K, t, j):
    """Σ over strands of the degree-t part: must equal ``hom_dimension``."""
    total = 0
    for strand in strands(K, t, j):
        complex_rep = strand_complex(K, strand)
        total += complex_rep.dim(t)
    return total


def strand_euler_consistent(K, strand, modular=False):
    """Alternating sums of cochain and cohomology dims agree on a strand."""
    complex_rep = strand_complex(K, strand)
    chain = sum((-1) ** t * complex_rep.dim(t) for t in complex_rep.degrees)
    homology = sum(
        (-1) ** t * _strand_cohomology(K, strand.shape, t, modular) for t in complex_rep.degrees
    )
    return chain == homology


# -------------------------------------------------
# Comparison with the contrastar side
# -------------------------------------------------
@dataclass
class HochsterRow:
    i: int
    j: int
    character: int
    lhs: int
    rhs: int

    @property
    def match(self):
        return self.lhs == self.rhs


@dataclass
class HochsterComparisonReport:
    p: int
    i_range: tuple
    j_range: tuple
    rows: list = field(default_factory=list)
    totals: list = field(default_factory=list)
    modular: bool = False

    @property
    def all_match(self):
        return all(row.match for row in self.rows) and all(
            lhs == rhs == classical for _, _, lhs, rhs, classical in self.totals
        )

    def lhs(self, i, j):
        return tuple(r.lhs for r in self.rows if r.i == i and r.j == j)

    def rhs(self, i, j):
        return tuple(r.rhs for r in self.rows if r.i == i and r.j == j)

    def as_dict(self):
        return {
            "p": self.p,
            "modular": self.modular,
            "rows": [
                {"i": r.i, "j": r.j, "character": r.character, "lhs": r.lhs,
                 "rhs": r.rhs, "match": r.match}
                for r in self.rows
            ],
            "totals": [
                {"i": i, "j": j, "lhs": lhs, "rhs": rhs, "classical": classical}
                for i, j, lhs, rhs, classical in self.totals
            ],
        }


def verify_refined_hochster(K, action, i_range, j_range, caps=None, modular=None):
    """Compare character k on the Koszul side with character −k on the contrastar side."""
    require_free(K, action)
    p = max(action.p, 1)
    betti_table = isotypic_betti(K, action)
    report = HochsterComparisonReport(p, tuple(i_range), tuple(j_range), modular=conf.fast_mod(modular))
    for j in j_range:
        check_caps(K, j, caps)
        for i in i_range:
            lhs = local_cohomology_fine(K, action, i, j, caps, modular)
            rhs = hochster_rhs_fine(K, action, i, j, betti_table)
            for k in range(p):
                report.rows.append(HochsterRow(i, j, k, lhs[k], rhs[(-k) % p]))
            report.totals.append((i, j, sum(lhs), sum(rhs), hochster_rhs_total(K, i, j)))
            logger.info("hochster i=%s j=%s lhs=%s rhs=%s", i, j, lhs, rhs)
    return report
