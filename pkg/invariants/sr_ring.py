"""The Stanley–Reisner ring 𝕜[Δ] with its (ℤ×G)-grading.

Graded pieces are handled in isotypic bases: for a monomial orbit with
representative x_r, the character-c basis vector is
v_c(r) = Σ_k ζ^{−ck} g^k·x_r. A vector of 𝕜[Δ]_i^c is stored by its
coefficients at the representatives, so every multiplication map splits
by character before any elimination happens.
"""
import logging
import random
from dataclasses import dataclass, field
from math import comb

from django.core.exceptions import ValidationError

from . import conf
from .actions import require_free, t_slice, t_slice_orbits, validate_action, vertex_orbits
from .complexes import bits
from .cyclotomic import field_for
from .exceptions import LsopConstructionError, QuotientError
from .formulas import sr_hilbert_closed_form
from .hilbert import FineHilbert
from .linalg import EchelonBasis, SparseMatrix, kernel_basis, rank

logger = logging.getLogger(__name__)


def minimal_nonfaces(K):
    """Generators of I_Δ as 1-based vertex tuples, inclusion-minimal non-faces."""
    faces = K.faces()
    found = set()
    for face in faces:
        for v in range(K.n):
            if face >> v & 1:
                continue
            candidate = face | (1 << v)
            if candidate in faces or candidate in found:
                continue
            if all((candidate & ~(1 << u)) in faces for u in bits(candidate)):
                found.add(candidate)
    return sorted((K.label(mask) for mask in found), key=lambda t: (len(t), t))


@dataclass
class MonomialBasisPiece:
    degree: int
    monomials: list = field(default_factory=list)

    def __len__(self):
        return len(self.monomials)


def monomial_basis(K, i):
    """Monomials x^U of 𝕜[Δ]_i, i.e. T(Δ)_i."""
    return MonomialBasisPiece(i, t_slice(K, i))


def expected_ring_dimension(K, i):
    """Σ_{σ ∈ Δ} C(i − 1, |σ| − 1), counting monomials by support."""
    if i == 0:
        return 1 if K.faces() else 0
    return sum(comb(i - 1, face.bit_count() - 1) for face in K.faces() if face)


def _check_action(K, action):
    if action.p <= 1 or action.trivial:
        return validate_action(K, action)
    return require_free(K, action)


def fine_ring_dims(K, action, i):
    """Per-character dims of 𝕜[Δ]_i by counting monomial orbits."""
    _check_action(K, action)
    p = max(action.p, 1)
    dims = [0] * p
    for orbit in t_slice_orbits(K, action, i).orbits:
        if len(orbit) == p:
            for j in range(p):
                dims[j] += 1
        else:
            dims[0] += 1
    return tuple(dims)


def sr_hilbert_fine(K, action, through_degree):
    """Closed-form fine Hilbert function of 𝕜[Δ] for a free action."""
    _check_action(K, action)
    return sr_hilbert_closed_form(K.h_vector(), K.d, max(action.p, 1), through_degree)


# -------------------------------------------------
# Linear forms and systems of parameters
# -------------------------------------------------
@dataclass(frozen=True)
class LinearForm:
    """θ = Σ c_v x_v with g·θ = ζ^degree θ."""

    coefficients: tuple
    degree: int = 0

    def support(self):
        return [v for v, c in enumerate(self.coefficients) if c]

    def is_homogeneous(self, action, field):
        zeta = field.zeta(self.degree)
        return all(
            c == zeta * self.coefficients[action.apply_vertex(v)]
            for v, c in enumerate(self.coefficients)
        )


@dataclass
class LsopCertificate:
    valid: bool
    facet_ranks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.valid

    def as_dict(self):
        return {
            "valid": self.valid,
            "facet_ranks": [
                {"facet": list(facet), "rank": r} for facet, r in sorted(self.facet_ranks.items())
            ],
        }


@dataclass
class LSOP:
    forms: tuple
    p: int
    seed: int = None
    certificate: LsopCertificate = None
    attempts: int = 1

    @property
    def degrees(self):
        return tuple(form.degree for form in self.forms)

    @property
    def m(self):
        """The common character degree, or None for mixed degrees."""
        degrees = set(self.degrees)
        return degrees.pop() if len(degrees) == 1 else None

    @property
    def field(self):
        return field_for(self.p)

    def __len__(self):
        return len(self.forms)


def is_lsop(K, forms, field=None):
    """Facet-rank test: Θ restricted to every facet F has rank |F|."""
    forms = list(forms)
    field = field or field_for(1)
    if len(forms) != K.d:
        return LsopCertificate(False)
    ranks = {}
    valid = True
    for facet in K.sorted_facets():
        vertices = list(bits(facet))
        rows = [
            {col: form.coefficients[v] for col, v in enumerate(vertices) if form.coefficients[v]}
            for form in forms
        ]
        value = rank(SparseMatrix.from_rows(rows, len(vertices), field))
        ranks[K.label(facet)] = value
        valid = valid and value == len(vertices)
    return LsopCertificate(valid, ranks)


def _draw(rng, bound):
    return rng.randint(1, bound) * rng.choice((1, -1))


def equivariant_form(K, action, m, rng, bound=None, field=None):
    """Random θ ∈ A_1^m with t(g^k v) = ζ^{−km} t(v) on each vertex orbit."""
    field = field or field_for(max(action.p, 1))
    bound = bound or conf.coefficient_bound()
    coefficients = [field.zero] * K.n
    for representative in vertex_orbits(K, action).representatives:
        value = field(_draw(rng, bound))
        for k in range(max(action.p, 1)):
            coefficients[action.apply_vertex(representative, k)] = field.zeta(-k * m) * value
    return LinearForm(tuple(coefficients), m % max(action.p, 1))


def build_lsop(K, action, m, seed=None, attempts=None):
    """Seeded equivariant l.s.o.p. with every θ_i in A_1^m."""
    require_free(K, action)
    seed = conf.seed(seed)
    attempts = attempts or conf.lsop_attempts()
    p = max(action.p, 1)
    field = field_for(p)
    orbit_count = len(vertex_orbits(K, action))
    if orbit_count < K.d:
        raise LsopConstructionError(
            f"A_1^{m} has dimension {orbit_count} < d = {K.d}; no l.s.o.p. of this degree exists.",
            code=LsopConstructionError.INSUFFICIENT_ISOTYPIC_SPACE,
            orbits=orbit_count, d=K.d, m=m,
        )
    rng = random.Random(seed)
    for attempt in range(1, attempts + 1):
        forms = tuple(equivariant_form(K, action, m, rng, field=field) for _ in range(K.d))
        certificate = is_lsop(K, forms, field)
        logger.info("build_lsop m=%s seed=%s attempt=%s valid=%s", m, seed, attempt, certificate.valid)
        if certificate:
            return LSOP(forms, p, seed, certificate, attempt)
    raise LsopConstructionError(
        f"No l.s.o.p. found in {attempts} attempts.",
        code=LsopConstructionError.GENERICITY_EXHAUSTED,
        attempts=attempts, m=m, seed=seed,
    )


def generic_lsop(K, seed=None, attempts=None):
    """A non-equivariant l.s.o.p. over ℚ with independent random coefficients."""
    seed = conf.seed(seed)
    attempts = attempts or conf.lsop_attempts()
    field = field_for(1)
    bound = conf.coefficient_bound()
    rng = random.Random(seed)
    vertices = set(bits(K.vertex_mask))
    for attempt in range(1, attempts + 1):
        forms = tuple(
            LinearForm(tuple(
                field(_draw(rng, bound)) if v in vertices else field.zero for v in range(K.n)
            ))
            for _ in range(K.d)
        )
        certificate = is_lsop(K, forms, field)
        if certificate:
            return LSOP(forms, 1, seed, certificate, attempt)
    raise LsopConstructionError(
        f"No generic l.s.o.p. found in {attempts} attempts.",
        code=LsopConstructionError.GENERICITY_EXHAUSTED,
        attempts=attempts, seed=seed,
    )


def lsop_to_json(lsop):
    field = lsop.field
    return {
        "p": lsop.p,
        "seed": lsop.seed,
        "forms": [
            {"degree": form.degree, "coefficients": [field.to_json(c) for c in form.coefficients]}
            for form in lsop.forms
        ],
    }


def lsop_from_json(data, K=None):
    try:
        p = int(data["p"])
        field = field_for(p)
        forms = tuple(
            LinearForm(
                tuple(field.from_json(c) for c in form["coefficients"]),
                int(form.get("degree", 0)),
            )
            for form in data["forms"]
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ValidationError(f"Malformed l.s.o.p. document: {e}", code="bad_lsop")
    lsop = LSOP(forms, p, data.get("seed"))
    if K is not None:
        if any(len(form.coefficients) != K.n for form in forms):
            raise ValidationError("l.s.o.p. forms do not match n.", code="bad_lsop")
        lsop.certificate = is_lsop(K, forms, field)
    return lsop


# -------------------------------------------------
# Quotients in isotypic coordinates
# -------------------------------------------------
class QuotientEngine:
    """Graded pieces, multiplication maps, Θ𝕜[Δ] and Σ(Θ; 𝕜[Δ]) per (i, c)."""

    def __init__(self, K, action, lsop):
        _check_action(K, action)
        self.K = K
        self.action = action
        self.lsop = lsop
        self.p = max(action.p, 1)
        if lsop.p != self.p:
            raise ValidationError(
                f"l.s.o.p. lives over p = {lsop.p}, the action has p = {self.p}.",
                code="field_mismatch",
            )
        self.field = field_for(self.p)
        self.d = K.d
        self.faces = K.faces()
        self._pieces = {}
        self._index = {}
        self._theta = {}
        self._image = {}
        self._sigma = {}
        self._monomials = {}
        self._monomial_sigma = {}

    # Bases
    def basis(self, i, c):
        """[(representative, members)] spanning 𝕜[Δ]_i^c; members[k] = g^k·representative."""
        if i < 0:
            return []
        if i not in self._pieces:
            decomposition = t_slice_orbits(self.K, self.action, i)
            per_character = [[] for _ in range(self.p)]
            for representative, orbit in zip(decomposition.representatives, decomposition.orbits):
                members = [representative.act(self.action, k) for k in range(len(orbit))]
                if len(orbit) == self.p:
                    for j in range(self.p):
                        per_character[j].append((representative, members))
                else:
                    per_character[0].append((representative, members))
            self._pieces[i] = per_character
        return self._pieces[i][c % self.p]

    def index(self, i, c):
        key = (i, c % self.p)
        if key not in self._index:
            self._index[key] = {rep: row for row, (rep, _) in enumerate(self.basis(i, c))}
        return self._index[key]

    def dim(self, i, c):
        return len(self.basis(i, c))

    # Multiplication
    def multiplication(self, form, i, c):
        """×θ : 𝕜[Δ]_{i−1}^c → 𝕜[Δ]_i^{c+deg θ}."""
        field = self.field
        rows = self.index(i, c + form.degree)
        support = [(v, form.coefficients[v]) for v in form.support()]
        columns = []
        for _, members in self.basis(i - 1, c):
            column = {}
            for k, monomial in enumerate(members):
                weight = field.zeta(-c * k)
                base = monomial.support
                for v, coefficient in support:
                    if (base | (1 << v)) not in self.faces:
                        continue
                    row = rows.get(monomial.add_vertex(v))
                    if row is not None:
                        column[row] = column.get(row, field.zero) + weight * coefficient
            columns.append(column)
        return SparseMatrix.from_columns(columns, len(rows), field)

    def theta(self, s, i, c):
        """×θ_s into degree (i, c)."""
        key = (s, i, c % self.p)
        if key not in self._theta:
            form = self.lsop.forms[s]
            self._theta[key] = self.multiplication(form, i, c - form.degree)
        return self._theta[key]

    def image(self, i, c):
        """(Θ𝕜[Δ])_i^c as an echelon basis."""
        key = (i, c % self.p)
        if key not in self._image:
            echelon = EchelonBasis(self.field)
            if i > 0:
                for s in range(len(self.lsop)):
                    for column in self.theta(s, i, c).column_dicts():
                        if column:
                            echelon.insert(column)
            self._image[key] = echelon
        return self._image[key]

    def colon(self, s, i, c):
        """Basis of ((Θ∖θ_s)𝕜[Δ] :_{𝕜[Δ]} θ_s) in degree (i, c)."""
        size = self.dim(i, c)
        if not size:
            return []
        target_c = c + self.lsop.forms[s].degree
        columns = self.theta(s, i + 1, target_c).column_dicts()
        for r in range(len(self.lsop)):
            if r == s:
                continue
            for column in self.theta(r, i + 1, target_c).column_dicts():
                columns.append({k: -v for k, v in column.items()})
        rows = self.dim(i + 1, target_c)
        kernel = kernel_basis(SparseMatrix.from_columns(columns, rows, self.field))
        projected = []
        for vector in kernel:
            y = {k: v for k, v in vector.items() if k < size}
            if y:
                projected.append(y)
        return projected

    def sigma(self, i, c):
        """Σ(Θ; 𝕜[Δ])_i^c as an echelon basis containing (Θ𝕜[Δ])_i^c."""
        key = (i, c % self.p)
        if key not in self._sigma:
            echelon = EchelonBasis(self.field)
            echelon.pivots = dict(self.image(i, c).pivots)
            for s in range(len(self.lsop)):
                for vector in self.colon(s, i, c):
                    echelon.insert(vector)
            self._sigma[key] = echelon
        return self._sigma[key]

    def complement(self, i, c):
        """Coordinates not pivoted by Σ_i^c; their unit vectors span a complement."""
        pivots = self.sigma(i, c).pivots
        return [k for k in range(self.dim(i, c)) if k not in pivots]

    # Dimensions
    def artinian_dim(self, i, c):
        return self.dim(i, c) - self.image(i, c).rank

    def sigma_dim(self, i, c):
        return self.dim(i, c) - self.sigma(i, c).rank

    def check_tail(self):
        for i in (self.d + 1, self.d + 2):
            leftover = [self.artinian_dim(i, c) for c in range(self.p)]
            if any(leftover):
                raise QuotientError(
                    f"𝕜(Δ; Θ) is nonzero in degree {i}: {leftover}.",
                    code=QuotientError.NONVANISHING_TAIL,
                    degree=i, dims=leftover,
                )

    def artinian(self):
        self.check_tail()
        series = FineHilbert(self.p, top=self.d)
        for i in range(self.d + 1):
            for c in range(self.p):
                series.set(i, c, self.artinian_dim(i, c))
        return series

    def sigma_quotients(self):
        self.check_tail()
        over_theta = FineHilbert(self.p, top=self.d)
        quotient = FineHilbert(self.p, top=self.d)
        for i in range(self.d + 1):
            for c in range(self.p):
                over_theta.set(i, c, self.sigma(i, c).rank - self.image(i, c).rank)
                quotient.set(i, c, self.sigma_dim(i, c))
        return over_theta, quotient

    # Products of basis vectors
    def product_coordinates(self, i, c, a, i2, c2, b):
        """Coordinates of v_c(rep_a)·v_{c2}(rep_b) in 𝕜[Δ]_{i+i2}^{c+c2}."""
        field = self.field
        _, left = self.basis(i, c)[a]
        _, right = self.basis(i2, c2)[b]
        rows = self.index(i + i2, c + c2)
        result = {}
        for k, u in enumerate(left):
            for k2, w in enumerate(right):
                if (u.support | w.support) not in self.faces:
                    continue
                row = rows.get(u + w)
                if row is not None:
                    weight = field.zeta(-c * k - c2 * k2)
                    result[row] = result.get(row, field.zero) + weight
        return {k: v for k, v in result.items() if v}

    # Σ in monomial coordinates, without the isotypic split
    def monomial_index(self, i):
        if i < 0:
            return {}
        if i not in self._monomials:
            self._monomials[i] = {U: k for k, U in enumerate(t_slice(self.K, i))}
        return self._monomials[i]

    def monomial_multiplication(self, form, i):
        """×θ : 𝕜[Δ]_i → 𝕜[Δ]_{i+1} on monomials."""
        field = self.field
        rows = self.monomial_index(i + 1)
        support = [(v, form.coefficients[v]) for v in form.support()]
        columns = []
        for monomial in self.monomial_index(i):
            column = {}
            for v, coefficient in support:
                if (monomial.support | (1 << v)) not in self.faces:
                    continue
                row = rows[monomial.add_vertex(v)]
                column[row] = column.get(row, field.zero) + coefficient
            columns.append(column)
        return SparseMatrix.from_columns(columns, len(rows), field)

    def monomial_sigma(self, i):
        """Σ(Θ; 𝕜[Δ])_i over the full monomial basis of degree i."""
        if i not in self._monomial_sigma:
            echelon = EchelonBasis(self.field)
            if i > 0:
                for form in self.lsop.forms:
                    for column in self.monomial_multiplication(form, i - 1).column_dicts():
                        if column:
                            echelon.insert(column)
            size = len(self.monomial_index(i))
            rows = len(self.monomial_index(i + 1))
            maps = [self.monomial_multiplication(form, i) for form in self.lsop.forms]
            for s, theta in enumerate(maps):
                columns = theta.column_dicts()
                for r, other in enumerate(maps):
                    if r != s:
                        columns.extend({k: -v for k, v in col.items()} for col in other.column_dicts())
                for vector in kernel_basis(SparseMatrix.from_columns(columns, rows, self.field)):
                    y = {k: v for k, v in vector.items() if k < size}
                    if y:
                        echelon.insert(y)
            self._monomial_sigma[i] = echelon
        return self._monomial_sigma[i]

    def sigma_is_g_stable(self, i, subspace=None):
        """g·W ⊆ W for W = Σ_i, or for ``subspace`` given in monomial coordinates."""
        echelon = subspace if subspace is not None else self.monomial_sigma(i)
        index = self.monomial_index(i)
        by_index = list(index)
        for row in echelon.pivots.values():
            moved = {index[by_index[k].act(self.action)]: v for k, v in row.items()}
            if not echelon.contains(moved):
                logger.warning("Σ is not G-stable in degree %s", i)
                return False
        return True


def artinian_fine_hilbert(K, action, lsop):
    return QuotientEngine(K, action, lsop).artinian()


def sigma_fine(K, action, lsop):
    """(Σ/Θ𝕜[Δ], 𝕜[Δ]/Σ) as fine Hilbert functions."""
    return QuotientEngine(K, action, lsop).sigma_quotients()


# -------------------------------------------------
# Pairing and Lefschetz probe
# -------------------------------------------------
@dataclass
class PairingRow:
    i: int
    j: int
    partner_j: int
    dim: int
    partner_dim: int
    rank: int

    @property
    def perfect(self):
        return self.dim == self.partner_dim == self.rank

    def as_dict(self):
        return {
            "i": self.i, "j": self.j, "partner_j": self.partner_j,
            "dim": self.dim, "partner_dim": self.partner_dim,
            "rank": self.rank, "perfect": self.perfect,
        }


@dataclass
class PairingReport:
    socle_degree: int
    socle_character: int
    dims: FineHilbert
    rows: list = field(default_factory=list)

    @property
    def perfect(self):
        return all(row.perfect for row in self.rows)

    def as_dict(self):
        return {
            "socle_degree": self.socle_degree,
            "socle_character": self.socle_character,
            "dims": self.dims.as_dict(),
            "perfect": self.perfect,
            "pairings": [row.as_dict() for row in self.rows],
        }


def pairing_report(K, action, lsop, engine=None):
    """Certify dim_i^j = dim_{d−i}^{s−j} on 𝕜[Δ]/Σ by ranks of the product pairing."""
    engine = engine or QuotientEngine(K, action, lsop)
    _, dims = engine.sigma_quotients()
    d, p = engine.d, engine.p
    top = dims.row(d)
    if sum(top) != 1:
        raise QuotientError(
            f"(𝕜[Δ]/Σ)_{d} has dimension {sum(top)}, expected 1.",
            code=QuotientError.TOP_NOT_ONE_DIMENSIONAL,
            dims=list(top),
        )
    s = top.index(1)
    pivot_rows = list(engine.sigma(d, s).pivots.values())
    functional = kernel_basis(SparseMatrix.from_rows(pivot_rows, engine.dim(d, s), engine.field))[0]
    report = PairingReport(d, s, dims)
    for i in range(d + 1):
        for j in range(p):
            partner = (s - j) % p
            left = engine.complement(i, j)
            right = engine.complement(d - i, partner)
            entries = {}
            for a, x in enumerate(left):
                for b, y in enumerate(right):
                    product = engine.product_coordinates(i, j, x, d - i, partner, y)
                    value = sum(
                        (functional[k] * v for k, v in product.items() if k in functional),
                        engine.field.zero,
                    )
                    if value:
                        entries[(a, b)] = value
            value = rank(SparseMatrix(len(left), len(right), entries, engine.field))
            report.rows.append(PairingRow(i, j, partner, len(left), len(right), value))
    logger.info("pairing s=%s perfect=%s", s, report.perfect)
    return report


@dataclass
class LefschetzResult:
    degree: int
    found: bool
    trials: int
    failures: list = field(default_factory=list)

    def as_dict(self):
        return {
            "m": self.degree, "found": self.found,
            "trials": self.trials, "failures": self.failures,
        }


def _injective(engine, form, i, j):
    """×ω : (𝕜[Δ]/Σ)_{i−1}^j → (𝕜[Δ]/Σ)_i^{j+deg ω} is injective."""
    complement = engine.complement(i - 1, j)
    if not complement:
        return True
    target = engine.sigma(i, j + form.degree)
    echelon = EchelonBasis(engine.field)
    echelon.pivots = dict(target.pivots)
    columns = engine.multiplication(form, i, j).column_dicts()
    gained = sum(1 for k in complement if echelon.insert(columns[k]))
    return gained == len(complement)


def lefschetz_search(engine, degree, seed=None, trials=8):
    """Seeded search for ω ∈ A_1^degree injective on 𝕜[Δ]/Σ up to degree ⌊d/2⌋."""
    rng = random.Random(conf.seed(seed))
    failures = []
    for trial in range(1, trials + 1):
        form = equivariant_form(engine.K, engine.action, degree, rng, field=engine.field)
        bad = [
            (i, j)
            for i in range(1, engine.d // 2 + 1)
            for j in range(engine.p)
            if not _injective(engine, form, i, j)
        ]
        if not bad:
            return LefschetzResult(degree % engine.p, True, trial, failures)
        failures.append([list(pair) for pair in bad])
    return LefschetzResult(degree % engine.p, False, trials, failures)
