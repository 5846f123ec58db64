"""Sparse exact linear algebra over the fields of ``cyclotomic``.

Vectors are dictionaries ``{index: value}`` without stored zeros. Matrices
are ``SparseMatrix`` objects; elimination works on their rows, processing
sparser rows first and pivoting on the leftmost surviving column.
"""
import logging

from .cyclotomic import ModularField, field_for
from .exceptions import NotPeriodicError

logger = logging.getLogger(__name__)


class SparseMatrix:
    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, rows, cols, entries=None, field=None):
        self.rows = rows
        self.cols = cols
        self.field = field if field is not None else field_for(1)
        self.entries = {}
        for (r, c), value in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"Entry ({r}, {c}) outside a {rows}x{cols} matrix.")
            if value:
                self.entries[(r, c)] = self.field(value)

    @classmethod
    def from_rows(cls, rows, cols, field=None):
        entries = {(r, c): v for r, row in enumerate(rows) for c, v in row.items()}
        return cls(len(rows), cols, entries, field)

    @classmethod
    def from_columns(cls, columns, rows, field=None):
        entries = {(r, c): v for c, col in enumerate(columns) for r, v in col.items()}
        return cls(rows, len(columns), entries, field)

    @classmethod
    def from_dense(cls, values, field=None):
        values = [list(row) for row in values]
        cols = len(values[0]) if values else 0
        entries = {(r, c): v for r, row in enumerate(values) for c, v in enumerate(row)}
        return cls(len(values), cols, entries, field)

    @classmethod
    def identity(cls, size, field=None):
        field = field if field is not None else field_for(1)
        return cls(size, size, {(k, k): field.one for k in range(size)}, field)

    @property
    def shape(self):
        return (self.rows, self.cols)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), value in self.entries.items():
            rows[r][c] = value
        return rows

    def column_dicts(self):
        cols = [dict() for _ in range(self.cols)]
        for (r, c), value in self.entries.items():
            cols[c][r] = value
        return cols

    def transpose(self):
        return SparseMatrix(
            self.cols, self.rows,
            {(c, r): v for (r, c), v in self.entries.items()},
            self.field,
        )

    def over(self, field):
        return SparseMatrix(self.rows, self.cols, dict(self.entries), field)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"Cannot multiply {self.shape} by {other.shape}.")
        right = other.row_dicts()
        product = {}
        zero = self.field.zero
        for (r, k), a in self.entries.items():
            for c, b in right[k].items():
                product[(r, c)] = product.get((r, c), zero) + a * b
        return SparseMatrix(self.rows, other.cols, product, self.field)

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError(f"Shape mismatch {self.shape} vs {other.shape}.")
        merged = dict(self.entries)
        zero = self.field.zero
        for key, value in other.entries.items():
            merged[key] = merged.get(key, zero) - value
        return SparseMatrix(self.rows, self.cols, merged, self.field)

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def apply(self, vector):
        """Matrix times a column vector given as a dict."""
        result = {}
        zero = self.field.zero
        for (r, c), value in self.entries.items():
            x = vector.get(c)
            if x:
                result[r] = result.get(r, zero) + value * x
        return {r: v for r, v in result.items() if v}

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)}, {self.field!r})"


class EchelonBasis:
    """Incrementally maintained row echelon form.

    Each pivot row has a leading 1 at its pivot column and no entries to
    the left of it.
    """

    def __init__(self, field):
        self.field = field
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vector):
        row = {c: v for c, v in vector.items() if v}
        zero = self.field.zero
        pivots = self.pivots
        while True:
            hits = [c for c in row if c in pivots]
            if not hits:
                return row
            col = min(hits)
            factor = row[col]
            for c, v in pivots[col].items():
                value = row.get(c, zero) - factor * v
                if value:
                    row[c] = value
                else:
                    row.pop(c, None)

    def insert(self, vector):
        """Add ``vector``; return True when it was independent of the basis."""
        row = self.reduce(vector)
        if not row:
            return False
        lead = min(row)
        inverse = self.field.one / row[lead]
        self.pivots[lead] = {c: v * inverse for c, v in row.items()}
        return True

    def contains(self, vector):
        return not self.reduce(vector)

    def reduced(self):
        """Reduced row echelon form: pivot rows vanish at all other pivots."""
        zero = self.field.zero
        done = {}
        for col in sorted(self.pivots, reverse=True):
            row = dict(self.pivots[col])
            for other in [c for c in row if c != col and c in done]:
                factor = row[other]
                for c, v in done[other].items():
                    value = row.get(c, zero) - factor * v
                    if value:
                        row[c] = value
                    else:
                        row.pop(c, None)
            done[col] = row
        return done


def _echelon(rows, field):
    basis = EchelonBasis(field)
    for row in sorted(rows, key=len):
        if row:
            basis.insert(row)
    return basis


def _modular(matrix):
    target = ModularField(matrix.field.p)
    try:
        return SparseMatrix(
            matrix.rows, matrix.cols,
            {key: target(value) for key, value in matrix.entries.items()},
            target,
        )
    except ZeroDivisionError:
        logger.warning("Matrix has no image mod %s, falling back to exact rank.", target.q)
        return None


def rank(matrix, modular=False):
    """Exact rank over the matrix's field.

    With ``modular`` the rank is first taken in GF(q). The image rank never
    exceeds the exact one, so a full image rank is returned as is and
    anything lower is confirmed by exact elimination.
    """
    if not matrix.entries:
        return 0
    if modular:
        image = _modular(matrix)
        if image is not None:
            screened = _echelon(image.row_dicts(), image.field).rank
            if screened == min(matrix.rows, matrix.cols):
                return screened
            logger.debug("rank %s mod %s is not full, confirming exactly", screened, image.field.q)
    return _echelon(matrix.row_dicts(), matrix.field).rank


def kernel_basis(matrix):
    """Exact basis of {x : Mx = 0}, one vector per non-pivot column."""
    one = matrix.field.one
    reduced = _echelon(matrix.row_dicts(), matrix.field).reduced()
    basis = []
    for free in range(matrix.cols):
        if free in reduced:
            continue
        vector = {free: one}
        for col, row in reduced.items():
            value = row.get(free)
            if value:
                vector[col] = -value
        basis.append(vector)
    return basis


def solve(matrix, rhs_columns):
    """One solution x of Mx = b per right-hand side b.

    Raises ``ValueError`` when some system is inconsistent. Free variables
    are set to zero.
    """
    width = matrix.cols
    rows = matrix.row_dicts()
    for k, column in enumerate(rhs_columns):
        for r, value in column.items():
            if value:
                rows[r][width + k] = matrix.field(value)
    reduced = _echelon(rows, matrix.field).reduced()
    if any(col >= width for col in reduced):
        raise ValueError("Inconsistent linear system.")
    solutions = []
    for k in range(len(rhs_columns)):
        solution = {}
        for col, row in reduced.items():
            value = row.get(width + k)
            if value:
                solution[col] = value
        solutions.append(solution)
    return solutions


def matrix_power(matrix, exponent):
    result = SparseMatrix.identity(matrix.rows, matrix.field)
    base = matrix
    while exponent:
        if exponent & 1:
            result = result @ base
        base = base @ base
        exponent >>= 1
    return result


def eigenspace_dim(matrix, j, p=None):
    """dim ker(M − ζ^j I) for a square M with M^p = I."""
    if p is None:
        p = matrix.field.p
    if matrix.rows != matrix.cols:
        raise ValueError(f"eigenspace_dim needs a square matrix, got {matrix.shape}.")
    field = field_for(p)
    matrix = matrix.over(field)
    size = matrix.rows
    if matrix_power(matrix, max(p, 1)) != SparseMatrix.identity(size, field):
        raise NotPeriodicError(f"Matrix does not satisfy M^{p} = I.", p=p)
    shifted = matrix - SparseMatrix(
        size, size, {(k, k): field.zeta(j) for k in range(size)}, field
    )
    return size - rank(shifted)
