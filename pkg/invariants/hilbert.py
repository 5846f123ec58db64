"""(ℤ×G)-graded Hilbert functions: tables (degree i, character j) → dimension."""
from dataclasses import dataclass, field

from .cyclotomic import rational_str


@dataclass
class FineHilbert:
    """Coefficients of Σ dim M_i^j λ^i t^j with t^p = 1.

    Values are integers for computed modules and exact rationals for closed
    forms; zero entries are not stored.
    """

    p: int
    table: dict = field(default_factory=dict)
    top: int = -1

    def __post_init__(self):
        self.table = {key: value for key, value in self.table.items() if value}
        self.top = max([self.top] + [i for i, _ in self.table])

    def get(self, i, j):
        return self.table.get((i, j % max(self.p, 1)), 0)

    def set(self, i, j, value):
        key = (i, j % max(self.p, 1))
        if value:
            self.table[key] = value
        else:
            self.table.pop(key, None)
        self.top = max(self.top, i)

    def row(self, i):
        return tuple(self.get(i, j) for j in range(max(self.p, 1)))

    def total(self, i):
        return sum(self.row(i))

    def totals(self):
        return tuple(self.total(i) for i in range(self.top + 1))

    def degrees(self):
        return range(self.top + 1)

    def __eq__(self, other):
        if not isinstance(other, FineHilbert):
            return NotImplemented
        return self.p == other.p and self.table == other.table

    def as_rows(self):
        return [list(self.row(i)) for i in self.degrees()]

    def as_dict(self):
        return {
            "p": self.p,
            "rows": [[_json_value(v) for v in row] for row in self.as_rows()],
        }


def _json_value(value):
    if isinstance(value, int):
        return value
    value = rational_str(value)
    return int(value) if "/" not in value else value
