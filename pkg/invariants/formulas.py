"""Closed forms for fine Hilbert functions and h-vector bounds.

Everything here is exact: values are integers or sympy ``QQ`` elements.
``betti`` arguments are plain reduced Betti lists indexed from −1 (as
returned by ``cohomology.betti``); ``table`` arguments are
``IsotypicBettiTable`` objects.
"""
from itertools import combinations_with_replacement
from math import comb

from sympy import Poly, QQ, symbols

from .cohomology import _at
from .hilbert import FineHilbert

_LAMBDA = symbols("lambda")


def _sign(k):
    return -1 if k % 2 else 1


def _h(h, i):
    return h[i] if 0 <= i < len(h) else 0


# -------------------------------------------------
# Stanley–Reisner ring
# -------------------------------------------------
def sr_hilbert_coefficient(h, d, p, i):
    """dim 𝕜[Δ]_i^j for any j and i ≥ 1: (1/p) Σ_k h_k C(i−k+d−1, d−1)."""
    total = sum(_h(h, k) * comb(i - k + d - 1, d - 1) for k in range(0, min(i, d) + 1))
    return QQ(total, p)


def sr_hilbert_closed_form(h, d, p, through):
    series = FineHilbert(p, {(0, 0): QQ(1)}, top=through)
    for i in range(1, through + 1):
        value = sr_hilbert_coefficient(h, d, p, i)
        for j in range(p):
            series.set(i, j, value)
    return series


# -------------------------------------------------
# Artinian reductions and sigma quotients
# -------------------------------------------------
def _fine_quotient(h, table, d, p, m, inclusive):
    series = FineHilbert(p, top=d)
    for i in range(d + 1):
        c = comb(d, i)
        upper = i if inclusive else i - 1
        for k in range(p):
            value = QQ(_h(h, i) + _sign(i + 1) * c, p)
            if (m * i - k) % p == 0:
                value += _sign(i) * c
            value += c * sum(
                _sign(i - j - 1) * table.get(j - 1, (m * i - k) % p) for j in range(upper + 1)
            )
            series.set(i, k, value)
    return series


def schenzel_fine_formula(h, table, d, p, m):
    """Fine Hilbert function of 𝕜(Δ; Θ) for Θ ⊂ A_1^m."""
    return _fine_quotient(h, table, d, p, m, inclusive=False)


def sigma_fine_formula(h, table, d, p, m):
    """Fine Hilbert function of 𝕜[Δ]/Σ(Θ; 𝕜[Δ]) for Θ ⊂ A_1^m."""
    return _fine_quotient(h, table, d, p, m, inclusive=True)


def sigma_prop_formula(table, d, p, m):
    """dim (Σ/Θ𝕜[Δ])_i^k = C(d, i) β_{i−1}^{mi−k} for i < d; nothing in degree d."""
    series = FineHilbert(p, top=d)
    for i in range(d):
        for k in range(p):
            series.set(i, k, comb(d, i) * table.get(i - 1, (m * i - k) % p))
    return series


def cs_schenzel_formula(h, table, d, m):
    """The p = 2 specialisation of ``schenzel_fine_formula``."""
    series = FineHilbert(2, top=d)
    for i in range(d + 1):
        c = comb(d, i)
        for k in range(2):
            value = QQ(_h(h, i) + _sign(i + k + m * i) * c, 2)
            value += c * sum(
                _sign(i - j - 1) * table.get(j - 1, (m * i - k) % 2) for j in range(i)
            )
            series.set(i, k, value)
    return series


def stanley_cs_formula(h, d):
    """½[(1 − t)(1 + λ)^d + (1 + t) Σ h_i λ^i] for CM complexes and Θ ⊂ A_1^1."""
    series = FineHilbert(2, top=d)
    for i in range(d + 1):
        series.set(i, 0, QQ(_h(h, i) + comb(d, i), 2))
        series.set(i, 1, QQ(_h(h, i) - comb(d, i), 2))
    return series


def schenzel_totals_formula(h, betti, d):
    """dim (𝕜[Δ]/Θ𝕜[Δ])_i for any l.s.o.p. of a Buchsbaum complex."""
    return tuple(
        _h(h, i) + comb(d, i) * sum(_sign(i - j - 1) * _at(betti, j - 1) for j in range(i))
        for i in range(d + 1)
    )


def sigma_totals_formula(h, betti, d):
    """dim (𝕜[Δ]/Σ(Θ; 𝕜[Δ]))_i for any l.s.o.p. of a Buchsbaum complex."""
    return tuple(
        _h(h, i) + comb(d, i) * sum(_sign(i - j - 1) * _at(betti, j - 1) for j in range(i + 1))
        for i in range(d + 1)
    )


# -------------------------------------------------
# h-vector bounds
# -------------------------------------------------
def buchsbaum_bound(betti, d, i):
    return comb(d, i) * sum(_sign(i - j) * _at(betti, j - 1) for j in range(i + 1))


def _alternating(table, i, k):
    return sum(_sign(i - j) * table.get(j - 1, k) for j in range(i + 1))


def zeropart_bound(table, d, p, i):
    c = comb(d, i)
    return (p - 1) * _sign(i + 1) * c + p * c * _alternating(table, i, 0)


def nonzeropart_bound(table, d, p, i, k):
    c = comb(d, i)
    return _sign(i) * c + p * c * _alternating(table, i, k)


def multiset_bounds(table, d, p, i):
    """[(M, bound)] for every multiset M of size p − 1 on {1, …, p − 1}."""
    c = comb(d, i)
    base = c * _alternating(table, i, 0)
    return [
        (multiset, base + c * sum(_alternating(table, i, k) for k in multiset))
        for multiset in combinations_with_replacement(range(1, p), p - 1)
    ]


def stanley_very_free_bound(d, p, i):
    return comb(d, i) if i % 2 == 0 else (p - 1) * comb(d, i)


def adin_bound(d, p):
    """Coefficients of (1 + λ + … + λ^{p−1})^{d/(p−1)}, lowest degree first."""
    if p < 2 or d % (p - 1):
        raise ValueError(f"d = {d} is not divisible by p − 1 = {p - 1}.")
    base = Poly(sum(_LAMBDA ** k for k in range(p)), _LAMBDA)
    coefficients = (base ** (d // (p - 1))).all_coeffs()
    return tuple(int(c) for c in reversed(coefficients))


def stanley_extension_range(betti, d):
    """Largest i for which the Stanley bounds are known to hold.

    With β_0 = … = β_r = 0 they hold for h_i, i ≤ r + 2; r = −1 when β_0 ≠ 0.
    """
    r = -1
    while r + 1 < d and not _at(betti, r + 1):
        r += 1
    return min(r + 2, d)


# -------------------------------------------------
# Identities
# -------------------------------------------------
def klee_sides(h, d, reduced_euler, i):
    """(h_{d−i} − h_i, (−1)^i C(d, i)((−1)^{d−1} χ̃ − 1))."""
    lhs = _h(h, d - i) - _h(h, i)
    rhs = _sign(i) * comb(d, i) * (_sign(d - 1) * reduced_euler - 1)
    return lhs, rhs


def congruence_holds(h, d, p, i):
    """h_i ≡ (−1)^i C(d, i) (mod p)."""
    return (_h(h, i) - _sign(i) * comb(d, i)) % p == 0


def quotient_euler_sides(reduced_euler, table, p):
    """(χ(Δ), p · χ(Δ/G)) with χ(Δ/G) read off the invariant Betti numbers."""
    invariant = 1 + sum(_sign(i) * table.get(i, 0) for i in range(0, table.d))
    return reduced_euler + 1, p * invariant
