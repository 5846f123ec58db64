"""Exact scalars: ℚ, the cyclotomic fields ℚ(ζ_p), and their images mod q.

Every linear-algebra problem in the app runs over one of three field
objects sharing a tiny interface (``p``, ``zero``, ``one``, ``__call__``,
``zeta``):

* ``RationalField(p)`` for p ∈ {1, 2}, where ζ is 1 or −1 and elements are
  sympy ``QQ`` elements;
* ``CyclotomicField(p)`` for odd primes, with ``CyclotomicScalar`` elements;
* ``ModularField(p)`` which maps either of the above into ``GF(q)`` with
  q ≡ 1 (mod p), used only to pre-screen ranks.
"""
import logging
from functools import lru_cache

from sympy import QQ, isprime, primitive_root
from sympy.polys.domains import GF

logger = logging.getLogger(__name__)

_MODULUS_CEILING = 2 ** 31


def as_rational(value):
    if QQ.of_type(value):
        return value
    if isinstance(value, int):
        return QQ(value)
    raise TypeError(f"Cannot read {value!r} as an exact rational.")


def rational_str(value):
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text):
    numerator, _, denominator = str(text).partition("/")
    return QQ(int(numerator), int(denominator or 1))


class CyclotomicScalar:
    """An element Σ c_e ζ^e of ℚ(ζ_p), coordinates in 1, ζ, …, ζ^{p−2}."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs):
        self.p = p
        self.coeffs = tuple(coeffs)
        if len(self.coeffs) != p - 1:
            raise ValueError(f"ℚ(ζ_{p}) needs {p - 1} coordinates.")

    @classmethod
    def from_rational(cls, p, value):
        zero = QQ(0)
        return cls(p, (as_rational(value),) + (zero,) * (p - 2))

    @classmethod
    def _from_powers(cls, p, acc):
        # acc holds coefficients of ζ^0 … ζ^{p−1}; fold ζ^{p−1} = −(1 + … + ζ^{p−2})
        top = acc[p - 1]
        if top:
            return cls(p, tuple(c - top for c in acc[:p - 1]))
        return cls(p, tuple(acc[:p - 1]))

    @property
    def is_rational(self):
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, CyclotomicScalar):
            if other.p != self.p:
                raise ValueError(f"Mixing ℚ(ζ_{self.p}) with ℚ(ζ_{other.p}).")
            return other
        if isinstance(other, int) or QQ.of_type(other):
            return CyclotomicScalar.from_rational(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicScalar(self.p, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicScalar(self.p, (-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CyclotomicScalar(self.p, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, value):
        value = as_rational(value)
        return CyclotomicScalar(self.p, (a * value for a in self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_rational:
            return self.scale(other.coeffs[0])
        if self.is_rational:
            return other.scale(self.coeffs[0])
        p = self.p
        acc = [QQ(0)] * p
        for e, a in enumerate(self.coeffs):
            if not a:
                continue
            for f, b in enumerate(other.coeffs):
                if b:
                    acc[(e + f) % p] += a * b
        return CyclotomicScalar._from_powers(p, acc)

    __rmul__ = __mul__

    def conjugate(self, k):
        """Galois image under ζ ↦ ζ^k."""
        p = self.p
        acc = [QQ(0)] * p
        for e, a in enumerate(self.coeffs):
            if a:
                acc[(e * k) % p] += a
        return CyclotomicScalar._from_powers(p, acc)

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in ℚ(ζ_p)")
        if self.is_rational:
            return CyclotomicScalar.from_rational(self.p, QQ(1) / self.coeffs[0])
        cofactor = CyclotomicScalar.from_rational(self.p, 1)
        for k in range(2, self.p):
            cofactor = cofactor * self.conjugate(k)
        norm = (self * cofactor).coeffs[0]
        return cofactor.scale(QQ(1) / norm)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicScalar.from_rational(self.p, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except ValueError:
            return False
        if other is NotImplemented:
            return other
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational:
            return hash(self.coeffs[0])
        return hash((self.p, self.coeffs))

    def to_json(self):
        return [rational_str(c) for c in self.coeffs]

    def __repr__(self):
        terms = []
        for e, c in enumerate(self.coeffs):
            if c:
                text = rational_str(c)
                terms.append(text if e == 0 else f"{text}*z^{e}")
        return " + ".join(terms) or "0"


class RationalField:
    """ℚ as the ground field of the trivial group (p = 1) or of ℤ/2 (ζ = −1)."""

    def __init__(self, p=1):
        if p not in (1, 2):
            raise ValueError("RationalField only serves p = 1 or p = 2.")
        self.p = p
        self.zero = QQ(0)
        self.one = QQ(1)

    def __call__(self, value):
        if isinstance(value, CyclotomicScalar):
            if not value.is_rational:
                raise ValueError(f"{value!r} is not rational.")
            return value.coeffs[0]
        return as_rational(value)

    def zeta(self, k):
        if self.p == 2 and k % 2:
            return -self.one
        return self.one

    def to_json(self, value):
        return rational_str(value)

    def from_json(self, value):
        return parse_rational(value)

    def __repr__(self):
        return f"RationalField(p={self.p})"


class CyclotomicField:
    """ℚ(ζ_p) for an odd prime p."""

    def __init__(self, p):
        if p < 3 or not isprime(p):
            raise ValueError(f"ℚ(ζ_p) needs an odd prime, got {p}.")
        self.p = p
        self.zero = CyclotomicScalar.from_rational(p, 0)
        self.one = CyclotomicScalar.from_rational(p, 1)
        self._powers = tuple(self._power(k) for k in range(p))

    def _power(self, k):
        if k == 0:
            return self.one
        if k == self.p - 1:
            return CyclotomicScalar(self.p, (QQ(-1),) * (self.p - 1))
        coeffs = [QQ(0)] * (self.p - 1)
        coeffs[k] = QQ(1)
        return CyclotomicScalar(self.p, coeffs)

    def __call__(self, value):
        if isinstance(value, CyclotomicScalar):
            if value.p != self.p:
                raise ValueError(f"{value!r} lives in ℚ(ζ_{value.p}).")
            return value
        return CyclotomicScalar.from_rational(self.p, value)

    def zeta(self, k):
        return self._powers[k % self.p]

    def to_json(self, value):
        return self(value).to_json()

    def from_json(self, value):
        if isinstance(value, list):
            return CyclotomicScalar(self.p, (parse_rational(c) for c in value))
        return self(parse_rational(value))

    def __repr__(self):
        return f"CyclotomicField(p={self.p})"


@lru_cache(maxsize=None)
def field_for(p):
    """The exact ground field for the group ℤ/pℤ (p = 1: trivial group)."""
    if p in (1, 2):
        return RationalField(p)
    return CyclotomicField(p)


@lru_cache(maxsize=None)
def modular_prime(p):
    """Largest prime q < 2^31 with q ≡ 1 (mod p), and a primitive p-th root of unity mod q."""
    step = max(p, 2)
    q = ((_MODULUS_CEILING - 2) // step) * step + 1
    while not isprime(q):
        q -= step
    if p <= 1:
        return q, 1
    omega = pow(primitive_root(q), (q - 1) // p, q)
    return q, omega


class ModularField:
    """GF(q) with ζ ↦ ω, for rank pre-screening."""

    def __init__(self, p):
        self.p = p
        self.q, omega = modular_prime(p)
        self.gf = GF(self.q)
        self.zero = self.gf.zero
        self.one = self.gf.one
        self._omega = self.gf(omega)

    def zeta(self, k):
        return self._omega ** (k % max(self.p, 1))

    def _rational(self, value):
        value = as_rational(value)
        numerator = self.gf(int(value.numerator) % self.q)
        denominator = int(value.denominator) % self.q
        if not denominator:
            raise ZeroDivisionError(f"{value} has no image mod {self.q}")
        return numerator / self.gf(denominator)

    def __call__(self, value):
        if not (isinstance(value, (int, CyclotomicScalar)) or QQ.of_type(value)):
            return value
        if isinstance(value, CyclotomicScalar):
            result = self.zero
            for e, c in enumerate(value.coeffs):
                if c:
                    result += self._rational(c) * self.zeta(e)
            return result
        return self._rational(value)

    def __repr__(self):
        return f"ModularField(p={self.p}, q={self.q})"
