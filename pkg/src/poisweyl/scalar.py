"""Exact scalar arithmetic: rationals, Gaussian rationals, and polynomials in h.

Every coefficient in the engine bottoms out here.  All arithmetic is exact;
there is no floating point anywhere.  ``h`` is a formal central symbol, never
a number, so obstruction results come out as exact polynomials in h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class HbarDivisionError(ArithmeticError):
    """Division by h left a remainder."""


def _fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {value!r}")


@dataclass(frozen=True)
class GaussianRational:
    """a + b*i with exact rational parts.

    Fraction keeps each part fully reduced with a positive denominator, so
    equality is structural.
    """

    re: Fraction
    im: Fraction

    @classmethod
    def of(cls, re=0, im=0) -> "GaussianRational":
        return cls(_fraction(re), _fraction(im))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @staticmethod
    def _coerce(value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(_fraction(value), Fraction(0))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        norm = other.re * other.re + other.im * other.im
        if not norm:
            raise ZeroDivisionError("division by zero Gaussian rational")
        conj = other.conjugate()
        prod = self * conj
        return GaussianRational(prod.re / norm, prod.im / norm)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        if self.re:
            parts.append(str(self.re))
        if self.im:
            mag = abs(self.im)
            body = "i" if mag == 1 else f"{mag}*i"
            if not parts:
                parts.append(body if self.im > 0 else "-" + body)
            else:
                parts.append(("+ " if self.im > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"GaussianRational({self})"


GR_ZERO = GaussianRational(Fraction(0), Fraction(0))
GR_ONE = GaussianRational(Fraction(1), Fraction(0))
GR_I = GaussianRational(Fraction(0), Fraction(1))


class HbarScalar:
    """Polynomial in the formal symbol h with Gaussian-rational coefficients.

    Stored as a sorted tuple of (degree, coefficient) pairs with no zero
    coefficients, so equality and hashing are structural.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=()):
        acc: dict[int, GaussianRational] = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for deg, coeff in items:
            if deg < 0:
                raise ValueError("negative powers of h are not representable")
            coerced = GaussianRational._coerce(coeff)
            if coerced is None:
                raise TypeError(f"bad coefficient {coeff!r}")
            if deg in acc:
                acc[deg] = acc[deg] + coerced
            else:
                acc[deg] = coerced
        self._terms = tuple(
            (d, c) for d, c in sorted(acc.items()) if not c.is_zero()
        )

    @classmethod
    def of(cls, value, hbar_power: int = 0) -> "HbarScalar":
        """Wrap an int, Fraction, or GaussianRational, optionally times h^k."""
        if isinstance(value, HbarScalar):
            if hbar_power == 0:
                return value
            return value * cls([(hbar_power, GR_ONE)])
        coerced = GaussianRational._coerce(value)
        if coerced is None:
            raise TypeError(f"cannot build a scalar from {value!r}")
        return cls([(hbar_power, coerced)])

    def terms(self):
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        """True when no positive power of h appears."""
        return all(d == 0 for d, _ in self._terms)

    def hbar_degree(self) -> int:
        """Degree in h; -1 for the zero scalar."""
        return self._terms[-1][0] if self._terms else -1

    def coefficient(self, power: int) -> GaussianRational:
        for d, c in self._terms:
            if d == power:
                return c
        return GR_ZERO

    def constant_coefficient(self) -> GaussianRational:
        return self.coefficient(0)

    def as_gaussian(self) -> GaussianRational:
        if not self.is_constant():
            raise ValueError(f"{self} depends on h")
        return self.constant_coefficient()

    def conjugate(self) -> "HbarScalar":
        """Complex conjugation: i goes to -i, h stays fixed."""
        return HbarScalar([(d, c.conjugate()) for d, c in self._terms])

    def divided_by_hbar(self, power: int = 1) -> "HbarScalar":
        """Exact division by h^power; raises HbarDivisionError on remainder."""
        out = []
        for d, c in self._terms:
            if d < power:
                raise HbarDivisionError(
                    f"{self} is not divisible by h^{power}"
                )
            out.append((d - power, c))
        return HbarScalar(out)

    @staticmethod
    def _coerce(value):
        if isinstance(value, HbarScalar):
            return value
        gr = GaussianRational._coerce(value)
        if gr is None:
            return None
        return HbarScalar([(0, gr)])

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return HbarScalar(list(self._terms) + list(other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for d1, c1 in self._terms:
            for d2, c2 in other._terms:
                d = d1 + d2
                prod = c1 * c2
                out[d] = out[d] + prod if d in out else prod
        return HbarScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        gr = GaussianRational._coerce(other)
        if gr is None:
            return NotImplemented
        return HbarScalar([(d, c / gr) for d, c in self._terms])

    def __neg__(self):
        return HbarScalar([(d, -c) for d, c in self._terms])

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = ONE
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def flat_terms(self):
        """Split into (rational coefficient, carries i, h degree) triples."""
        out = []
        for d, c in self._terms:
            if c.re:
                out.append((c.re, False, d))
            if c.im:
                out.append((c.im, True, d))
        return out

    def __str__(self):
        flat = self.flat_terms()
        if not flat:
            return "0"
        pieces = []
        for idx, (coef, imag, deg) in enumerate(flat):
            factors = []
            mag = abs(coef)
            if mag != 1 or (not imag and deg == 0):
                factors.append(str(mag))
            if imag:
                factors.append("i")
            if deg == 1:
                factors.append("h")
            elif deg > 1:
                factors.append(f"h^{deg}")
            body = "*".join(factors)
            if idx == 0:
                pieces.append(body if coef > 0 else "-" + body)
            else:
                pieces.append((" + " if coef > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"HbarScalar({self})"


ZERO = HbarScalar()
ONE = HbarScalar.of(1)
I = HbarScalar.of(GR_I)
HBAR = HbarScalar.of(1, hbar_power=1)
I_HBAR = I * HBAR


def as_scalar(value):
    """Lift ints, Fractions, and Gaussian rationals to HbarScalar; else None."""
    if isinstance(value, HbarScalar):
        return value
    return HbarScalar._coerce(value)


def inline_factors(scalar: HbarScalar):
    """Render a scalar as multiplicative factors when it is a single product.

    Returns (sign, [factor strings]) for single-term scalars such as
    -1/2*i*h^2, or None when the scalar needs parentheses as a coefficient.
    """
    flat = scalar.flat_terms()
    if len(flat) != 1:
        return None
    coef, imag, deg = flat[0]
    sign = 1 if coef > 0 else -1
    factors = []
    mag = abs(coef)
    if mag != 1:
        factors.append(str(mag))
    if imag:
        factors.append("i")
    if deg == 1:
        factors.append("h")
    elif deg > 1:
        factors.append(f"h^{deg}")
    return sign, factors
