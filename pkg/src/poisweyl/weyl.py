"""Generalized Weyl algebras in normal-ordered form.

A signature fixes k generator pairs (z_a, w_a) and the central commutation
constants kappa_a = [z_a, w_a]; generators of distinct pairs commute.  Two
stock flavors cover everything the engine needs:

  * quantum pairs with kappa = i*h (so the Dirac condition comes out with
    the factor i/h given the classical convention {q, p} = -1), and
  * the differential-operator pair (u, d) with kappa = [u, d] = -1, i.e.
    d*u = u*d + 1, matching u = multiplication by the coordinate and
    d = d/dq on polynomials.

Elements store normal-ordered terms only: all z's left of all w's.  The
product re-normal-orders via the closed form

    w^m z^n = sum_j (-kappa)^j j! C(m,j) C(n,j) z^(n-j) w^(m-j),

applied independently per pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from . import linalg
from .phasepoly import ClassicalPoly, iter_exponents
from .scalar import (
    GaussianRational,
    HBAR,
    HbarScalar,
    I,
    ONE,
    ZERO,
    as_scalar,
    inline_factors,
)


class SignatureMismatchError(ValueError):
    """Operands live in different Weyl signatures."""


@dataclass(frozen=True)
class WeylSignature:
    """Number of generator pairs plus their central commutation constants."""

    kappas: tuple[HbarScalar, ...]
    flavor: str = "quantum"

    @property
    def pairs(self) -> int:
        return len(self.kappas)

    @property
    def width(self) -> int:
        return 2 * len(self.kappas)

    @classmethod
    def quantum(cls, pairs: int = 1) -> "WeylSignature":
        return cls((I * HBAR,) * pairs, "quantum")

    @classmethod
    def differential(cls, pairs: int = 1) -> "WeylSignature":
        return cls((-ONE,) * pairs, "differential")

    @classmethod
    def custom(cls, kappas: Sequence, flavor: str = "quantum") -> "WeylSignature":
        lifted = []
        for kappa in kappas:
            scalar = as_scalar(kappa)
            if scalar is None:
                raise TypeError(f"bad commutation constant {kappa!r}")
            lifted.append(scalar)
        return cls(tuple(lifted), flavor)

    def generator_names(self) -> tuple[str, ...]:
        k = self.pairs
        if self.flavor == "differential":
            if k == 1:
                return ("u", "d")
            return tuple(f"u{a + 1}" for a in range(k)) + tuple(
                f"d{a + 1}" for a in range(k)
            )
        return tuple(f"z{a + 1}" for a in range(k)) + tuple(
            f"w{a + 1}" for a in range(k)
        )


class WeylElement:
    """Normal-ordered element: exponent tuples (a1..ak, b1..bk) to scalars."""

    __slots__ = ("signature", "terms")

    def __init__(self, signature: WeylSignature, terms: Mapping):
        self.signature = signature
        width = signature.width
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != width or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps!r}")
            if not coeff.is_zero():
                clean[exps] = coeff
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def zero(cls, signature: WeylSignature) -> "WeylElement":
        return cls(signature, {})

    @classmethod
    def identity(cls, signature: WeylSignature) -> "WeylElement":
        return cls.monomial(signature, (0,) * signature.width)

    @classmethod
    def monomial(cls, signature, exps, coeff=1) -> "WeylElement":
        scalar = as_scalar(coeff)
        if scalar is None:
            raise TypeError(f"cannot lift {coeff!r} to a coefficient")
        return cls(signature, {tuple(exps): scalar})

    @classmethod
    def generator(cls, signature: WeylSignature, index: int) -> "WeylElement":
        exps = [0] * signature.width
        exps[index] = 1
        return cls.monomial(signature, exps)

    def _require_same_signature(self, other: "WeylElement"):
        if self.signature != other.signature:
            raise SignatureMismatchError("elements live in different signatures")

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps) -> HbarScalar:
        return self.terms.get(tuple(exps), ZERO)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, WeylElement):
            self._require_same_signature(other)
            out = dict(self.terms)
            for exps, coeff in other.terms.items():
                out[exps] = out[exps] + coeff if exps in out else coeff
            return WeylElement(self.signature, out)
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self + WeylElement.monomial(
            self.signature, (0,) * self.signature.width, scalar
        )

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, WeylElement):
            self._require_same_signature(other)
            return self + (-other)
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self + (-scalar)

    def __rsub__(self, other):
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return (-self) + scalar

    def __neg__(self):
        return WeylElement(
            self.signature, {e: -c for e, c in self.terms.items()}
        )

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            self._require_same_signature(other)
            out: dict[tuple, HbarScalar] = {}
            for e1, c1 in self.terms.items():
                base = c1
                for e2, c2 in other.terms.items():
                    coeff = base * c2
                    for exps, factor in _monomial_product(
                        self.signature, e1, e2
                    ):
                        contrib = coeff * factor
                        out[exps] = (
                            out[exps] + contrib if exps in out else contrib
                        )
            return WeylElement(self.signature, out)
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return WeylElement(
            self.signature, {e: c * scalar for e, c in self.terms.items()}
        )

    def __rmul__(self, other):
        # scalars commute with everything, so only they may appear on the left
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self * scalar

    def __truediv__(self, other):
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        gr = scalar.as_gaussian()
        return WeylElement(
            self.signature, {e: c / gr for e, c in self.terms.items()}
        )

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = WeylElement.identity(self.signature)
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.signature == other.signature and self.terms == other.terms

    def __hash__(self):
        return hash((self.signature, tuple(sorted(self.terms.items()))))

    def key(self) -> tuple:
        """Canonical hashable form (used to group equal factors)."""
        return tuple(sorted(self.terms.items()))

    def flatten(self) -> dict:
        """Coordinates over (monomial, h power) pairs, for exact rank work."""
        out = {}
        for exps, coeff in self.terms.items():
            for deg, gr in coeff.terms():
                out[(exps, deg)] = gr
        return out

    def map_coefficients(self, fn) -> "WeylElement":
        return WeylElement(
            self.signature, {e: fn(c) for e, c in self.terms.items()}
        )

    def __str__(self):
        names = self.signature.generator_names()
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms.items(),
            key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])),
        )
        pieces = []
        for idx, (exps, coeff) in enumerate(ordered):
            mono = []
            for name, e in zip(names, exps):
                if e == 1:
                    mono.append(name)
                elif e > 1:
                    mono.append(f"{name}^{e}")
            inline = inline_factors(coeff)
            if inline is None:
                sign = 1
                factors = [f"({coeff})"] + mono
            else:
                sign, factors = inline
                factors = factors + mono
                if not factors:
                    factors = ["1"]
            body = "*".join(factors)
            if idx == 0:
                pieces.append(body if sign > 0 else "-" + body)
            else:
                pieces.append((" + " if sign > 0 else " - ") + body)
        return "".join(pieces)

    def __repr__(self):
        return f"WeylElement({self})"


def _monomial_product(signature: WeylSignature, e1, e2):
    """Normal-ordered expansion of (z^a w^b) * (z^a' w^b') as
    (exponents, scalar) pairs."""
    k = signature.pairs
    acc = [((), ONE)]
    for alpha in range(k):
        kappa = signature.kappas[alpha]
        b1, a2 = e1[k + alpha], e2[alpha]
        za, wa = e1[alpha], e1[k + alpha]
        zb, wb = e2[alpha], e2[k + alpha]
        choices = []
        for j in range(min(b1, a2) + 1):
            count = comb(b1, j) * comb(a2, j) * factorial(j)
            factor = ((-kappa) ** j) * count
            choices.append(((za + zb - j, wa + wb - j), factor))
        nxt = []
        for exps, coeff in acc:
            for (ze, we), factor in choices:
                nxt.append((exps + ((ze, we),), coeff * factor))
        acc = nxt
    out = []
    for pairs_exps, coeff in acc:
        exps = tuple(ze for ze, _ in pairs_exps) + tuple(
            we for _, we in pairs_exps
        )
        out.append((exps, coeff))
    return out


def weyl_commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b - b * a


def i_over_hbar(element: WeylElement) -> WeylElement:
    """(i/h) * element by exact polynomial division in h.

    Raises HbarDivisionError when some coefficient is not divisible by h.
    """
    return element.map_coefficients(lambda c: (I * c).divided_by_hbar())


# -- symmetrization ----------------------------------------------------------


@dataclass(frozen=True)
class WeylWord:
    """Unordered product of generators, kept as a flat symbol sequence."""

    signature: WeylSignature
    symbols: tuple[int, ...]

    @classmethod
    def from_exponents(cls, signature: WeylSignature, exps) -> "WeylWord":
        exps = tuple(exps)
        symbols = []
        for index, e in enumerate(exps):
            symbols.extend([index] * e)
        return cls(signature, tuple(symbols))


def _multiset_permutations(items: Sequence):
    """Distinct permutations of a sequence with repeats, in sorted order."""
    pool = sorted(items)

    def rec(remaining):
        if not remaining:
            yield ()
            return
        seen = set()
        for idx, item in enumerate(remaining):
            if item in seen:
                continue
            seen.add(item)
            rest = remaining[:idx] + remaining[idx + 1 :]
            for tail in rec(rest):
                yield (item,) + tail

    yield from rec(tuple(pool))


def symmetrize(word: WeylWord) -> WeylElement:
    """Average of all distinct orderings of the word, normal-ordered."""
    sig = word.signature
    if not word.symbols:
        return WeylElement.identity(sig)
    gens = [WeylElement.generator(sig, s) for s in range(sig.width)]
    total = WeylElement.zero(sig)
    count = 0
    for perm in _multiset_permutations(word.symbols):
        prod = WeylElement.identity(sig)
        for symbol in perm:
            prod = prod * gens[symbol]
        total = total + prod
        count += 1
    return total / Fraction(count)


def symmetrize_product(factors: Sequence[WeylElement]) -> WeylElement:
    """Symmetrization of a product of arbitrary elements.

    Equal factors are grouped, so the average runs over distinct
    arrangements only; the value agrees with the full n! average.
    """
    if not factors:
        raise ValueError("need at least one factor")
    sig = factors[0].signature
    for f in factors[1:]:
        if f.signature != sig:
            raise SignatureMismatchError("factors live in different signatures")
    groups: dict[tuple, WeylElement] = {}
    labels = []
    for f in factors:
        key = f.key()
        groups[key] = f
        labels.append(key)
    total = WeylElement.zero(sig)
    count = 0
    for arrangement in _multiset_permutations(labels):
        prod = WeylElement.identity(sig)
        for key in arrangement:
            prod = prod * groups[key]
        total = total + prod
        count += 1
    return total / Fraction(count)


@lru_cache(maxsize=None)
def symmetrized_monomial(signature: WeylSignature, exps: tuple) -> WeylElement:
    """S(z^a w^b) in normal-ordered form, cached per signature."""
    return symmetrize(WeylWord.from_exponents(signature, exps))


def weyl_quantize(
    f: ClassicalPoly, signature: WeylSignature | None = None
) -> WeylElement:
    """Symmetrization quantization of a canonical polynomial.

    Monomials q^a p^b map to S(z^a w^b) under the pairing q_a -> z_a,
    p_a -> w_a; constants map to multiples of the identity.
    """
    space = f.space
    if space.mode != "canonical":
        raise ValueError("symmetrization quantization needs canonical variables")
    if signature is None:
        signature = WeylSignature.quantum(space.pairs)
    if signature.pairs != space.pairs:
        raise SignatureMismatchError(
            "signature has the wrong number of generator pairs"
        )
    total = WeylElement.zero(signature)
    for exps, coeff in f.terms.items():
        total = total + symmetrized_monomial(signature, tuple(exps)) * coeff
    return total


# -- realizations and the symmetrization commutator identity ------------------


class WeylRealization:
    """Elements B_1..B_K realizing a Lie algebra under (i/h)[.,.].

    The structure constants are validated against the images on
    construction: (i/h)[B_l, B_j] must expand to sum_m c[l][j][m] B_m
    exactly.
    """

    def __init__(self, images: Sequence[WeylElement], constants: Mapping):
        if not images:
            raise ValueError("need at least one image")
        self.signature = images[0].signature
        self.images = tuple(images)
        self.constants = {
            pair: {m: GaussianRational._coerce(c) for m, c in row.items()}
            for pair, row in dict(constants).items()
        }
        self._symmetrized: dict[tuple, WeylElement] = {}
        self._validate()

    def _constants_row(self, l: int, j: int) -> Mapping:
        return self.constants.get((l, j), {})

    def _validate(self):
        k = len(self.images)
        for l in range(k):
            for j in range(k):
                lhs = i_over_hbar(
                    weyl_commutator(self.images[l], self.images[j])
                )
                rhs = WeylElement.zero(self.signature)
                for m, c in self._constants_row(l, j).items():
                    rhs = rhs + self.images[m] * c
                if lhs != rhs:
                    raise ValueError(
                        f"structure constants inconsistent at pair ({l}, {j})"
                    )

    def symmetrized(self, exponents: Sequence[int]) -> WeylElement:
        exponents = tuple(exponents)
        cached = self._symmetrized.get(exponents)
        if cached is None:
            factors = []
            for index, e in enumerate(exponents):
                factors.extend([self.images[index]] * e)
            if not factors:
                cached = WeylElement.identity(self.signature)
            else:
                cached = symmetrize_product(factors)
            self._symmetrized[exponents] = cached
        return cached

    def commutator_identity_holds(self, exponents: Sequence[int], j: int) -> bool:
        """Check [S(B^r), B_j] = -i*h * sum r_l c_(lj)^m S(B^(r+em-el))."""
        exponents = tuple(exponents)
        lhs = weyl_commutator(self.symmetrized(exponents), self.images[j])
        rhs = WeylElement.zero(self.signature)
        for l, r_l in enumerate(exponents):
            if r_l == 0:
                continue
            for m, c in self._constants_row(l, j).items():
                shifted = list(exponents)
                shifted[l] -= 1
                shifted[m] += 1
                rhs = rhs + self.symmetrized(tuple(shifted)) * (c * r_l)
        rhs = rhs * (-(I * HBAR))
        return lhs == rhs


# -- linear solvers over the algebra ------------------------------------------


def _normal_monomials(signature: WeylSignature, max_degree: int):
    return list(iter_exponents(signature.width, max_degree))


def center_solve(signature: WeylSignature, max_degree: int) -> list[WeylElement]:
    """Basis of elements of degree <= max_degree commuting with every
    generator.

    Commutation with a single generator rescales by the corresponding
    kappa, which is not a zero divisor, so h-free coefficients lose no
    solutions.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    monomials = _normal_monomials(signature, max_degree)
    rows: dict[tuple, dict] = {}
    for mono in monomials:
        element = WeylElement.monomial(signature, mono)
        for g in range(signature.width):
            image = weyl_commutator(
                element, WeylElement.generator(signature, g)
            )
            for exps, coeff in image.terms.items():
                for deg, gr in coeff.terms():
                    row = rows.setdefault((g, exps, deg), {})
                    row[mono] = row.get(mono, GaussianRational.of(0)) + gr
    basis = linalg.nullspace(rows.values(), monomials)
    return [
        WeylElement(
            signature,
            {mono: HbarScalar([(0, gr)]) for mono, gr in vec.items()},
        )
        for vec in basis
    ]


def inner_derivation_solve(
    signature: WeylSignature,
    targets: Sequence[tuple[int, WeylElement]],
    max_degree: int,
):
    """Find X with [X, g] prescribed for each generator g, or None.

    The unknown is expanded over normal-ordered monomials of degree up to
    max_degree with h-polynomial coefficients bounded by the h-degree of
    the targets.  The result is normalized to have no identity component,
    making it the unique solution with zero constant term.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    hbar_bound = 0
    for _, element in targets:
        for coeff in element.terms.values():
            hbar_bound = max(hbar_bound, coeff.hbar_degree())
    monomials = _normal_monomials(signature, max_degree)
    unknowns = [
        (mono, hdeg) for mono in monomials for hdeg in range(hbar_bound + 1)
    ]
    rows: dict[tuple, dict] = {}
    rhs: dict[tuple, GaussianRational] = {}
    for g, element in targets:
        for exps, coeff in element.terms.items():
            for deg, gr in coeff.terms():
                key = (g, exps, deg)
                rhs[key] = rhs.get(key, GaussianRational.of(0)) + gr
                rows.setdefault(key, {})
        for mono in monomials:
            image = weyl_commutator(
                WeylElement.monomial(signature, mono),
                WeylElement.generator(signature, g),
            )
            for exps, coeff in image.terms.items():
                for deg, gr in coeff.terms():
                    for shift in range(hbar_bound + 1):
                        key = (g, exps, deg + shift)
                        row = rows.setdefault(key, {})
                        unknown = (mono, shift)
                        row[unknown] = (
                            row.get(unknown, GaussianRational.of(0)) + gr
                        )
    zero = GaussianRational.of(0)
    equations = [
        (row, rhs.get(key, zero)) for key, row in sorted(rows.items())
    ]
    solution = linalg.solve_linear(equations)
    if solution is None:
        return None
    terms: dict[tuple, HbarScalar] = {}
    identity_exps = (0,) * signature.width
    for (mono, hdeg), gr in solution.items():
        if mono == identity_exps:
            continue
        terms[mono] = terms.get(mono, ZERO) + HbarScalar([(hdeg, gr)])
    return WeylElement(signature, terms)
