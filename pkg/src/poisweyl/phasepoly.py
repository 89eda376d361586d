"""Multivariate classical polynomials with a Poisson bracket.

Two kinds of variable space exist.  Canonical spaces carry pairs
q1..qn, p1..pn with the bracket

    {f, g} = sum_a (df/dp_a dg/dq_a - df/dq_a dg/dp_a),

so {q_a, p_a} = -1 and {p*q, q^2} = 2*q^2.  Abstract spaces carry free
commuting generators with a declared bracket table on generators, extended
by bilinearity and the Leibniz rule.  Coefficients are HbarScalar
throughout; classical inputs simply never use h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .scalar import HbarScalar, ONE, ZERO, as_scalar

_RESERVED_NAMES = {"i", "h"}


class SpaceMismatchError(ValueError):
    """Operands live in different variable spaces."""


class AbstractModeError(ValueError):
    """A point-geometry operation was applied in abstract-generator mode."""


def _canonical_table(table) -> tuple:
    items = []
    for (a, b), terms in table.items():
        entries = []
        for exps, coeff in terms.items():
            scalar = as_scalar(coeff)
            if scalar is None:
                raise TypeError(f"bad bracket coefficient {coeff!r}")
            if not scalar.is_zero():
                entries.append((tuple(exps), scalar))
        items.append(((a, b), tuple(sorted(entries, key=lambda t: t[0]))))
    return tuple(sorted(items, key=lambda t: t[0]))


@dataclass(frozen=True)
class VariableSpace:
    """Variable declarations plus the bracket structure on generators."""

    mode: str
    names: tuple[str, ...]
    pairs: int
    table: tuple

    @classmethod
    def canonical(cls, n: int) -> "VariableSpace":
        if n < 1:
            raise ValueError("need at least one canonical pair")
        names = tuple(f"q{a + 1}" for a in range(n)) + tuple(
            f"p{a + 1}" for a in range(n)
        )
        return cls("canonical", names, n, ())

    @classmethod
    def abstract(cls, names: Sequence[str], brackets: Mapping = ()) -> "VariableSpace":
        names = tuple(names)
        if not names:
            raise ValueError("abstract space needs at least one generator")
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for name in names:
            if name in _RESERVED_NAMES:
                raise ValueError(f"{name!r} is reserved for scalars")
        index = {name: k for k, name in enumerate(names)}
        table: dict[tuple[int, int], dict] = {}
        for (na, nb), terms in dict(brackets).items():
            a, b = index[na], index[nb]
            if a == b:
                raise ValueError(f"bracket of {na} with itself must be zero")
            if a > b:
                a, b = b, a
                terms = {
                    tuple(e): -as_scalar(c) for e, c in dict(terms).items()
                }
            if (a, b) in table:
                raise ValueError(f"bracket for ({na}, {nb}) given twice")
            table[(a, b)] = dict(terms)
        space = cls("abstract", names, 0, _canonical_table(table))
        space._check_jacobi()
        return space

    # -- construction helpers ------------------------------------------------

    def zero(self) -> "ClassicalPoly":
        return ClassicalPoly(self, {})

    def one(self) -> "ClassicalPoly":
        return self.constant(1)

    def constant(self, value) -> "ClassicalPoly":
        scalar = as_scalar(value)
        if scalar is None:
            raise TypeError(f"cannot lift {value!r} to a coefficient")
        zero_exp = (0,) * len(self.names)
        return ClassicalPoly(self, {zero_exp: scalar})

    def var(self, name: str) -> "ClassicalPoly":
        k = self.index(name)
        exps = [0] * len(self.names)
        exps[k] = 1
        return ClassicalPoly(self, {tuple(exps): ONE})

    def vars(self) -> tuple["ClassicalPoly", ...]:
        return tuple(self.var(name) for name in self.names)

    def monomial(self, exps: Sequence[int], coeff=1) -> "ClassicalPoly":
        exps = tuple(exps)
        if len(exps) != len(self.names):
            raise ValueError("exponent tuple has the wrong length")
        scalar = as_scalar(coeff)
        if scalar is None:
            raise TypeError(f"cannot lift {coeff!r} to a coefficient")
        return ClassicalPoly(self, {exps: scalar})

    def poly(self, terms: Mapping) -> "ClassicalPoly":
        out = {}
        for exps, coeff in terms.items():
            scalar = as_scalar(coeff)
            if scalar is None:
                raise TypeError(f"cannot lift {coeff!r} to a coefficient")
            out[tuple(exps)] = scalar
        return ClassicalPoly(self, out)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    # -- generator brackets --------------------------------------------------

    def generator_bracket(self, a: int, b: int) -> "ClassicalPoly":
        """{g_a, g_b} as a polynomial in this space."""
        if self.mode == "canonical":
            n = self.pairs
            if a < n <= b and b - n == a:
                return self.constant(-1)
            if b < n <= a and a - n == b:
                return self.constant(1)
            return self.zero()
        if a == b:
            return self.zero()
        sign = 1
        key = (a, b)
        if a > b:
            key = (b, a)
            sign = -1
        for pair, entries in self.table:
            if pair == key:
                poly = ClassicalPoly(self, {e: c for e, c in entries})
                return poly if sign == 1 else -poly
        return self.zero()

    def _check_jacobi(self):
        gens = self.vars()
        m = len(gens)
        for a in range(m):
            for b in range(a + 1, m):
                for c in range(b + 1, m):
                    total = (
                        poisson_bracket(gens[a], poisson_bracket(gens[b], gens[c]))
                        + poisson_bracket(gens[b], poisson_bracket(gens[c], gens[a]))
                        + poisson_bracket(gens[c], poisson_bracket(gens[a], gens[b]))
                    )
                    if not total.is_zero():
                        raise ValueError(
                            "bracket table violates the Jacobi identity on "
                            f"generators {self.names[a]}, {self.names[b]}, "
                            f"{self.names[c]}"
                        )


def affine_space() -> VariableSpace:
    """Free generators x, y with {x, y} = 2*y."""
    return VariableSpace.abstract(("x", "y"), {("x", "y"): {(0, 1): 2}})


@dataclass(frozen=True)
class PhasePoint:
    """Exact rational coordinates in the variable order of the space."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, *values) -> "PhasePoint":
        return cls(tuple(Fraction(v) for v in values))

    def __len__(self):
        return len(self.coords)


class ClassicalPoly:
    """Sparse polynomial: exponent tuples mapped to HbarScalar coefficients."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VariableSpace, terms: Mapping):
        self.space = space
        width = len(space.names)
        clean = {}
        for exps, coeff in terms.items():
            exps = tuple(exps)
            if len(exps) != width or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps!r}")
            if not coeff.is_zero():
                clean[exps] = coeff
        self.terms = clean

    def _require_same_space(self, other: "ClassicalPoly"):
        if self.space != other.space:
            raise SpaceMismatchError("polynomials live in different spaces")

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        """Largest total generator degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def coefficient(self, exps: Sequence[int]) -> HbarScalar:
        return self.terms.get(tuple(exps), ZERO)

    def __add__(self, other):
        if isinstance(other, ClassicalPoly):
            self._require_same_space(other)
            out = dict(self.terms)
            for exps, coeff in other.terms.items():
                out[exps] = out[exps] + coeff if exps in out else coeff
            return ClassicalPoly(self.space, out)
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self + self.space.constant(scalar)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ClassicalPoly):
            self._require_same_space(other)
            return self + (-other)
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self + (-scalar)

    def __rsub__(self, other):
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return self.space.constant(scalar) + (-self)

    def __neg__(self):
        return ClassicalPoly(self.space, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ClassicalPoly):
            self._require_same_space(other)
            out: dict[tuple, HbarScalar] = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    exps = tuple(a + b for a, b in zip(e1, e2))
                    prod = c1 * c2
                    out[exps] = out[exps] + prod if exps in out else prod
            return ClassicalPoly(self.space, out)
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        return ClassicalPoly(
            self.space, {e: c * scalar for e, c in self.terms.items()}
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        scalar = as_scalar(other)
        if scalar is None:
            return NotImplemented
        if not scalar.is_constant():
            raise ValueError("can only divide by h-free scalars")
        gr = scalar.as_gaussian()
        return ClassicalPoly(self.space, {e: c / gr for e, c in self.terms.items()})

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.space.one()
        for _ in range(exponent):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, ClassicalPoly):
            return NotImplemented
        return self.space == other.space and self.terms == other.terms

    def __hash__(self):
        return hash((self.space, tuple(sorted(self.terms.items()))))

    def partial(self, index: int) -> "ClassicalPoly":
        """Formal partial derivative with respect to generator `index`."""
        out = {}
        for exps, coeff in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            lowered = list(exps)
            lowered[index] = e - 1
            key = tuple(lowered)
            contrib = coeff * e
            out[key] = out[key] + contrib if key in out else contrib
        return ClassicalPoly(self.space, out)

    def evaluate(self, point: PhasePoint) -> HbarScalar:
        """Exact substitution of rational coordinates (canonical mode only)."""
        if self.space.mode != "canonical":
            raise AbstractModeError("evaluation needs canonical coordinates")
        if len(point) != len(self.space.names):
            raise ValueError("point dimension does not match the space")
        total = ZERO
        for exps, coeff in self.terms.items():
            value = Fraction(1)
            for e, x in zip(exps, point.coords):
                if e:
                    value *= x ** e
            total = total + coeff * value
        return total

    def __str__(self):
        return _render_terms(self.terms, self.space.names)

    def __repr__(self):
        return f"ClassicalPoly({self})"


def _render_terms(terms: Mapping, names: Sequence[str]) -> str:
    from .scalar import inline_factors

    if not terms:
        return "0"
    ordered = sorted(
        terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0]))
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


# -- bracket machinery -------------------------------------------------------


def poisson_bracket(f: ClassicalPoly, g: ClassicalPoly) -> ClassicalPoly:
    """{f, g}; canonical spaces use partial derivatives, abstract spaces
    extend the generator table as a biderivation."""
    f._require_same_space(g)
    space = f.space
    if space.mode == "canonical":
        n = space.pairs
        total = space.zero()
        for a in range(n):
            total = total + f.partial(n + a) * g.partial(a)
            total = total - f.partial(a) * g.partial(n + a)
        return total
    out = space.zero()
    for ea, ca in f.terms.items():
        for eb, cb in g.terms.items():
            for a, ia in enumerate(ea):
                if ia == 0:
                    continue
                for b, jb in enumerate(eb):
                    if jb == 0:
                        continue
                    base = space.generator_bracket(a, b)
                    if base.is_zero():
                        continue
                    exps = list(x + y for x, y in zip(ea, eb))
                    exps[a] -= 1
                    exps[b] -= 1
                    scale = ca * cb * (ia * jb)
                    out = out + base * space.monomial(exps, scale)
    return out


def hamiltonian_vector_field(g: ClassicalPoly, m: PhasePoint) -> tuple[HbarScalar, ...]:
    """Components of X_g at m, ordered like the coordinates, defined so that
    the derivative of f along X_g equals {f, g}."""
    if g.space.mode != "canonical":
        raise AbstractModeError("Hamiltonian fields need canonical coordinates")
    n = g.space.pairs
    q_parts = [(-g.partial(n + a)).evaluate(m) for a in range(n)]
    p_parts = [g.partial(a).evaluate(m) for a in range(n)]
    return tuple(q_parts + p_parts)


def ad_power(f: ClassicalPoly, g: ClassicalPoly, k: int) -> ClassicalPoly:
    """Iterated adjoint action: ad_f^0 g = g, ad_f^k g = {f, ad_f^(k-1) g}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    result = g
    for _ in range(k):
        result = poisson_bracket(f, result)
    return result


def grade_decompose(f: ClassicalPoly) -> list[tuple[int, ClassicalPoly]]:
    """Split into homogeneous components by total generator degree."""
    buckets: dict[int, dict] = {}
    for exps, coeff in f.terms.items():
        buckets.setdefault(sum(exps), {})[exps] = coeff
    return [
        (deg, ClassicalPoly(f.space, terms))
        for deg, terms in sorted(buckets.items())
    ]


def ad_power_point_identity_check(
    f: ClassicalPoly, g: ClassicalPoly, k: int, m: PhasePoint
) -> bool:
    """Check X_{ad_f^(k-1)(g^k)}(m) = k! {f,g}^(k-1)(m) X_g(m) exactly.

    Requires g(m) = 0; callers shift g by its value at m first.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if not g.evaluate(m).is_zero():
        raise ValueError("precondition g(m) = 0 violated")
    lhs = hamiltonian_vector_field(ad_power(f, g ** k, k - 1), m)
    scale = poisson_bracket(f, g).evaluate(m) ** (k - 1) * factorial(k)
    rhs = tuple(scale * comp for comp in hamiltonian_vector_field(g, m))
    return lhs == rhs


def iter_exponents(nvars: int, max_total: int) -> Iterable[tuple[int, ...]]:
    """All exponent tuples with total degree <= max_total, graded then lex."""

    def compositions(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in compositions(total - first, slots - 1):
                yield (first,) + rest

    for total in range(max_total + 1):
        yield from compositions(total, nvars)
