"""Quantization maps as linear rule tables, plus the checks built on them.

A map sends source monomials to Weyl elements and extends linearly over the
scalar ring.  Rules must cover every requested monomial: a missing rule is
a coverage error, never an implicit zero, so zero regions are always
declared explicitly.  The Dirac discrepancy

    Q({f, g}) - (i/h) [Q(f), Q(g)]

is computed exactly, with the i/h factor realized as exact polynomial
division in h.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .lie import FinLieAlgebra
from .linalg import rank_of
from .phasepoly import (
    ClassicalPoly,
    VariableSpace,
    affine_space,
    iter_exponents,
    poisson_bracket,
)
from .scalar import HBAR, I
from .weyl import (
    WeylElement,
    WeylSignature,
    i_over_hbar,
    symmetrized_monomial,
    weyl_commutator,
)


class RuleCoverageError(LookupError):
    """A monomial has no declared quantization rule."""


@dataclass(frozen=True)
class QuantizationRule:
    """A pattern rule: predicate on exponent tuples plus an image builder."""

    label: str
    matches: Callable[[tuple], bool]
    build: Callable[[tuple], WeylElement]


class QuantizationMap:
    """Linear rule table from a variable space into a Weyl signature."""

    def __init__(
        self,
        source: VariableSpace,
        signature: WeylSignature,
        explicit: dict | None = None,
        patterns: Sequence[QuantizationRule] = (),
        name: str = "",
    ):
        self.source = source
        self.signature = signature
        self.explicit = {
            tuple(exps): element for exps, element in (explicit or {}).items()
        }
        self.patterns = tuple(patterns)
        self.name = name
        identity_exps = (0,) * len(source.names)
        if self.rule_for(identity_exps) != WeylElement.identity(signature):
            raise ValueError("a quantization map must send 1 to the identity")

    def rule_for(self, exps: tuple) -> WeylElement:
        exps = tuple(exps)
        hit = self.explicit.get(exps)
        if hit is not None:
            return hit
        for rule in self.patterns:
            if rule.matches(exps):
                return rule.build(exps)
        raise RuleCoverageError(
            f"no quantization rule covers the monomial {exps!r}"
        )

    def apply(self, f: ClassicalPoly) -> WeylElement:
        if f.space != self.source:
            raise ValueError("polynomial lives outside the map's source space")
        total = WeylElement.zero(self.signature)
        for exps, coeff in f.terms.items():
            total = total + self.rule_for(exps) * coeff
        return total

    __call__ = apply


# -- the Dirac-condition checker ----------------------------------------------


def q1_check(
    q: QuantizationMap, f: ClassicalPoly, g: ClassicalPoly
) -> WeylElement:
    """Discrepancy Q({f,g}) - (i/h)[Q(f), Q(g)]; zero means the pair passes."""
    bracket_image = q.apply(poisson_bracket(f, g))
    commut = weyl_commutator(q.apply(f), q.apply(g))
    return bracket_image - i_over_hbar(commut)


@dataclass(frozen=True)
class Q1Failure:
    f_exps: tuple
    g_exps: tuple
    discrepancy: WeylElement


@dataclass(frozen=True)
class Q1ScanReport:
    degree_bound: int
    checked: int
    failures: tuple[Q1Failure, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def enumerate_q1_pairs(nvars: int, degree_bound: int):
    """Deterministic list of distinct monomial pairs up to the bound."""
    monomials = list(iter_exponents(nvars, degree_bound))
    pairs = []
    for a in range(len(monomials)):
        for b in range(a + 1, len(monomials)):
            pairs.append((monomials[a], monomials[b]))
    return pairs


def q1_scan_pairs(q: QuantizationMap, pairs) -> Q1ScanReport:
    failures = []
    checked = 0
    degree = 0
    for ef, eg in pairs:
        degree = max(degree, sum(ef), sum(eg))
        f = q.source.monomial(ef)
        g = q.source.monomial(eg)
        discrepancy = q1_check(q, f, g)
        checked += 1
        if not discrepancy.is_zero():
            failures.append(Q1Failure(ef, eg, discrepancy))
    return Q1ScanReport(degree, checked, tuple(failures))


def q1_scan(q: QuantizationMap, degree_bound: int) -> Q1ScanReport:
    """Run q1_check over every distinct monomial pair up to the bound."""
    pairs = enumerate_q1_pairs(len(q.source.names), degree_bound)
    report = q1_scan_pairs(q, pairs)
    return Q1ScanReport(degree_bound, report.checked, report.failures)


# -- stock maps ---------------------------------------------------------------


def weyl_quantization_map(pairs: int = 1) -> QuantizationMap:
    """Symmetrization quantization of canonical polynomials, as a rule table."""
    space = VariableSpace.canonical(pairs)
    signature = WeylSignature.quantum(pairs)
    rule = QuantizationRule(
        "symmetrize",
        lambda exps: True,
        lambda exps: symmetrized_monomial(signature, tuple(exps)),
    )
    return QuantizationMap(space, signature, patterns=[rule], name="weyl")


def _affine_images(sign: int, signature: WeylSignature):
    x_image = WeylElement.monomial(signature, (1, 1), -(I * HBAR))
    y_image = WeylElement.monomial(signature, (2, 0), sign)
    return x_image, y_image


def affine_quantization(sign: int) -> QuantizationMap:
    """Polynomial quantization of the x, y space with {x, y} = 2y.

    The generators act as first-order differential operators,
    x -> -i*h*u*d and y -> sign*u^2 with [u, d] = -1, and every monomial of
    total degree two or more is declared to map to zero.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    space = affine_space()
    signature = WeylSignature.differential(1)
    x_image, y_image = _affine_images(sign, signature)
    zero_rule = QuantizationRule(
        "degree >= 2 -> 0",
        lambda exps: sum(exps) >= 2,
        lambda exps: WeylElement.zero(signature),
    )
    name = "affine-plus" if sign == 1 else "affine-minus"
    return QuantizationMap(
        space,
        signature,
        explicit={
            (0, 0): WeylElement.identity(signature),
            (1, 0): x_image,
            (0, 1): y_image,
        },
        patterns=[zero_rule],
        name=name,
    )


def remark3_quantization() -> QuantizationMap:
    """Variant that is nonzero on higher degrees: x^k -> k*Q(x),
    x^l*y -> Q(y), and x^l*y^m -> 0 for m > 1."""
    space = affine_space()
    signature = WeylSignature.differential(1)
    x_image, y_image = _affine_images(1, signature)
    rules = [
        QuantizationRule(
            "x^k -> k*Q(x)",
            lambda exps: exps[1] == 0 and exps[0] >= 1,
            lambda exps: x_image * exps[0],
        ),
        QuantizationRule(
            "x^l*y -> Q(y)",
            lambda exps: exps[1] == 1,
            lambda exps: y_image,
        ),
        QuantizationRule(
            "x^l*y^m -> 0 for m > 1",
            lambda exps: exps[1] >= 2,
            lambda exps: WeylElement.zero(signature),
        ),
    ]
    return QuantizationMap(
        space,
        signature,
        explicit={(0, 0): WeylElement.identity(signature)},
        patterns=rules,
        name="remark3",
    )


# -- the obstruction witness --------------------------------------------------


@dataclass(frozen=True)
class GroenewoldWitness:
    classical_identity_ok: bool
    discrepancy: WeylElement

    def hbar_square_coefficient(self):
        """The Gaussian rational c with discrepancy = c*h^2*1, or None."""
        identity_exps = (0, 0)
        if set(self.discrepancy.terms) != {identity_exps}:
            return None
        scalar = self.discrepancy.terms[identity_exps]
        if scalar.terms() != ((2, scalar.coefficient(2)),):
            return None
        return scalar.coefficient(2)

    @property
    def ok(self) -> bool:
        c = self.hbar_square_coefficient()
        return self.classical_identity_ok and c is not None and not c.is_zero()


def groenewold_witness() -> GroenewoldWitness:
    """The exact obstruction for symmetrization quantization on one pair.

    Classically {q^3, p^3} = 3 {q^2 p, q p^2}; a map satisfying the Dirac
    condition and agreeing with symmetrization quantization on these five
    elements would force

        (i/h) ( (1/9)[Q(q^3), Q(p^3)] - (1/3)[Q(q^2 p), Q(q p^2)] )

    to vanish.  The returned discrepancy is that combination, a nonzero
    rational multiple of h^2 times the identity.
    """
    space = VariableSpace.canonical(1)
    q_var, p_var = space.vars()
    f1, g1 = q_var ** 3, p_var ** 3
    f2, g2 = q_var ** 2 * p_var, q_var * p_var ** 2
    classical_ok = poisson_bracket(f1, g1) == poisson_bracket(f2, g2) * 3
    qw = weyl_quantization_map(1)
    first = weyl_commutator(qw.apply(f1), qw.apply(g1))
    second = weyl_commutator(qw.apply(f2), qw.apply(g2))
    combined = first * Fraction(1, 9) - second * Fraction(1, 3)
    return GroenewoldWitness(classical_ok, i_over_hbar(combined))


# -- the covering group of the affine line and its representations -------------


def _positive_fraction(value) -> Fraction:
    value = Fraction(value)
    if value <= 0:
        raise ValueError("scaling parameter must be positive")
    return value


@dataclass(frozen=True)
class AffineGroupElement:
    """(nu, lam) with lam > 0 and composition (nu, lam)(beta, delta) =
    (nu + lam^2 beta, lam delta)."""

    nu: Fraction
    lam: Fraction

    @classmethod
    def of(cls, nu, lam) -> "AffineGroupElement":
        return cls(Fraction(nu), _positive_fraction(lam))

    @classmethod
    def identity(cls) -> "AffineGroupElement":
        return cls(Fraction(0), Fraction(1))

    def __mul__(self, other: "AffineGroupElement") -> "AffineGroupElement":
        return AffineGroupElement(
            self.nu + self.lam ** 2 * other.nu, self.lam * other.lam
        )

    def inverse(self) -> "AffineGroupElement":
        return AffineGroupElement(-self.nu / self.lam ** 2, 1 / self.lam)


def affine_group_compose(
    g1: AffineGroupElement, g2: AffineGroupElement
) -> AffineGroupElement:
    return g1 * g2


@dataclass(frozen=True)
class PhaseScalingState:
    """Symbolic record of psi(q) -> exp(sign*i*mu*c*q^2) psi(s*q).

    The coefficient c of mu*q^2 stays a formal rational; mu is never
    identified with a power of h.
    """

    sign: int
    c: Fraction
    s: Fraction

    @classmethod
    def of(cls, sign, c, s) -> "PhaseScalingState":
        if sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        return cls(sign, Fraction(c), _positive_fraction(s))

    @classmethod
    def identity(cls, sign: int) -> "PhaseScalingState":
        return cls.of(sign, 0, 1)


def affine_rep_compose(
    sign: int, g: AffineGroupElement, state: PhaseScalingState
) -> PhaseScalingState:
    """Apply the unitary of g to a phase-scaling state, exactly on parameters:
    substituting lam*q into the inner transform gives
    (nu + lam^2 c, lam s)."""
    if sign != state.sign:
        raise ValueError("representation sign does not match the state")
    return PhaseScalingState.of(
        sign, g.nu + g.lam ** 2 * state.c, g.lam * state.s
    )


# -- the full audit -----------------------------------------------------------


@dataclass(frozen=True)
class QuantizationAudit:
    normalized: bool
    basis_pair_failures: tuple[tuple[int, int], ...]
    image_rank: int
    expected_rank: int
    scan: Q1ScanReport

    @property
    def faithful(self) -> bool:
        return self.image_rank == self.expected_rank

    @property
    def ok(self) -> bool:
        return (
            self.normalized
            and not self.basis_pair_failures
            and self.faithful
            and self.scan.ok
        )


def basic_quantization_audit(
    q: QuantizationMap, algebra: FinLieAlgebra, degree_bound: int
) -> QuantizationAudit:
    """Check normalization, the Dirac condition on basis pairs and on the
    generated polynomial span up to the degree bound, and faithfulness on
    the algebra via exact rank of the images."""
    if algebra.space != q.source:
        raise ValueError("algebra does not live in the map's source space")
    identity_exps = (0,) * len(q.source.names)
    normalized = q.rule_for(identity_exps) == WeylElement.identity(q.signature)
    failures = []
    K = algebra.dimension
    for i in range(K):
        for j in range(i + 1, K):
            if not q1_check(q, algebra.basis[i], algebra.basis[j]).is_zero():
                failures.append((i, j))
    images = [q.apply(b).flatten() for b in algebra.basis]
    image_rank = rank_of(images)
    scan = q1_scan(q, degree_bound)
    return QuantizationAudit(
        normalized, tuple(failures), image_rank, K, scan
    )
