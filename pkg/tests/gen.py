"""Seeded random generators and shared fixtures for the test suite."""

from __future__ import annotations

from fractions import Fraction
from random import Random

from poisweyl import (
    ClassicalPoly,
    FinLieAlgebra,
    GaussianRational,
    HbarScalar,
    PhasePoint,
    VariableSpace,
    WeylElement,
    WeylSignature,
    affine_space,
)


def random_fraction(rng: Random, num: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_gaussian(rng: Random) -> GaussianRational:
    return GaussianRational.of(random_fraction(rng), random_fraction(rng))


def random_scalar(rng: Random, max_h: int = 2, gaussian: bool = False) -> HbarScalar:
    terms = []
    for deg in range(max_h + 1):
        if rng.random() < 0.6:
            coeff = random_gaussian(rng) if gaussian else GaussianRational.of(
                random_fraction(rng)
            )
            terms.append((deg, coeff))
    return HbarScalar(terms)


def random_poly(
    rng: Random,
    space: VariableSpace,
    max_degree: int,
    nterms: int = 4,
    gaussian: bool = False,
) -> ClassicalPoly:
    width = len(space.names)
    terms = {}
    for _ in range(nterms):
        exps = [0] * width
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(width)] += 1
        coeff = random_gaussian(rng) if gaussian else random_fraction(rng)
        terms[tuple(exps)] = HbarScalar.of(coeff)
    return space.poly(terms)


def random_point(rng: Random, space: VariableSpace) -> PhasePoint:
    return PhasePoint.of(
        *[random_fraction(rng, num=6, den=4) for _ in space.names]
    )


def random_weyl(
    rng: Random, signature: WeylSignature, max_degree: int, nterms: int = 3
) -> WeylElement:
    width = signature.width
    terms = {}
    for _ in range(nterms):
        exps = [0] * width
        for _ in range(rng.randint(0, max_degree)):
            exps[rng.randrange(width)] += 1
        terms[tuple(exps)] = HbarScalar.of(random_fraction(rng))
    return WeylElement(signature, terms)


# -- stock algebras -----------------------------------------------------------


def heisenberg(n: int) -> FinLieAlgebra:
    space = VariableSpace.canonical(n)
    basis = [space.one()]
    basis.extend(space.var(f"q{a + 1}") for a in range(n))
    basis.extend(space.var(f"p{a + 1}") for a in range(n))
    return FinLieAlgebra(basis)


def example5() -> FinLieAlgebra:
    space = VariableSpace.canonical(2)
    q1, q2, p1, p2 = space.vars()
    return FinLieAlgebra([space.one(), q1, p2, q1 * p2 + q2, p1])


def a1_canonical() -> FinLieAlgebra:
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    return FinLieAlgebra([p * q, q ** 2])


def a1_abstract() -> FinLieAlgebra:
    space = affine_space()
    return FinLieAlgebra([space.var("x"), space.var("y")])
