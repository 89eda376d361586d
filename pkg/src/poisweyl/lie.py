"""Finite-dimensional Lie algebras of classical polynomials.

Algebras are given by an ordered basis of polynomials; closure, structure
constants, central ascending and derived series, nildegrees, Engel common
annihilators, sampled transitivity and separation checks, isomorphism
invariants, and the triangular normal-form predicate all run over exact
Gaussian-rational linear algebra.  Fixtures must be h-free: these are
classical observables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import LinearSpan, nullspace, rank_of
from .phasepoly import (
    ClassicalPoly,
    PhasePoint,
    VariableSpace,
    hamiltonian_vector_field,
    poisson_bracket,
)
from .scalar import GR_ONE, GaussianRational, as_scalar


class LieFixtureError(ValueError):
    """The input does not describe a valid classical Lie fixture."""


def _poly_vector(poly: ClassicalPoly) -> dict:
    vec = {}
    for exps, coeff in poly.terms.items():
        if not coeff.is_constant():
            raise LieFixtureError(
                "Lie fixtures must have h-free coefficients"
            )
        vec[exps] = coeff.as_gaussian()
    return vec


class FinLieAlgebra:
    """Ordered basis of polynomials closed under the Poisson bracket.

    Structure constants are computed on construction; the basis is checked
    for exact linear independence and bracket closure.
    """

    def __init__(self, basis: Sequence[ClassicalPoly]):
        basis = tuple(basis)
        if not basis:
            raise LieFixtureError("empty basis")
        space = basis[0].space
        for b in basis[1:]:
            if b.space != space:
                raise LieFixtureError("basis elements live in different spaces")
        self.space = space
        self.basis = basis
        self._span = LinearSpan()
        for b in basis:
            if not self._span.add(_poly_vector(b)):
                raise LieFixtureError("basis is linearly dependent")
        constants: dict[tuple[int, int], dict[int, GaussianRational]] = {}
        K = len(basis)
        for i in range(K):
            for j in range(i + 1, K):
                bracket = poisson_bracket(basis[i], basis[j])
                coords = self._span.coordinates(_poly_vector(bracket))
                if coords is None:
                    raise LieFixtureError(
                        f"bracket of basis elements {i} and {j} leaves the span"
                    )
                constants[(i, j)] = coords
                constants[(j, i)] = {k: -v for k, v in coords.items()}
        self.constants = constants

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def bracket_in_basis(self, i: int, j: int) -> dict[int, GaussianRational]:
        """Coefficients of {b_i, b_j} over the basis."""
        return dict(self.constants.get((i, j), {}))

    def coordinates(self, poly: ClassicalPoly):
        """Coefficients of a polynomial over the basis, or None."""
        return self._span.coordinates(_poly_vector(poly))

    def element(self, coords: Mapping[int, GaussianRational]) -> ClassicalPoly:
        total = self.space.zero()
        for k, c in coords.items():
            total = total + self.basis[k] * c
        return total


def close_under_bracket(
    generators: Sequence[ClassicalPoly], dim_cap: int = 64
):
    """Smallest bracket-closed span containing the generators.

    Returns the resulting algebra, or None when its dimension would exceed
    dim_cap.  A discovered constant direction is normalized to the
    polynomial 1 and placed first in the basis.
    """
    generators = [g for g in generators if not g.is_zero()]
    if not generators:
        raise LieFixtureError("need at least one nonzero generator")
    if dim_cap < len(generators):
        raise ValueError("dim_cap is smaller than the generator count")
    span = LinearSpan()
    basis: list[ClassicalPoly] = []
    for g in generators:
        if span.add(_poly_vector(g)):
            basis.append(g)
    grew = True
    while grew:
        grew = False
        size = len(basis)
        for i in range(size):
            for j in range(i + 1, size):
                bracket = poisson_bracket(basis[i], basis[j])
                if bracket.is_zero():
                    continue
                if span.add(_poly_vector(bracket)):
                    basis.append(bracket)
                    grew = True
                    if len(basis) > dim_cap:
                        return None
    constant_at = None
    for idx, b in enumerate(basis):
        if b.total_degree() == 0:
            constant_at = idx
            break
    if constant_at is not None:
        rest = [b for idx, b in enumerate(basis) if idx != constant_at]
        basis = [basis[0].space.one()] + rest
    return FinLieAlgebra(basis)


def structure_constants(algebra: FinLieAlgebra):
    """The full antisymmetric tensor {(i, j): {k: c}} over basis indices."""
    return {pair: dict(row) for pair, row in algebra.constants.items()}


def is_jordan_holder_ordered(algebra: FinLieAlgebra) -> bool:
    """True when c_(ij)^k = 0 for every k >= min(i, j) (0-based)."""
    for (i, j), row in algebra.constants.items():
        bound = min(i, j)
        if any(k >= bound for k in row):
            return False
    return True


@dataclass(frozen=True)
class SeriesReport:
    kind: str
    dims: tuple[int, ...]
    reached_whole: bool
    reached_zero: bool


def _ascending_subspaces(algebra: FinLieAlgebra) -> list[list[dict]]:
    """Coordinate bases of the central ascending series b^1, b^2, ...

    Stops when the series stalls or exhausts the algebra.
    """
    K = algebra.dimension
    steps: list[list[dict]] = []
    current: list[dict] = []
    while True:
        span = LinearSpan()
        for vec in current:
            span.add(vec)
        residuals: dict[tuple[int, int], dict] = {}
        for i in range(K):
            image = {}
            for j in range(K):
                for k, c in algebra.bracket_in_basis(i, j).items():
                    image.setdefault(j, {})[k] = c
            for j, vec in image.items():
                reduced = {k: v for k, v in vec.items()}
                if current:
                    reduced, _ = span._reduce(reduced)
                for k, v in reduced.items():
                    if not v.is_zero():
                        residuals.setdefault((i, k), {})[j] = v
        rows = list(residuals.values())
        solutions = nullspace(rows, list(range(K)))
        new_dim = len(solutions)
        prev_dim = len(current)
        if new_dim == prev_dim:
            break
        steps.append(solutions)
        current = solutions
        if new_dim == K:
            break
    return steps


def series(algebra: FinLieAlgebra, kind: str) -> SeriesReport:
    """Central ascending or derived series with per-step dimensions."""
    K = algebra.dimension
    if kind == "ascending-central":
        steps = _ascending_subspaces(algebra)
        dims = tuple(len(s) for s in steps) or (0,)
        if not steps:
            dims = (0,)
        return SeriesReport(kind, dims, dims[-1] == K, False)
    if kind == "derived":
        dims = [K]
        current = [{i: GR_ONE} for i in range(K)]
        while True:
            span = LinearSpan()
            size = len(current)
            for a in range(size):
                for b in range(a + 1, size):
                    vec: dict[int, GaussianRational] = {}
                    for i, u in current[a].items():
                        for j, v in current[b].items():
                            for k, c in algebra.bracket_in_basis(i, j).items():
                                cur = vec.get(k)
                                add = u * v * c
                                vec[k] = cur + add if cur is not None else add
                    vec = {k: v for k, v in vec.items() if not v.is_zero()}
                    if vec:
                        span.add(vec)
            new_dim = span.rank
            if new_dim == dims[-1]:
                break
            dims.append(new_dim)
            current = span.basis_rows()
            if new_dim == 0:
                break
        return SeriesReport(kind, tuple(dims), False, dims[-1] == 0)
    raise ValueError(f"unknown series kind {kind!r}")


def is_nilpotent(algebra: FinLieAlgebra) -> bool:
    return series(algebra, "ascending-central").reached_whole


def is_solvable(algebra: FinLieAlgebra) -> bool:
    return series(algebra, "derived").reached_zero


def nilpotency_class(algebra: FinLieAlgebra) -> int | None:
    report = series(algebra, "ascending-central")
    return len(report.dims) if report.reached_whole else None


def nildegree(algebra: FinLieAlgebra, element, bound: int = 32) -> int:
    """Smallest N with all (N+1)-fold adjoint actions annihilating the input.

    Basis indices use the central ascending series (the algebra must be
    nilpotent); polynomials use the annihilation definition directly, with
    a search bound for inputs whose adjoint orbit never dies.
    """
    if isinstance(element, int):
        if not is_nilpotent(algebra):
            raise LieFixtureError("nildegree by series needs a nilpotent algebra")
        steps = _ascending_subspaces(algebra)
        target = {element: GR_ONE}
        for n, step in enumerate(steps):
            span = LinearSpan()
            for vec in step:
                span.add(vec)
            if span.contains(target):
                return n
        raise LieFixtureError("basis element escaped the ascending series")
    if not isinstance(element, ClassicalPoly):
        raise TypeError("element must be a basis index or a polynomial")
    level = [element]
    if element.is_zero():
        return 0
    for n in range(bound + 1):
        span = LinearSpan()
        nxt = []
        for g in level:
            for b in algebra.basis:
                bracket = poisson_bracket(b, g)
                if bracket.is_zero():
                    continue
                if span.add(_poly_vector(bracket)):
                    nxt.append(bracket)
        if not nxt:
            return n
        level = nxt
    raise LieFixtureError(
        f"adjoint actions did not annihilate the polynomial within {bound} steps"
    )


def adjoint_matrices(algebra: FinLieAlgebra) -> list[list[list[GaussianRational]]]:
    """Matrices of ad(b_i) acting on basis coordinates; entry [k][j] is the
    b_k component of {b_i, b_j}."""
    K = algebra.dimension
    zero = GaussianRational.of(0)
    out = []
    for i in range(K):
        matrix = [[zero for _ in range(K)] for _ in range(K)]
        for j in range(K):
            for k, c in algebra.bracket_in_basis(i, j).items():
                matrix[k][j] = c
        out.append(matrix)
    return out


def _matrix_multiply(a, b):
    n = len(a)
    zero = GaussianRational.of(0)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            if a[i][k].is_zero():
                continue
            for j in range(n):
                out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def engel_common_annihilator(matrices: Sequence, dim: int | None = None):
    """A nonzero common kernel vector of nilpotent matrices, or None.

    Every operator must be nilpotent as a matrix; a non-nilpotent input is
    rejected.  None is returned only when the common kernel is zero.
    """
    lifted = []
    for matrix in matrices:
        rows = [
            [GaussianRational._coerce(v) for v in row] for row in matrix
        ]
        lifted.append(rows)
    if dim is None:
        if not lifted:
            raise ValueError("need the dimension when no operators are given")
        dim = len(lifted[0])
    if dim == 0:
        return None
    for matrix in lifted:
        if len(matrix) != dim or any(len(row) != dim for row in matrix):
            raise ValueError("operators must be square and of equal size")
        power = matrix
        for _ in range(dim - 1):
            power = _matrix_multiply(power, matrix)
        if any(not v.is_zero() for row in power for v in row):
            raise LieFixtureError("operator is not nilpotent")
    rows = []
    for matrix in lifted:
        for row in matrix:
            vec = {j: v for j, v in enumerate(row) if not v.is_zero()}
            rows.append(vec)
    kernel = nullspace(rows, list(range(dim)))
    if not kernel:
        return None
    first = kernel[0]
    zero = GaussianRational.of(0)
    return [first.get(j, zero) for j in range(dim)]


def transitivity_rank(algebra: FinLieAlgebra, point: PhasePoint) -> int:
    """Rank of the Hamiltonian field components of the basis at a point."""
    if algebra.space.mode != "canonical":
        raise LieFixtureError("transitivity needs canonical coordinates")
    vectors = []
    for b in algebra.basis:
        components = hamiltonian_vector_field(b, point)
        vec = {}
        for idx, value in enumerate(components):
            gr = value.as_gaussian()
            if not gr.is_zero():
                vec[idx] = gr
        vectors.append(vec)
    return rank_of(vectors)


def separating_sample_check(
    algebra: FinLieAlgebra, pairs: Sequence[tuple[PhasePoint, PhasePoint]]
) -> bool:
    """Sampled necessary check: some basis element separates each pair.

    This is evidence, not a proof; the points are caller-supplied.
    """
    if algebra.space.mode != "canonical":
        raise LieFixtureError("separation needs canonical coordinates")
    for m1, m2 in pairs:
        if m1 == m2:
            raise ValueError("coincident points in a pair")
        if not any(
            b.evaluate(m1) != b.evaluate(m2) for b in algebra.basis
        ):
            return False
    return True


@dataclass(frozen=True)
class IsoInvariants:
    dimension: int
    derived_dims: tuple[int, ...]
    ascending_dims: tuple[int, ...]
    derived_subalgebra_dim: int
    nilpotency_class: int | None
    nilpotent: bool
    solvable: bool


def iso_invariants(algebra: FinLieAlgebra) -> IsoInvariants:
    """Isomorphism invariants; differing records certify non-isomorphism,
    matching records are inconclusive."""
    derived = series(algebra, "derived")
    ascending = series(algebra, "ascending-central")
    derived_dim = derived.dims[1] if len(derived.dims) > 1 else algebra.dimension
    return IsoInvariants(
        dimension=algebra.dimension,
        derived_dims=derived.dims,
        ascending_dims=ascending.dims,
        derived_subalgebra_dim=derived_dim,
        nilpotency_class=len(ascending.dims) if ascending.reached_whole else None,
        nilpotent=ascending.reached_whole,
        solvable=derived.reached_zero,
    )


def triangular_form_check(f: ClassicalPoly) -> bool:
    """Check the triangular shape: degree <= 1 in the momenta jointly, with
    the coefficient of p_a depending only on q_1..q_(a-1) (constant for p_1)
    and a momentum-free part in the q's alone."""
    if f.space.mode != "canonical":
        raise LieFixtureError("the form predicate needs canonical coordinates")
    n = f.space.pairs
    for exps in f.terms:
        qpart, ppart = exps[:n], exps[n:]
        total_p = sum(ppart)
        if total_p == 0:
            continue
        if total_p > 1:
            return False
        alpha = ppart.index(1)
        if any(qpart[beta] > 0 for beta in range(alpha, n)):
            return False
    return True


def canonical_witness_verify(
    algebra: FinLieAlgebra,
    witnesses: Sequence[tuple[str, Mapping]],
) -> bool:
    """Verify supplied coordinate witnesses.

    Each witness pairs a target variable name with a polynomial expression
    in the basis elements, given as exponent tuples over basis indices; the
    witness passes when the expansion reproduces the coordinate exactly.
    """
    if algebra.space.mode != "canonical":
        raise LieFixtureError("witnesses target canonical coordinates")
    K = algebra.dimension
    for target, expression in witnesses:
        if target not in algebra.space.names:
            raise LieFixtureError(f"unknown target coordinate {target!r}")
        total = algebra.space.zero()
        for exps, coeff in dict(expression).items():
            exps = tuple(exps)
            if len(exps) != K or any(e < 0 for e in exps):
                raise LieFixtureError(f"malformed witness monomial {exps!r}")
            scalar = as_scalar(coeff)
            if scalar is None:
                raise LieFixtureError(f"bad witness coefficient {coeff!r}")
            term = algebra.space.constant(scalar)
            for index, e in enumerate(exps):
                term = term * algebra.basis[index] ** e
            total = total + term
        if total != algebra.space.var(target):
            return False
    return True
