from fractions import Fraction
from random import Random

import pytest

from poisweyl import (
    FinLieAlgebra,
    HBAR,
    LieFixtureError,
    PhasePoint,
    VariableSpace,
    adjoint_matrices,
    canonical_witness_verify,
    close_under_bracket,
    engel_common_annihilator,
    is_jordan_holder_ordered,
    is_nilpotent,
    is_solvable,
    iso_invariants,
    nildegree,
    nilpotency_class,
    separating_sample_check,
    series,
    structure_constants,
    transitivity_rank,
    triangular_form_check,
)
from poisweyl.scalar import GaussianRational

import gen


def g(v):
    return GaussianRational.of(Fraction(v))


# -- construction and closure --------------------------------------------------


def test_close_solvable_pair():
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    algebra = close_under_bracket([p * q, q ** 2])
    assert algebra.dimension == 2


def test_close_adds_constants():
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    algebra = close_under_bracket([q, p])
    assert algebra.dimension == 3
    assert algebra.basis[0] == space.one()


def test_close_five_dimensional_fixture():
    space = VariableSpace.canonical(2)
    q1, q2, p1, p2 = space.vars()
    algebra = close_under_bracket([q1, p2, q1 * p2 + q2, p1, space.one()])
    assert algebra.dimension == 5
    assert algebra.basis[0] == space.one()


def test_close_cap_exceeded():
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    assert close_under_bracket([q ** 3, p ** 3], dim_cap=12) is None


def test_dependent_basis_rejected():
    space = VariableSpace.canonical(1)
    q, _ = space.vars()
    with pytest.raises(LieFixtureError):
        FinLieAlgebra([q, 2 * q])


def test_unclosed_basis_rejected():
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    with pytest.raises(LieFixtureError):
        FinLieAlgebra([q, p])


def test_hbar_coefficients_rejected():
    space = VariableSpace.canonical(1)
    q, _ = space.vars()
    with pytest.raises(LieFixtureError):
        FinLieAlgebra([q * HBAR])


# -- structure constants -------------------------------------------------------


def test_structure_constants_heisenberg():
    algebra = gen.heisenberg(1)  # basis (1, q, p)
    tensor = structure_constants(algebra)
    assert tensor[(1, 2)] == {0: g(-1)}
    assert tensor[(2, 1)] == {0: g(1)}
    assert (0, 1) not in tensor or not tensor[(0, 1)]


def test_structure_constants_solvable_pair():
    algebra = gen.a1_abstract()  # basis (x, y)
    tensor = structure_constants(algebra)
    assert tensor[(0, 1)] == {1: g(2)}


def test_structure_constants_five_dim():
    algebra = gen.example5()  # basis (1, q1, p2, q1*p2+q2, p1)
    tensor = structure_constants(algebra)
    nonzero = {pair for pair, row in tensor.items() if row and pair[0] < pair[1]}
    assert nonzero == {(1, 4), (2, 3), (3, 4)}
    assert tensor[(1, 4)] == {0: g(-1)}  # {q1, p1} = -1
    assert tensor[(2, 3)] == {0: g(1)}   # {p2, q1*p2 + q2} = 1
    assert tensor[(3, 4)] == {2: g(-1)}  # {q1*p2 + q2, p1} = -p2


def test_jordan_holder_ordering():
    assert is_jordan_holder_ordered(gen.example5())
    assert is_jordan_holder_ordered(gen.heisenberg(1))
    # reordering h(2) as (q, p, 1) breaks the property
    space = VariableSpace.canonical(1)
    q, p = space.vars()
    assert not is_jordan_holder_ordered(FinLieAlgebra([q, p, space.one()]))


# -- series ----------------------------------------------------------------------


def test_ascending_series_five_dim():
    report = series(gen.example5(), "ascending-central")
    assert report.dims == (1, 3, 5)
    assert report.reached_whole
    assert nilpotency_class(gen.example5()) == 3


def test_derived_series_solvable_pair():
    algebra = gen.a1_abstract()
    report = series(algebra, "derived")
    assert report.dims == (2, 1, 0)
    assert report.reached_zero
    ascending = series(algebra, "ascending-central")
    assert ascending.dims == (0,)
    assert not ascending.reached_whole
    assert is_solvable(algebra) and not is_nilpotent(algebra)


def test_abelian_ascending_completes_in_one_step():
    space = VariableSpace.canonical(2)
    algebra = FinLieAlgebra([space.var("q1"), space.var("q2")])
    assert series(algebra, "ascending-central").dims == (2,)


def test_series_dims_monotone_and_stabilize():
    for algebra in (gen.example5(), gen.heisenberg(2), gen.a1_abstract()):
        up = series(algebra, "ascending-central").dims
        assert all(a < b for a, b in zip(up, up[1:]))
        down = series(algebra, "derived").dims
        assert all(a > b for a, b in zip(down, down[1:]))
        assert len(up) <= algebra.dimension + 1
        assert len(down) <= algebra.dimension + 2


def test_nilpotent_implies_solvable():
    for algebra in (gen.example5(), gen.heisenberg(1), gen.heisenberg(2)):
        assert is_nilpotent(algebra)
        assert is_solvable(algebra)


# -- nildegree -------------------------------------------------------------------


def test_nildegree_examples():
    algebra = gen.example5()
    space = algebra.space
    q1 = space.var("q1")
    p1 = space.var("p1")
    assert nildegree(algebra, q1) == 1
    assert nildegree(algebra, p1) == 2
    assert nildegree(algebra, space.constant(5)) == 0


def test_nildegree_definitions_agree_on_basis():
    algebra = gen.example5()
    for index, element in enumerate(algebra.basis):
        assert nildegree(algebra, index) == nildegree(algebra, element)


def test_nildegree_monotone_along_basis():
    algebra = gen.example5()
    degrees = [nildegree(algebra, i) for i in range(algebra.dimension)]
    assert degrees == sorted(degrees)


def test_nildegree_series_form_needs_nilpotent():
    with pytest.raises(LieFixtureError):
        nildegree(gen.a1_abstract(), 0)


def test_nildegree_unbounded_orbit_errors():
    algebra = gen.a1_abstract()
    y = algebra.space.var("y")
    with pytest.raises(LieFixtureError):
        nildegree(algebra, y, bound=12)


def test_nildegree_of_higher_polynomial():
    algebra = gen.heisenberg(1)
    space = algebra.space
    q = space.var("q1")
    # ad(p)^k keeps lowering the q power: q^2 dies after three steps
    assert nildegree(algebra, q ** 2) == 2


# -- Engel -----------------------------------------------------------------------


def test_engel_heisenberg_adjoint():
    algebra = gen.heisenberg(1)
    vector = engel_common_annihilator(adjoint_matrices(algebra))
    assert vector == [g(1), g(0), g(0)]


def test_engel_five_dim_adjoint():
    algebra = gen.example5()
    vector = engel_common_annihilator(adjoint_matrices(algebra))
    assert vector is not None
    nonzero = [i for i, v in enumerate(vector) if not v.is_zero()]
    assert nonzero == [0]


def test_engel_zero_operator():
    vector = engel_common_annihilator([[[g(0)]]])
    assert vector == [g(1)]


def test_engel_rejects_non_nilpotent():
    with pytest.raises(LieFixtureError):
        engel_common_annihilator(adjoint_matrices(gen.a1_abstract()))


# -- point geometry ---------------------------------------------------------------


def test_transitivity_heisenberg():
    algebra = gen.heisenberg(1)
    for point in (PhasePoint.of(0, 0), PhasePoint.of(3, -2)):
        assert transitivity_rank(algebra, point) == 2


def test_transitivity_solvable_pair():
    algebra = gen.a1_canonical()
    assert transitivity_rank(algebra, PhasePoint.of(1, 1)) == 2
    assert transitivity_rank(algebra, PhasePoint.of(0, 1)) == 1


def test_transitivity_five_dim():
    algebra = gen.example5()
    rng = Random(31)
    point = gen.random_point(rng, algebra.space)
    assert transitivity_rank(algebra, point) == 4


def test_separating_checks():
    h2 = gen.heisenberg(1)
    rng = Random(37)
    pairs = []
    while len(pairs) < 10:
        m1 = gen.random_point(rng, h2.space)
        m2 = gen.random_point(rng, h2.space)
        if m1 != m2:
            pairs.append((m1, m2))
    assert separating_sample_check(h2, pairs)

    space = VariableSpace.canonical(1)
    just_q = FinLieAlgebra([space.var("q1")])
    assert not separating_sample_check(
        just_q, [(PhasePoint.of(0, 0), PhasePoint.of(0, 1))]
    )
    with pytest.raises(ValueError):
        separating_sample_check(h2, [(PhasePoint.of(1, 1), PhasePoint.of(1, 1))])


def test_separating_solvable_pair_on_positive_domain():
    algebra = gen.a1_canonical()
    rng = Random(41)
    pairs = []
    while len(pairs) < 20:
        coords1 = (Fraction(rng.randint(1, 30), rng.randint(1, 5)),
                   Fraction(rng.randint(-20, 20), rng.randint(1, 5)))
        coords2 = (Fraction(rng.randint(1, 30), rng.randint(1, 5)),
                   Fraction(rng.randint(-20, 20), rng.randint(1, 5)))
        if coords1 != coords2:
            pairs.append((PhasePoint.of(*coords1), PhasePoint.of(*coords2)))
    assert separating_sample_check(algebra, pairs)


# -- invariants and non-isomorphism ------------------------------------------------


def test_invariant_records_differ():
    five = iso_invariants(gen.example5())
    h4 = iso_invariants(gen.heisenberg(2))
    assert five.derived_subalgebra_dim == 2
    assert h4.derived_subalgebra_dim == 1
    assert five != h4
    assert five.dimension == h4.dimension == 5


# -- triangular form ----------------------------------------------------------------


def test_triangular_form_examples():
    space = VariableSpace.canonical(2)
    q1, q2, p1, p2 = space.vars()
    assert triangular_form_check(p1 + q1 * p2 + q1 * q2)
    assert not triangular_form_check(q2 * p1)
    assert not triangular_form_check(p1 * p2)
    assert not triangular_form_check(p1 ** 2)
    assert triangular_form_check(space.zero())


def test_triangular_form_accepts_fixture_bases():
    for algebra in (gen.example5(), gen.heisenberg(1), gen.heisenberg(2)):
        for element in algebra.basis:
            assert triangular_form_check(element)


# -- coordinate witnesses -------------------------------------------------------------


def test_witness_five_dim():
    algebra = gen.example5()
    ok = canonical_witness_verify(
        algebra,
        [
            ("q1", {(0, 1, 0, 0, 0): 1}),
            ("p2", {(0, 0, 1, 0, 0): 1}),
            ("p1", {(0, 0, 0, 0, 1): 1}),
            ("q2", {(0, 0, 0, 1, 0): 1, (0, 1, 1, 0, 0): -1}),
        ],
    )
    assert ok


def test_witness_heisenberg_identity():
    algebra = gen.heisenberg(2)  # basis (1, q1, q2, p1, p2)
    ok = canonical_witness_verify(
        algebra,
        [
            ("q1", {(0, 1, 0, 0, 0): 1}),
            ("q2", {(0, 0, 1, 0, 0): 1}),
            ("p1", {(0, 0, 0, 1, 0): 1}),
            ("p2", {(0, 0, 0, 0, 1): 1}),
        ],
    )
    assert ok


def test_wrong_witness_fails():
    algebra = gen.example5()
    assert not canonical_witness_verify(algebra, [("q2", {(0, 0, 0, 1, 0): 1})])


def test_malformed_witness():
    algebra = gen.example5()
    with pytest.raises(LieFixtureError):
        canonical_witness_verify(algebra, [("q7", {(0, 0, 0, 0, 0): 1})])
    with pytest.raises(LieFixtureError):
        canonical_witness_verify(algebra, [("q1", {(0, 0): 1})])
