"""Exact symbolic engine for Poisson algebras, normal-ordered Weyl algebras,
Lie-algebra analysis, and polynomial quantization checks."""

from .scalar import (
    GaussianRational,
    HBAR,
    HbarDivisionError,
    HbarScalar,
    I,
    ONE,
    ZERO,
)
from .phasepoly import (
    AbstractModeError,
    ClassicalPoly,
    PhasePoint,
    SpaceMismatchError,
    VariableSpace,
    ad_power,
    ad_power_point_identity_check,
    affine_space,
    grade_decompose,
    hamiltonian_vector_field,
    poisson_bracket,
)
from .weyl import (
    SignatureMismatchError,
    WeylElement,
    WeylRealization,
    WeylSignature,
    WeylWord,
    center_solve,
    i_over_hbar,
    inner_derivation_solve,
    symmetrize,
    symmetrize_product,
    weyl_commutator,
    weyl_quantize,
)
from .lie import (
    FinLieAlgebra,
    IsoInvariants,
    LieFixtureError,
    SeriesReport,
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
from .quantize import (
    AffineGroupElement,
    GroenewoldWitness,
    PhaseScalingState,
    Q1ScanReport,
    QuantizationMap,
    QuantizationRule,
    RuleCoverageError,
    affine_group_compose,
    affine_quantization,
    affine_rep_compose,
    basic_quantization_audit,
    groenewold_witness,
    q1_check,
    q1_scan,
    remark3_quantization,
    weyl_quantization_map,
)

__version__ = "0.1.0"
