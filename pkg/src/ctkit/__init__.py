"""Finite-model verification workbench.

Possibility of tasks on finite classical and quantum substrates, the
information and superinformation predicates built from them, exact ensemble
convergence, and a machine-checked derivation of expected-value behaviour.
"""
from __future__ import annotations

from .classical import ClassicalModel
from .ensembles import (
    EXACT_DENOMINATOR_BOUND,
    ConvergenceReport,
    ConvergenceRow,
    PartitionOfUnity,
    build_counting_constructor,
    class_key,
    deviant_weight,
    frequency,
    intrinsic_partition_preserved,
    partition_of_unity,
    verify_E1_E2,
)
from .errors import (
    CtError,
    DegenerateInputError,
    DisjointnessError,
    DispatchError,
    DomainError,
    IllegitimateAttributeError,
    InvalidCompositionError,
    LabelArithmeticError,
    MeasurerConformanceError,
    ModelSpecError,
    NotMeasurableError,
    PreconditionError,
    ReceptiveStateError,
    RepresentationError,
    SizeLimitError,
    StateError,
    TransformError,
    UnsupportedInputError,
)
from .games import (
    AdderSpec,
    DecisionSupportReport,
    DerivationStep,
    DerivationTrace,
    Game,
    apply_adder,
    build_adder,
    check_decision_support,
    check_equal_value,
    compose_games,
    derive_value,
    derive_value_mn,
    exact_game_value,
    game_value,
    make_game,
    render_trace,
    transform_game,
)
from .kernel import (
    CLASSICAL,
    IMPOSSIBLE,
    POSSIBLE,
    QUANTUM,
    UNKNOWN,
    Attribute,
    PossibilityVerdict,
    SubstrateSpec,
    Task,
    Variable,
    attribute_projector,
    attribute_span,
    attribute_equal,
    attribute_subset,
    attribute_union,
    attributes_disjoint,
    classical_substrate,
    coarsen_variable,
    compose_substrates,
    contains_state,
    extensional_attribute,
    identity_task,
    is_task_possible,
    parallel_task,
    product_attribute,
    quantum_substrate,
    replay_witness,
    subspace_attribute,
    task,
    union_attribute_of,
    validate_variable,
    variable,
)
from .modelspec import ModelSpecDocument, parse_model_spec
from .predicates import (
    PredicateReport,
    bar,
    blank_attribute,
    check_measurement_consistency,
    cloning_task,
    detect_superinformation,
    distinguishing_task,
    generalised_mixture_kind,
    is_computation_variable,
    is_distinguishable,
    is_generalised_mixture,
    is_information_variable,
    is_measurable,
    is_observable,
    permutation_task,
    product_variable,
    restricted_variable,
    span_closure,
)
from .quantum import (
    ComparerSpec,
    ComparisonOutcome,
    MeasurerSpec,
    QuantumModel,
    apply_measurer,
    basis_members,
    build_comparer,
    build_measurer,
    comparer_for_measurers,
    cyclic_shift_map,
    gram,
    intrinsic_part,
    negation_map,
    permutation_computation,
    sharp_value,
    transposition_map,
    unitary_task_feasible,
)
from .states import (
    MixedState,
    PureState,
    apply_unitary,
    basis_state,
    embed_unitary,
    expectation,
    inner,
    normalized,
    orthogonal,
    partial_trace,
    states_equal,
    tensor,
)
from .tolerance import DEFAULT_TOL, tol
from .unpredictability import (
    PredictorProblem,
    PredictorVerdict,
    UnpredictabilityCertificate,
    predictor_feasible,
    replay_predictor,
    unpredictability_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "AdderSpec",
    "apply_adder",
    "apply_measurer",
    "apply_unitary",
    "Attribute",
    "attribute_equal",
    "attribute_projector",
    "attribute_span",
    "attribute_subset",
    "attribute_union",
    "attributes_disjoint",
    "bar",
    "basis_members",
    "basis_state",
    "blank_attribute",
    "build_adder",
    "build_comparer",
    "build_counting_constructor",
    "build_measurer",
    "check_decision_support",
    "check_equal_value",
    "check_measurement_consistency",
    "class_key",
    "CLASSICAL",
    "classical_substrate",
    "ClassicalModel",
    "cloning_task",
    "coarsen_variable",
    "comparer_for_measurers",
    "ComparerSpec",
    "ComparisonOutcome",
    "compose_games",
    "compose_substrates",
    "contains_state",
    "ConvergenceReport",
    "ConvergenceRow",
    "CtError",
    "cyclic_shift_map",
    "DecisionSupportReport",
    "DEFAULT_TOL",
    "DegenerateInputError",
    "DerivationStep",
    "DerivationTrace",
    "derive_value",
    "derive_value_mn",
    "detect_superinformation",
    "deviant_weight",
    "DisjointnessError",
    "DispatchError",
    "distinguishing_task",
    "DomainError",
    "embed_unitary",
    "EXACT_DENOMINATOR_BOUND",
    "exact_game_value",
    "expectation",
    "extensional_attribute",
    "frequency",
    "Game",
    "game_value",
    "generalised_mixture_kind",
    "gram",
    "identity_task",
    "IllegitimateAttributeError",
    "IMPOSSIBLE",
    "inner",
    "intrinsic_part",
    "intrinsic_partition_preserved",
    "InvalidCompositionError",
    "is_computation_variable",
    "is_distinguishable",
    "is_generalised_mixture",
    "is_information_variable",
    "is_measurable",
    "is_observable",
    "is_task_possible",
    "LabelArithmeticError",
    "make_game",
    "MeasurerConformanceError",
    "MeasurerSpec",
    "MixedState",
    "ModelSpecDocument",
    "ModelSpecError",
    "negation_map",
    "normalized",
    "NotMeasurableError",
    "orthogonal",
    "parallel_task",
    "parse_model_spec",
    "partial_trace",
    "partition_of_unity",
    "PartitionOfUnity",
    "permutation_computation",
    "permutation_task",
    "PossibilityVerdict",
    "POSSIBLE",
    "PreconditionError",
    "PredicateReport",
    "predictor_feasible",
    "PredictorProblem",
    "PredictorVerdict",
    "product_attribute",
    "product_variable",
    "PureState",
    "QUANTUM",
    "quantum_substrate",
    "QuantumModel",
    "ReceptiveStateError",
    "render_trace",
    "replay_predictor",
    "replay_witness",
    "RepresentationError",
    "restricted_variable",
    "sharp_value",
    "SizeLimitError",
    "span_closure",
    "StateError",
    "states_equal",
    "subspace_attribute",
    "SubstrateSpec",
    "Task",
    "task",
    "tensor",
    "tol",
    "transform_game",
    "TransformError",
    "transposition_map",
    "union_attribute_of",
    "unitary_task_feasible",
    "UNKNOWN",
    "unpredictability_certificate",
    "UnpredictabilityCertificate",
    "UnsupportedInputError",
    "validate_variable",
    "Variable",
    "variable",
    "verify_E1_E2",
    "__version__",
]
