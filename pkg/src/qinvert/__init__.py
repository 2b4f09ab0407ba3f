"""qinvert: generalized state-inversion maps for multipartite quantum
states and the constraint families they generate -- correlation and
monogamy inequalities for linear entropies, shadow inequalities,
entanglement-detection maps, and marginal-compatibility witnesses."""

from .constraints import (
    ConstraintReport,
    MarginalWitness,
    ReportEntry,
    correlation_constraint,
    correlation_report,
    entropy_inequalities,
    independence_rank,
    independence_rank_pure,
    marginal_report,
    marginal_witnesses,
    marginal_witnesses_from_marginals,
    monogamy_check,
    monogamy_report,
    shadow_report,
    shadow_value,
)
from .dims import (
    DEFAULT_DIM_CAP,
    SubsystemDims,
    mask_bitstring,
    mask_from_parties,
    parties_from_mask,
)
from .gellmann import GellMannBasis, build_basis, trace_resolution, transpose_resolution
from .invariants import (
    InvariantTable,
    bipartite_concurrence_squared,
    c_t,
    c_t_squared,
    invariant_table,
)
from .inversion import (
    DetectionParams,
    Grouping,
    apply_detection_map,
    choi_matrix,
    coarse_grain_invert,
    invert_kraus,
    invert_product,
    invert_sum,
    kraus_operators,
)
from .io import StateFileError, read_state_file, state_from_dict, state_to_dict, write_state_file
from .states import DensityMatrix, PureState, linear_entropies, purity
from .tensor import embed, kron, min_eigenvalue, partial_trace
from .zoo import (
    StateRecipe,
    bell_pair_with_mixed_qubit,
    bell_state,
    build,
    ghz_state,
    ginibre_mixed,
    haar_pure,
    monotone_counterexample,
    pinned_ghz_invariant,
    pinned_ghz_state,
    pinned_mix_invariant,
    pinned_mix_state,
    w_state,
)

__version__ = "0.1.0"

__all__ = [
    "ConstraintReport",
    "DEFAULT_DIM_CAP",
    "DensityMatrix",
    "DetectionParams",
    "GellMannBasis",
    "Grouping",
    "InvariantTable",
    "MarginalWitness",
    "PureState",
    "ReportEntry",
    "StateFileError",
    "StateRecipe",
    "SubsystemDims",
    "apply_detection_map",
    "bell_pair_with_mixed_qubit",
    "bell_state",
    "bipartite_concurrence_squared",
    "build",
    "build_basis",
    "c_t",
    "c_t_squared",
    "choi_matrix",
    "coarse_grain_invert",
    "correlation_constraint",
    "correlation_report",
    "embed",
    "entropy_inequalities",
    "ghz_state",
    "ginibre_mixed",
    "haar_pure",
    "independence_rank",
    "independence_rank_pure",
    "invariant_table",
    "invert_kraus",
    "invert_product",
    "invert_sum",
    "kraus_operators",
    "kron",
    "linear_entropies",
    "marginal_report",
    "marginal_witnesses",
    "marginal_witnesses_from_marginals",
    "mask_bitstring",
    "mask_from_parties",
    "min_eigenvalue",
    "monogamy_check",
    "monogamy_report",
    "monotone_counterexample",
    "parties_from_mask",
    "partial_trace",
    "pinned_ghz_invariant",
    "pinned_ghz_state",
    "pinned_mix_invariant",
    "pinned_mix_state",
    "purity",
    "read_state_file",
    "shadow_report",
    "shadow_value",
    "state_from_dict",
    "state_to_dict",
    "trace_resolution",
    "transpose_resolution",
    "w_state",
    "write_state_file",
]
