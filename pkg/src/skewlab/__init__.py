"""Weighted Wigner-Yanase-Dyson skew information and sum uncertainty bounds."""
from .bounds import (
    BoundReport,
    PairwiseKTable,
    WeightParams,
    all_bounds,
    build_table_observables,
    build_table_operators,
    build_table_unitaries,
    default_weights,
    norm_bound_diff_roots,
    norm_bound_mixed,
    norm_bound_sum_roots,
    prior_bounds_observables,
    tightened_bounds_observables,
    unitary_bounds,
)
from .channels import (
    ChannelBoundReport,
    assignment_search,
    channel_bounds,
    channel_k_table,
    kraus_wise_bounds,
    optimal_channel_bound,
    prior_channel_bounds,
    stacked_bounds,
)
from .linalg import (
    HermitianEigen,
    commutator,
    frobenius_norm_sq,
    hermitian_eigendecompose,
    matrix_power,
)
from .quantum import (
    DensityMatrix,
    KrausChannel,
    Observable,
    UnitaryOperator,
    amplitude_damping,
    bit_flip,
    density_from_bloch,
    pauli,
    phase_damping,
    rotation_unitaries,
    validate_channel,
)
from .skew import (
    SkewParams,
    ag_mwwyd,
    ag_wwyd,
    mwwyd,
    skew_info_channel,
    skew_info_observable,
    skew_info_operator,
    skew_info_unitary,
    spectral_oracle,
    weight_operator,
    wwyd,
    wy,
)

__version__ = "0.1.0"
