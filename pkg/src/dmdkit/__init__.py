"""Modal decomposition of snapshot-pair data.

Fit the best linear one-step map to matched snapshot matrices, extract
its eigenvalues and modes by several equivalent routes, and cross-check
the result against balanced realization (from Markov parameters) and
linear inverse modeling (from EOF coefficients), which both estimate
the same operator from different inputs.
"""

from .dmd import (
    ConsistencyReport,
    DmdDecomposition,
    Reconstruction,
    ReducedOperator,
    SpectrumPoint,
    adjoint_modes,
    exact_dmd,
    exact_dmd_qr,
    exact_dmd_sequential,
    linear_consistency,
    projected_dmd,
    propagate,
    reconstruct,
    reduced_operator,
    spectrum,
)
from .era import (
    EraDmdReport,
    EraRealization,
    MarkovSequence,
    build_hankel,
    era_dmd_similarity,
    era_realize,
    markov_from_blocks,
    markov_parameters,
    match_eigenvalues,
)
from .errors import (
    ConfigError,
    DimensionError,
    DmdkitError,
    EigensolverError,
    ParseError,
    RankZeroError,
)
from .generators import (
    gen_ar1,
    gen_planar_rotation,
    gen_random_linear,
    gen_standing_wave,
    gen_two_timescale,
)
from .lim import (
    LimDmdReport,
    LimModel,
    eof_coefficients,
    green_function,
    lim_dmd_equivalence,
    lim_model,
    most_probable_state,
)
from .linalg import (
    EigenPairs,
    ReducedSvd,
    eig_dense,
    orthonormal_basis,
    pseudoinverse_apply,
    reduced_svd,
)
from .pairs import (
    SnapshotPairs,
    TrajectorySet,
    delay_embed,
    embed_sequence,
    pairs_from_arrays,
    pairs_from_sequence,
    pairs_from_strided,
    pairs_from_trajectories,
    permute_columns,
    snapshot_matrix,
    subtract_mean,
)
from .scaling import scale_amplitudes, scale_biorthogonal, scale_unit_norm

__version__ = "0.1.0"

__all__ = [
    "ConfigError",
    "ConsistencyReport",
    "DimensionError",
    "DmdDecomposition",
    "DmdkitError",
    "EigenPairs",
    "EigensolverError",
    "EraDmdReport",
    "EraRealization",
    "LimDmdReport",
    "LimModel",
    "MarkovSequence",
    "ParseError",
    "RankZeroError",
    "Reconstruction",
    "ReducedOperator",
    "ReducedSvd",
    "SnapshotPairs",
    "SpectrumPoint",
    "TrajectorySet",
    "adjoint_modes",
    "build_hankel",
    "delay_embed",
    "eig_dense",
    "embed_sequence",
    "eof_coefficients",
    "era_dmd_similarity",
    "era_realize",
    "exact_dmd",
    "exact_dmd_qr",
    "exact_dmd_sequential",
    "gen_ar1",
    "gen_planar_rotation",
    "gen_random_linear",
    "gen_standing_wave",
    "gen_two_timescale",
    "green_function",
    "lim_dmd_equivalence",
    "lim_model",
    "linear_consistency",
    "markov_from_blocks",
    "markov_parameters",
    "match_eigenvalues",
    "most_probable_state",
    "orthonormal_basis",
    "pairs_from_arrays",
    "pairs_from_sequence",
    "pairs_from_strided",
    "pairs_from_trajectories",
    "permute_columns",
    "projected_dmd",
    "propagate",
    "pseudoinverse_apply",
    "reconstruct",
    "reduced_operator",
    "reduced_svd",
    "scale_amplitudes",
    "scale_biorthogonal",
    "scale_unit_norm",
    "snapshot_matrix",
    "spectrum",
    "subtract_mean",
    "__version__",
]
