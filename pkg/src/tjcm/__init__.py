"""Exact dynamics and entropy-squeezing diagnostics for two two-level
atoms exchanging l photons at a time with one resonant cavity mode.

The analytic route diagonalizes the excitation-conserving 4x4 blocks of
the interaction and assembles single-atom reduced states from the block
amplitudes; an independent brute-force route (RK4 on the full product
space plus a direct partial trace) verifies it.  A CLI emits the standard
figure presets and free parameter scans as CSV time series.
"""

from .blocks import (
    BlockCoefficients,
    EigenBlock,
    InteractionBlock,
    build_block,
    closed_form_x,
    coefficient_table,
    diagonalize_block,
    eigen_table,
    evolve_block,
    evolve_grid,
)
from .errors import (
    ContractViolationError,
    InternalConsistencyError,
    InvalidParameterError,
    ResourceRefusalError,
    StepSizeError,
    TjcmError,
    TruncationError,
    UsageError,
)
from .jcm import jcm_bloch, jcm_entropy_squeezing, tjcm_harmonic_sy
from .observables import (
    BlochVector,
    SqueezeReport,
    binary_entropy_of_mean,
    bloch,
    e_x_identity_check,
    entropy_squeezing,
    eur_residual,
    squeeze_report,
    variance_squeezing,
    von_neumann,
)
from .params import FockWeights, ModelParams, coherent_weights, fock_cutoff
from .reduced import AtomId, ReducedAtomState, q_terms, reduced_state, swap_transform
from .scan import (
    PRESET_CONFIGS,
    PRESET_NAMES,
    ScanConfig,
    TimeSeries,
    VerifyReport,
    read_csv,
    run_preset,
    run_scan,
    run_verify,
    write_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AtomId",
    "BlochVector",
    "BlockCoefficients",
    "ContractViolationError",
    "EigenBlock",
    "FockWeights",
    "InteractionBlock",
    "InternalConsistencyError",
    "InvalidParameterError",
    "ModelParams",
    "PRESET_CONFIGS",
    "PRESET_NAMES",
    "ReducedAtomState",
    "ResourceRefusalError",
    "ScanConfig",
    "SqueezeReport",
    "StepSizeError",
    "TimeSeries",
    "TjcmError",
    "TruncationError",
    "UsageError",
    "VerifyReport",
    "binary_entropy_of_mean",
    "bloch",
    "build_block",
    "closed_form_x",
    "coefficient_table",
    "coherent_weights",
    "diagonalize_block",
    "e_x_identity_check",
    "eigen_table",
    "entropy_squeezing",
    "eur_residual",
    "evolve_block",
    "evolve_grid",
    "fock_cutoff",
    "jcm_bloch",
    "jcm_entropy_squeezing",
    "q_terms",
    "read_csv",
    "reduced_state",
    "run_preset",
    "run_scan",
    "run_verify",
    "squeeze_report",
    "swap_transform",
    "tjcm_harmonic_sy",
    "variance_squeezing",
    "von_neumann",
    "write_csv",
]
