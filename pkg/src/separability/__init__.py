"""Necessary separability criteria for finite-dimensional density matrices."""

from .criteria import (
    CheckConfig,
    CriterionReport,
    PauliBlocks,
    Verdict,
    blocks_to_state,
    full_verdict,
    majorization_check,
    pauli_blocks,
    ppt_check,
    purity_chain_check,
    theorem2_check,
    theorem3_sphere_check,
    theorem3_trace_check,
    upsilon_R,
)
from .diagnostics import cross_gram_diagnostic, n_mu, n_mu_interval, purify
from .errors import DimensionError, InvalidStateError, NumericalError
from .states import (
    DensityMatrix,
    PureState,
    SeparableEnsemble,
    bell_state,
    mix,
    phi_mixture,
    projector,
    random_density,
    random_pure,
    random_separable,
    spectra_twins,
)

__version__ = "0.1.0"
