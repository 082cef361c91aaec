"""Collective dark-state codes and correlated amplitude damping."""

from ._core import (
    DampingModel,
    QeacError,
    collective_model,
    collective_operators,
    collectivity_ratio,
    compute_dark_basis,
    correlated_model,
    custom_model,
    dark_count,
    dark_residual,
    decode_two_bit,
    efficiency,
    efficiency_asymptote,
    encode_two_bit,
    encode_unitary,
    ensemble_average,
    evolve_master,
    gamma_matrix,
    independent_model,
    irrep_multiplicities,
    ket,
    lindblad_rhs,
    logical_encode,
    paper_codewords,
    trace_distance,
)

__version__ = "0.1.0"
