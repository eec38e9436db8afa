"""Free-fermion machinery: hopping models, Givens compilation, noisy
correlation-matrix estimation with mitigation."""

from .correlation import (
    check_correlation_matrix,
    ground_correlation,
    load_correlation_csv,
    save_correlation_csv,
)
from .estimate import (
    estimate_correlation_matrices,
    build_settings,
    estimate_correlation_matrix,
    round_robin_matchings,
    sample_circuit_statevector,
)
from .gaussian import (
    CompiledNetwork,
    block_majorana,
    covariance_to_corr,
    initial_covariance,
    pauli_sign_vector,
    sample_circuit_gaussian,
)
from .givens import (
    GivensNetwork,
    block_unitary,
    givens_decompose,
    givens_to_circuit,
    parity_layer_matrix,
    preparation_circuit,
    recompile_parity,
    single_particle_matrix,
)
from .hamiltonians import HoppingSpec, build_hopping, ssh_spec, uniform_spec
from .jw import jw_observable
from .mcweeny import mcweeny
from .postselect import post_select, post_select_bits

__all__ = [
    "check_correlation_matrix", "ground_correlation", "load_correlation_csv",
    "save_correlation_csv", "build_settings", "estimate_correlation_matrix",
    "round_robin_matchings", "sample_circuit_statevector", "CompiledNetwork",
    "estimate_correlation_matrices",
    "block_majorana", "covariance_to_corr", "initial_covariance",
    "pauli_sign_vector", "sample_circuit_gaussian", "GivensNetwork",
    "block_unitary", "givens_decompose", "givens_to_circuit",
    "parity_layer_matrix", "preparation_circuit", "recompile_parity",
    "single_particle_matrix", "HoppingSpec", "build_hopping", "ssh_spec",
    "uniform_spec", "jw_observable", "mcweeny", "post_select",
    "post_select_bits",
]
