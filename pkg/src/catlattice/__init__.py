"""Decoherence of optical Schrodinger-cat states in waveguide lattices.

Two complementary simulators of the same physics: a tight-binding
semi-infinite chain with a boundary defect (exact eigendecomposition), and
a paraxial split-step propagator for the continuous tilted array. Either
one produces the boundary survival amplitude S_00(z), which drives all
cat-state observables (coherence factor, photon statistics, Wigner
function) in the `cat` module.
"""

__version__ = "1.0.0"

from .errors import ConfigError, NumericalContractError, SelftestFailure
from .lattice import (
    LatticeModel,
    PropagationResult,
    build_defect_lattice,
    stark_chain,
    hamiltonian_matrix,
    propagate,
    propagate_state,
    required_truncation,
    uniform_edge_amplitudes,
    uniform_edge_survival,
)
from .spectrum import (
    BlochBath,
    BoundStateSet,
    AsymptoticPrediction,
    markovian_rate,
    golden_rule_rate,
    self_energy,
    self_energy_prime,
    band_edge_residuals,
    find_bound_states,
    bound_state_threshold,
    asymptotics,
)
from .cat import (
    CatState,
    CoherenceTrace,
    ReducedCatState,
    coherent_overlap,
    coherent_fock_vector,
    default_n_max,
    coherence_factor,
    reduced_density_matrix,
    photon_number_distribution,
    estimate_G_from_counts,
    wigner_function,
    fringe_visibility,
    wigner_marginal,
)
from .bpm import (
    BpmModel,
    BpmGrid,
    ModeProfile,
    BpmResult,
    ZenerDamping,
    channel_centers,
    build_index_profile,
    solve_fundamental_mode,
    bloch_period,
    tight_binding_step,
    overlap,
    residual_field,
    bpm_propagate,
    zener_damping,
)
from .harness import (
    ScenarioConfig,
    ResultTable,
    SCHEMAS,
    PRESETS,
    gradient_for_frequency,
    build_config,
    load_config_file,
    load_preset,
    read_table,
    config_from_metadata,
    run_oscillator,
    run_bloch,
    run_spectrum,
    run_sweep,
)
from .selftest import SelftestReport, run_selftest

__all__ = [
    "__version__",
    "ConfigError", "NumericalContractError", "SelftestFailure",
    "LatticeModel", "PropagationResult", "build_defect_lattice",
    "stark_chain", "hamiltonian_matrix", "propagate", "propagate_state",
    "required_truncation", "uniform_edge_amplitudes", "uniform_edge_survival",
    "BlochBath", "BoundStateSet", "AsymptoticPrediction", "markovian_rate",
    "golden_rule_rate", "self_energy", "self_energy_prime",
    "band_edge_residuals", "find_bound_states", "bound_state_threshold",
    "asymptotics",
    "CatState", "CoherenceTrace", "ReducedCatState", "coherent_overlap",
    "coherent_fock_vector", "default_n_max", "coherence_factor",
    "reduced_density_matrix", "photon_number_distribution",
    "estimate_G_from_counts", "wigner_function", "fringe_visibility",
    "wigner_marginal",
    "BpmModel", "BpmGrid", "ModeProfile", "BpmResult", "ZenerDamping",
    "channel_centers", "build_index_profile", "solve_fundamental_mode",
    "bloch_period", "tight_binding_step", "overlap", "residual_field",
    "bpm_propagate", "zener_damping",
    "ScenarioConfig", "ResultTable", "SCHEMAS", "PRESETS",
    "gradient_for_frequency", "build_config", "load_config_file",
    "load_preset", "read_table", "config_from_metadata", "run_oscillator",
    "run_bloch", "run_spectrum", "run_sweep",
    "SelftestReport", "run_selftest",
]
