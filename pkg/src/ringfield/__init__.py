"""Two-field reaction process on a cyclic lattice.

A pair of real fields on an odd-size ring, each sourcing signed
polarisation of the other through a long-range alternating kernel,
carries a conserved combined distribution that moves exactly like a
free quantum particle on the same lattice.  This package implements the
reaction step, the exact unitary evolution it linearises, the conserved
observables, and reproducible experiments for all of the model's
identities, including the even-size demonstration mode where the
correspondence breaks.
"""

from .basis import MomentumSpectrum, from_momentum_basis, to_momentum_basis
from .config import RunConfig, parse_config_text, read_config
from .evolve import (
    EvolutionConfig,
    TimestepBoundError,
    euler_step,
    euler_step_spectral,
    even_naive_step,
    exact_step,
    make_even_lattice,
    run,
    translate,
    translate_spectral,
)
from .experiments import (
    ExperimentReport,
    confined_drift_diagnostic,
    even_odd_comparison,
    identity_suite,
    kernel_oracle_check,
    order_of_accuracy_run,
    paper_table_grid,
    paper_table_run,
    qualitative_shape_run,
    tau_degradation_run,
)
from .kernels import (
    ConsistencyError,
    KernelTable,
    build_kernel_table,
    kernel_f,
    kernel_f_spectral,
    kernel_g,
    kernel_g_spectral,
)
from .lattice import Lattice, make_lattice, wrap_index
from .observables import (
    ObservableSnapshot,
    count_local_maxima,
    drift_velocity,
    gaussian_shape_residual,
    momentum_distribution,
    momentum_expectation,
    momentum_expectation_spectral,
    position_mean,
    position_spread,
    snapshot,
)
from .series import TimeSeries, read_timeseries_csv
from .state import (
    DegenerateStateError,
    FieldState,
    StateSpec,
    boost,
    build_state,
    combined_distribution,
    gaussian_state,
    norm_m,
    normalize,
    random_state,
    read_state_csv,
    read_state_json,
    state_from_amplitudes,
    uniform_state,
    write_state_csv,
    write_state_json,
)

__version__ = "0.1.0"
