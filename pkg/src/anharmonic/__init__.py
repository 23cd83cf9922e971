"""Quartic-oscillator model of intense light in a centrosymmetric Kerr medium.

Truncated Fock-space substrate, an exact spectral-evolution oracle,
first-order closed forms for higher-order squeezing and antibunching
witnesses, and a sweep/comparison harness with a CLI front end.
"""

from .criteria import (
    BOUNDARY,
    CLASSICAL,
    DEFAULT_BOUNDARY_TOL,
    NONCLASSICAL,
    PATH_CLOSED_FORM,
    PATH_EXACT_ORACLE,
    PATH_FIRST_ORDER_MATRIX,
    CriterionReport,
    VacuumDenominatorError,
    antibunching_second_order,
    ba_an_A,
    classify,
    hillery_squeezing,
    hoa_d_from_moments,
    lee_R,
    quadrature_squeezing,
)
from .dynamics import (
    DEFAULT_TIME_HORIZON,
    EvolvedState,
    MomentSet,
    build_hamiltonian,
    coherent_moment_set,
    evolve_exact,
    exact_moment_set,
    hamiltonian,
    interaction_moments,
)
from .fock import (
    EIGENVALUE_RESIDUAL_TOL,
    TAIL_TOLERANCE,
    FockVector,
    ModelParams,
    TruncationError,
    coherent_state,
    default_dim,
    expectation,
    factorial_moment,
    make_ladder_ops,
    number_state,
)
from .perturbative import (
    ClosedFormInputs,
    a_i_first_order,
    delta_y1_squared,
    first_order_delta_y1_squared,
    first_order_hoa_d,
    first_order_mean_photon_number,
    first_order_moment_set,
    first_order_squeezing_f,
    hoa_witness_d,
    hoa_witness_d_special,
    mean_photon_number,
    phase_fundamental,
    phase_second_harmonic,
    secular_factor,
    squeezing_witness_f,
    squeezing_witness_f_special,
)
from .sweep import (
    CSV_HEADER,
    MODES,
    WITNESS_NAMES,
    ConvergenceReport,
    ScalingReport,
    SweepResult,
    SweepRow,
    SweepSpec,
    SweepSpecError,
    WitnessSummary,
    compare_report,
    convergence_check,
    read_csv,
    run_sweep,
    write_csv,
)

__version__ = "0.1.0"
