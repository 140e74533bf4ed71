"""slelab: a numerical laboratory for SLE dimension-transformation formulas.

Closed-form KPZ-type formula algebra cross-checked by Monte Carlo: a
discretized Loewner zipper that lifts boundary sets onto SLE traces,
digit-restriction Cantor test sets, box-counting dimension estimation,
1D boundary multiplicative chaos, stable subordinators, and the
ancestor-free times of correlated planar Brownian motion.
"""

from .boxcount import (
    BoxCountResult,
    MeasureGrid,
    WindowPolicy,
    box_dimension_1d,
    box_dimension_2d,
    pushforward_set,
)
from .cantor import CantorSpec, discretize, exact_dimension, middle_thirds
from .chaos import ChaosProfile, LogField, chaos_profile, sample_log_field, verify_psi
from .errors import (
    BudgetError,
    ConfigError,
    DomainError,
    HorizonError,
    InsufficientScalesError,
    SwallowedPointError,
)
from .experiments import ExperimentConfig, ExperimentReport, emit, run
from .formulas import (
    ancestor_free_dimension,
    boundary_intersection_dimension,
    coupling_q,
    curve_dimension,
    cut_point_dimension,
    double_point_dimension,
    dual_boundary_hit_dimension,
    gamma_for_kappa,
    known_dimensions,
    length_kpz,
    natural_time_kpz,
    peanosphere_correlation,
    phi,
    phi_via_psi,
    psi,
    psi_inverse,
)
from .loewner import (
    DrivingPath,
    SlitChain,
    TraceCloud,
    ZipResult,
    forward_map,
    reverse_map,
    reverse_zip,
    sample_driving,
    trace,
    zip_set,
    zipped_window_right_endpoint,
)
from .stochastic import (
    CorrelatedBM,
    SubordinatorPath,
    ancestor_free_times,
    hitting_time_subordinator,
    image_dimension,
    sample_correlated_bm,
    stable_subordinator,
)

__version__ = "0.1.0"
