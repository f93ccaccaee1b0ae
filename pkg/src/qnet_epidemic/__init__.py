"""Epidemic spreading on classical and photonic quantum networks."""

__version__ = "0.1.0"

from .dynamics import (
    EpidemicParams,
    InfectionTrajectory,
    critical_delta,
    direct_sim_step,
    exact_markov_expectation,
    kw_rk4,
    kw_solution,
    mnlds_step,
    run_direct_sim,
    run_mnlds,
)
from .errors import (
    ConfigError,
    DegenerateGraphError,
    InsufficientDataError,
    InvalidArgumentError,
    MalformedFileError,
    NoConvergenceError,
    QNetError,
    TooLargeError,
)
from .graphio import load_graph, save_graph
from .graphs import (
    DegreeStats,
    GeoParams,
    PhotonicParams,
    SpatialGraph,
    WeightedAdjacency,
    apply_quantum_weights,
    degree_stats,
    expected_adjacency,
    generate_er,
    generate_waxman,
    photon_success_prob,
    quantum_link_prob,
    sample_link_realization,
)
from .thresholds import (
    ScalingFit,
    SpectralResult,
    ThresholdEstimate,
    ensemble_threshold,
    fit_loglog,
    fit_scaling,
    largest_eigenvalue,
    tau_kw,
    tau_mfa,
    tau_spectral,
)
