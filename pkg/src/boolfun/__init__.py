"""boolfun: exact Fourier-analytic measurements of Boolean functions, LTF/PTF
extremal computations, additive combinatorics over F2^n, Gaussian Monte
Carlo, and a conjecture-verification harness on top."""

from .errors import (
    BoolfunError,
    CapacityError,
    DomainError,
    LpError,
    NumericError,
    PreconditionError,
    TieError,
)
from .function import (
    BooleanFunction,
    Dnf,
    RealHypercubeFunction,
    and_f,
    constant,
    dictator,
    ip,
    majority,
    mod3,
    or_f,
    parity,
    tribes,
)
from .spectrum import (
    FourierStats,
    Spectrum,
    fourier_stats,
    inverse_wht,
    multilinear_eval,
    spectral_concentration,
    wht,
)
from .noise import (
    convolution_tail,
    erasure_norm,
    nicd_agreement,
    noise_operator,
    noise_profile,
    stability,
    tail_mass,
)
from .sensitivity import (
    SensitivityStats,
    count_strict_local_minima,
    is_monotone,
    junta_distance,
    sensitivity_stats,
)
from .threshold import (
    LtfSpec,
    PtfRep,
    approx_majority_min_degree,
    enumerate_ltfs,
    gl_extremal,
    intersect_halfspaces,
    is_ltf,
    ltf,
    ptf_degree,
    ptf_sparsity,
    threshold_tail,
)
from .f2n import (
    AffineSubspace,
    Density,
    F2Poly,
    F2Set,
    PatternSystem,
    density_bias,
    doubling,
    fooling_error,
    freeness_check,
    freeness_tester_estimate,
    iterated_sumset,
    max_correlation_low_degree,
    quadratic_span_min_terms,
    subspace_in_set,
    sumset,
    triangle_count,
    triangle_density,
    triangle_removal_distance,
)
from .gaussian import (
    CenteredBall,
    Complement,
    GaussianRegion,
    Halfspace,
    Intersection,
    McEstimate,
    SimplexCell,
    ball_radius,
    correlated_pairs,
    joint_prob,
    partition_stability,
    simplex_vectors,
    widths,
)
from .report import Report
from .registry import REGISTRY, run
from .search import extremal_search

__version__ = "0.1.0"
