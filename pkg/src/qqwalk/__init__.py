"""Quaternionic coined quantum walks on the integer line.

Simulation of the two-chirality walk with quaternion amplitudes, its
equivalent 4-component complex representation, closed-form position
distributions for the coin families that reduce to the complex walk,
spectral analysis of the momentum symbol, and weak-limit densities with
numerical convergence checks.
"""

from .coin import (
    Coin,
    MoveOperators,
    classify,
    coin_from_json,
    coin_to_json,
    hadamard_coin,
    load_coin,
    random_coin,
    split_pq,
    u_theta,
    unitarity_residuals,
    validate_coin,
)
from .errors import (
    DegenerateABError,
    DegenerateError,
    DomainError,
    NotNormalizedError,
    NotUnitaryError,
    QQWalkError,
    TooLargeError,
)
from .exact import (
    PathSum,
    boundary_prob,
    closed_form_distribution,
    closed_form_prob,
    xi_bruteforce,
    xi_closed,
    xi_closed_case3,
    xi_closed_case4,
    xi_closed_complex,
)
from .quaternion import Quaternion, chi, chi_matrix, solve_sylvester, sylvester_residual
from .spectral import (
    CompareResult,
    EigenPair,
    LimitDensity,
    char_poly_coeffs,
    eigen_system,
    eigenvector_closed,
    group_velocity,
    limit_compare,
    qqw_limit_density,
    qqw_limit_params,
    qw_limit_density,
    support_radius,
    weight_constant,
)
from .walk import (
    Distribution,
    FourierState,
    WalkState,
    distribution,
    evolve,
    evolve_fourier,
    init_state,
    moment,
    step,
    to_fourier_rep,
)

__version__ = "0.1.0"
