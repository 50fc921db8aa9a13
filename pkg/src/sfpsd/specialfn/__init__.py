"""Specialfn package - scalar special-function evaluators with explicit convergence control."""

from .series import (
    DEFAULT_CONTROL,
    ComplexValue,
    EvalResult,
    SeriesControl,
)

from .gamma import beta, gamma, log_gamma, rising_factorial

from .zeta import (
    dirichlet_eta,
    hurwitz_zeta,
    polygamma_shift,
    riemann_xi,
    zeta,
)

from .theta import jacobi_dn, quarter_period, theta3

from .lerch import lerch_phi

from .qseries import (
    INFINITE,
    elliptic_pochhammer,
    elliptic_theta,
    gamma_q,
    q_pochhammer,
)

from .hypergeometric import (
    DEFAULT_RULE,
    CoefficientRule,
    basic_hypergeometric_phi,
    deformed_q_hypergeometric,
    hypergeometric_f,
    modular_series,
)

from .registry import FUNCTIONS, FunctionRouter

__all__ = [
    # Convergence plumbing
    "DEFAULT_CONTROL",
    "ComplexValue",
    "EvalResult",
    "SeriesControl",

    # Gamma family
    "beta",
    "gamma",
    "log_gamma",
    "rising_factorial",

    # Zeta family
    "dirichlet_eta",
    "hurwitz_zeta",
    "lerch_phi",
    "polygamma_shift",
    "riemann_xi",
    "zeta",

    # Theta / elliptic
    "jacobi_dn",
    "quarter_period",
    "theta3",

    # q-series
    "INFINITE",
    "elliptic_pochhammer",
    "elliptic_theta",
    "gamma_q",
    "q_pochhammer",

    # Hypergeometric-type series
    "DEFAULT_RULE",
    "CoefficientRule",
    "basic_hypergeometric_phi",
    "deformed_q_hypergeometric",
    "hypergeometric_f",
    "modular_series",

    # Routing
    "FUNCTIONS",
    "FunctionRouter",
]
