"""Oracle package - kernels rebuilt from their measures, and the two integral identities."""

from .measures import (
    WEIGHT_DESCRIPTIONS,
    DiscreteMeasure,
    WeightedLine,
    dn_measure,
    theta3_measure,
)

from .gram import (
    ORACLE_TOL,
    gram_discrete,
    gram_quadrature,
    kernel_from_gram,
    line_for_factor,
    oracle_factor_matrix,
    oracle_matrix,
    oracle_tolerance,
)

from .identities import AW_TOL, MP_TOL, IdentityCheck, verify_aw_integral, verify_mp_identity

from .compare import CompareReport, entrywise_compare

__all__ = [
    # Measures
    "WEIGHT_DESCRIPTIONS",
    "DiscreteMeasure",
    "WeightedLine",
    "dn_measure",
    "theta3_measure",

    # Gram constructions
    "ORACLE_TOL",
    "gram_discrete",
    "gram_quadrature",
    "kernel_from_gram",
    "line_for_factor",
    "oracle_factor_matrix",
    "oracle_matrix",
    "oracle_tolerance",

    # Identities
    "AW_TOL",
    "MP_TOL",
    "IdentityCheck",
    "verify_aw_integral",
    "verify_mp_identity",

    # Comparison
    "CompareReport",
    "entrywise_compare",
]
