"""Psdlinalg package - Hermitian matrices, eigenvalues, pivoted Cholesky and PSD verdicts."""

from .matrix import HermitianMatrix, hermitian_defect

from .eigen import (
    EigenResult,
    eigen_decomposition,
    eigenvalues_hermitian,
    real_embedding,
)

from .cholesky import CholeskyResult, cholesky_determinant, pivoted_cholesky

from .verdict import (
    PsdVerdict,
    gram_matrix,
    hadamard_det_check,
    leading_minors,
    psd_verdict,
    schur_product,
)

__all__ = [
    "HermitianMatrix",
    "hermitian_defect",
    "EigenResult",
    "eigen_decomposition",
    "eigenvalues_hermitian",
    "real_embedding",
    "CholeskyResult",
    "cholesky_determinant",
    "pivoted_cholesky",
    "PsdVerdict",
    "gram_matrix",
    "hadamard_det_check",
    "leading_minors",
    "psd_verdict",
    "schur_product",
]
