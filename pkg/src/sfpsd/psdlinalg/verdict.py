"""PSD verdicts and the Schur-product consequences."""

from dataclasses import asdict, dataclass
import logging
from typing import Union

import numpy as np

from sfpsd.errors import DomainError
from sfpsd.psdlinalg.cholesky import cholesky_determinant, pivoted_cholesky
from sfpsd.psdlinalg.eigen import as_hermitian, eigenvalues_hermitian
from sfpsd.psdlinalg.matrix import HermitianMatrix

logger = logging.getLogger(__name__)

MatrixLike = Union[HermitianMatrix, np.ndarray, list]

QUADRATIC_FORM_SAMPLES = 64


@dataclass(frozen=True)
class PsdVerdict:
    is_psd: bool
    min_eig: float
    max_eig: float
    cholesky_rank: int
    tolerance_used: float
    cholesky_success: bool = True
    min_quadratic_form: float = 0.0
    sweeps: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def quadratic_form_minimum(m: HermitianMatrix, samples: int, seed: int = 0) -> float:
    """min over random complex c of c^H M c / |c|^2."""
    if m.n == 0:
        return 0.0
    rng = np.random.default_rng(seed)
    c = rng.standard_normal((samples, m.n)) + 1j * rng.standard_normal((samples, m.n))
    forms = np.einsum("si,ij,sj->s", c.conj(), m.entries, c).real
    norms = np.sum(np.abs(c) ** 2, axis=1)
    return float(np.min(forms / norms))


def psd_verdict(m: MatrixLike, tol_rel: float = 1e-8, seed: int = 0) -> PsdVerdict:
    """Decide positive semidefiniteness from eigenvalues and pivoted Cholesky.

    tolerance_used = tol_rel * max(1, lambda_max). A random quadratic-form
    smoke test over 64 complex vectors must also stay above -tolerance_used.

    Examples:
        psd_verdict(np.diag([0.0, 1.0])).is_psd    # True
        psd_verdict([[1, 2], [2, 1]]).is_psd        # False
    """
    m = as_hermitian(m)
    eig = eigenvalues_hermitian(m)
    tolerance = tol_rel * max(1.0, eig.max_eig)
    chol = pivoted_cholesky(m, tol_rel)
    q_min = quadratic_form_minimum(m, QUADRATIC_FORM_SAMPLES, seed)
    is_psd = eig.min_eig >= -tolerance and chol.success and q_min >= -tolerance
    logger.debug(
        "psd_verdict n=%d: min_eig=%.3e max_eig=%.3e rank=%d psd=%s",
        m.n, eig.min_eig, eig.max_eig, chol.rank, is_psd,
    )
    return PsdVerdict(
        is_psd=bool(is_psd),
        min_eig=eig.min_eig,
        max_eig=eig.max_eig,
        cholesky_rank=chol.rank,
        tolerance_used=tolerance,
        cholesky_success=chol.success,
        min_quadratic_form=q_min,
        sweeps=eig.iterations,
    )


def schur_product(a: MatrixLike, b: MatrixLike) -> HermitianMatrix:
    """Entrywise (Hadamard) product A o B.

    Raises:
        DimensionMismatchError: different dimensions
    """
    a, b = as_hermitian(a), as_hermitian(b)
    a.check_same_shape(b)
    return HermitianMatrix.from_array(a.entries * b.entries)


def hadamard_det_check(a: MatrixLike, b: MatrixLike, tol: float = 1e-10) -> bool:
    """det(A o B) >= det(A) det(B) - tol * max(1, |det(A o B)|) for PSD A, B.

    Determinants come from Cholesky pivots.

    Raises:
        DomainError: an operand is not PSD
    """
    a, b = as_hermitian(a), as_hermitian(b)
    a.check_same_shape(b)
    det_a = cholesky_determinant(a)
    det_b = cholesky_determinant(b)
    det_ab = cholesky_determinant(schur_product(a, b))
    ok = det_ab >= det_a * det_b - tol * max(1.0, abs(det_ab))
    if not ok:
        logger.warning("det(A o B)=%.6e < det(A)det(B)=%.6e", det_ab, det_a * det_b)
    return bool(ok)


def leading_minors(m: MatrixLike, tol: float = 1e-14) -> list[float]:
    """Determinants of the leading principal submatrices of sizes 1..n.

    Each minor gets its own pivoted factorisation; a submatrix that fails
    the Cholesky route falls back to an LU determinant so negative minors
    are reported with their sign.
    """
    m = as_hermitian(m)
    minors = []
    for size in range(1, m.n + 1):
        sub = m.submatrix(size)
        result = pivoted_cholesky(sub, tol)
        if result.success:
            minors.append(result.determinant)
        else:
            minors.append(float(np.linalg.det(sub.entries).real))
    return minors


def gram_matrix(g: np.ndarray) -> HermitianMatrix:
    """G^H G, PSD by construction."""
    g = np.asarray(g, dtype=np.complex128)
    if g.ndim != 2:
        raise DomainError("Gram factor must be two-dimensional")
    return HermitianMatrix.from_array(g.conj().T @ g)
