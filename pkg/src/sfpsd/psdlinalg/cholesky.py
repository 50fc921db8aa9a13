"""Diagonal-pivoted outer-product Cholesky for Hermitian matrices."""

from dataclasses import dataclass
import logging
from typing import Iterator, Union

import numpy as np

from sfpsd.errors import DomainError
from sfpsd.psdlinalg.eigen import as_hermitian
from sfpsd.psdlinalg.matrix import HermitianMatrix

logger = logging.getLogger(__name__)

DET_PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class CholeskyResult:
    """Outcome of a pivoted factorisation; unpacks as (rank, success)."""

    rank: int
    success: bool
    pivots: tuple[float, ...]
    permutation: tuple[int, ...]
    scale: float
    factor: np.ndarray

    def __iter__(self) -> Iterator:
        return iter((self.rank, self.success))

    @property
    def determinant(self) -> float:
        """Product of pivots for a full-rank factorisation, else 0."""
        if not self.success:
            raise DomainError("determinant from pivots needs a successful factorisation")
        n = len(self.permutation)
        if self.rank < n:
            return 0.0
        return float(np.prod(self.pivots)) if self.pivots else 1.0


def pivoted_cholesky(
    m: Union[HermitianMatrix, np.ndarray, list], tol: float = 1e-8
) -> CholeskyResult:
    """Factor P M P^T = L L^H with largest-diagonal pivoting.

    Stops when the largest remaining diagonal is below tol * scale, with
    scale = max(1, initial max diagonal). success is False when that
    largest remaining diagonal is below -tol * scale, or when the remaining
    Schur complement at the stop still has off-diagonal mass above
    2 * tol * scale (a PSD remainder is bounded by its diagonal).

    Examples:
        pivoted_cholesky(np.eye(3))              # rank 3, success
        pivoted_cholesky([[1, 1], [1, 1]])       # rank 1, success
        pivoted_cholesky([[1, 2], [2, 1]])       # success False
    """
    m = as_hermitian(m)
    a = m.array()
    n = m.n
    piv = np.arange(n)
    if n == 0:
        return CholeskyResult(0, True, (), (), 1.0, np.zeros((0, 0), dtype=complex))
    scale = max(1.0, float(np.max(a.diagonal().real)))
    pivots: list[float] = []
    success = True
    rank = n

    for i in range(n):
        d = a.diagonal().real
        j = i + int(np.argmax(d[i:]))
        a_max = d[j]
        if a_max <= tol * scale:
            rank = i
            rest = a[i:, i:]
            off = np.abs(rest - np.diag(rest.diagonal()))
            if a_max < -tol * scale or (off.size and float(np.max(off)) > 2.0 * tol * scale):
                success = False
            break

        # Symmetric row/column permutation.
        if j != i:
            a[:, [i, j]] = a[:, [j, i]]
            a[[i, j], :] = a[[j, i], :]
            piv[[i, j]] = piv[[j, i]]

        pivots.append(float(a_max))
        root = np.sqrt(a_max)
        a[i, i] = root
        a[i + 1 :, i] /= root
        # Hermitian rank-one update of the trailing block
        a[i + 1 :, i + 1 :] -= np.outer(a[i + 1 :, i], a[i + 1 :, i].conj())

    factor = np.tril(a)[:, :rank]
    logger.debug("pivoted Cholesky: n=%d rank=%d success=%s", n, rank, success)
    return CholeskyResult(rank, success, tuple(pivots), tuple(int(p) for p in piv), scale, factor)


def cholesky_determinant(m: Union[HermitianMatrix, np.ndarray, list]) -> float:
    """det(M) of a PSD matrix as the product of pivots, factorising to exhaustion.

    Pivots below DET_PIVOT_TOL * scale end the factorisation and give 0.

    Raises:
        DomainError: the factorisation meets a clearly negative pivot
    """
    result = pivoted_cholesky(m, tol=DET_PIVOT_TOL)
    if not result.success:
        raise DomainError("matrix is not positive semidefinite")
    return result.determinant
