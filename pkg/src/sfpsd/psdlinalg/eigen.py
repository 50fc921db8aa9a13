"""Cyclic Jacobi eigensolver for Hermitian matrices via the real 2n embedding."""

from dataclasses import dataclass
import logging
import math
from typing import Union

import numpy as np

from sfpsd.errors import NonConvergenceError
from sfpsd.psdlinalg.matrix import HermitianMatrix

logger = logging.getLogger(__name__)

MAX_SWEEPS = 100
OFFDIAG_REL = 1e-14
PAIR_SPREAD = 1e-9


@dataclass(frozen=True)
class EigenResult:
    eigenvalues: tuple[float, ...]
    iterations: int
    offdiag_residual: float

    @property
    def min_eig(self) -> float:
        return self.eigenvalues[0] if self.eigenvalues else 0.0

    @property
    def max_eig(self) -> float:
        return self.eigenvalues[-1] if self.eigenvalues else 0.0


def as_hermitian(m: Union[HermitianMatrix, np.ndarray, list]) -> HermitianMatrix:
    if isinstance(m, HermitianMatrix):
        return m
    return HermitianMatrix.from_array(m)


def real_embedding(m: HermitianMatrix) -> np.ndarray:
    """[[X, -Y], [Y, X]] for M = X + iY (real symmetric, size 2n)."""
    x, y = m.entries.real, m.entries.imag
    return np.block([[x, -y], [y, x]])


def _offdiag_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def jacobi_symmetric(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, int, float]:
    """Cyclic Jacobi on a real symmetric matrix.

    Returns:
        (eigenvalues unsorted, eigenvectors as columns, sweeps, final off-diagonal norm)

    Raises:
        NonConvergenceError: off-diagonal mass still above threshold after MAX_SWEEPS
    """
    a = np.array(a, dtype=float)
    size = a.shape[0]
    v = np.eye(size)
    threshold = OFFDIAG_REL * float(np.linalg.norm(a))
    off = _offdiag_norm(a)
    sweeps = 0
    while off > threshold:
        if sweeps >= MAX_SWEEPS:
            raise NonConvergenceError(
                "Jacobi eigensolver did not converge", sweeps=sweeps, offdiag=off
            )
        sweeps += 1
        for p in range(size - 1):
            for q in range(p + 1, size):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                diff = a[q, q] - a[p, p]
                if abs(apq) < abs(diff) * 1.0e-36:
                    t = apq / diff
                else:
                    phi = diff / (2.0 * apq)
                    t = 1.0 / (abs(phi) + math.sqrt(phi * phi + 1.0))
                    if phi < 0.0:
                        t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s, c]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = rot.T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ rot
        off = _offdiag_norm(a)
    return np.diag(a).copy(), v, sweeps, off


def _pair_spectrum(values: np.ndarray) -> np.ndarray:
    """Collapse the doubled embedded spectrum by pairing neighbours in sorted order."""
    ordered = np.sort(values)
    lows, highs = ordered[0::2], ordered[1::2]
    spread = float(np.max(np.abs(highs - lows))) if lows.size else 0.0
    scale = max(1.0, float(np.max(np.abs(ordered)))) if ordered.size else 1.0
    if spread > PAIR_SPREAD * scale:
        logger.warning("embedded spectrum pairs differ by %.3e", spread)
    return 0.5 * (lows + highs)


def eigenvalues_hermitian(m: Union[HermitianMatrix, np.ndarray, list]) -> EigenResult:
    """Eigenvalues of a Hermitian matrix, ascending.

    Examples:
        eigenvalues_hermitian([[2, 1], [1, 2]]).eigenvalues  # (1.0, 3.0)
        eigenvalues_hermitian([[1, 1j], [-1j, 1]]).eigenvalues  # (0.0, 2.0)
    """
    m = as_hermitian(m)
    if m.n == 0:
        return EigenResult((), 0, 0.0)
    values, _, sweeps, off = jacobi_symmetric(real_embedding(m))
    paired = _pair_spectrum(values)
    logger.debug("Jacobi: n=%d, %d sweeps, off-diagonal %.2e", m.n, sweeps, off)
    return EigenResult(tuple(float(x) for x in paired), sweeps, off)


def eigen_decomposition(
    m: Union[HermitianMatrix, np.ndarray, list],
) -> tuple[EigenResult, np.ndarray]:
    """Eigenvalues plus orthonormal complex eigenvectors (columns).

    Each eigenvalue cluster of the embedding carries 2k real vectors
    [x; y]; the complex candidates x + iy span the k-dimensional eigenspace
    of M, from which an orthonormal basis is taken by SVD.
    """
    m = as_hermitian(m)
    n = m.n
    if n == 0:
        return EigenResult((), 0, 0.0), np.zeros((0, 0), dtype=complex)
    values, vectors, sweeps, off = jacobi_symmetric(real_embedding(m))
    order = np.argsort(values)
    values, vectors = values[order], vectors[:, order]
    candidates = vectors[:n, :] + 1j * vectors[n:, :]
    scale = max(1.0, float(np.max(np.abs(values))))

    basis = []
    eigs = []
    start = 0
    while start < 2 * n:
        stop = start + 2
        while stop < 2 * n and values[stop] - values[stop - 1] <= PAIR_SPREAD * scale:
            stop += 2
        block = candidates[:, start:stop]
        k = (stop - start) // 2
        u, _, _ = np.linalg.svd(block, full_matrices=False)
        basis.append(u[:, :k])
        eigs.extend([float(np.mean(values[start:stop]))] * k)
        start = stop
    v = np.hstack(basis)
    return EigenResult(tuple(eigs), sweeps, off), v
