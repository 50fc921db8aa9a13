"""Entrywise comparison of a kernel matrix against its oracle."""

from dataclasses import dataclass
from typing import Union

import numpy as np

from sfpsd.errors import DimensionMismatchError
from sfpsd.psdlinalg.eigen import as_hermitian
from sfpsd.psdlinalg.matrix import HermitianMatrix

MatrixLike = Union[HermitianMatrix, np.ndarray, list]

# Entries smaller than this fraction of max|B| are compared against the floor instead.
RELATIVE_FLOOR = 1e-12


@dataclass(frozen=True)
class CompareReport:
    max_deviation: float
    worst_index: tuple[int, int]
    rel_tol: float

    @property
    def ok(self) -> bool:
        return self.max_deviation <= self.rel_tol

    def to_dict(self) -> dict:
        return {
            "max_deviation": self.max_deviation,
            "worst_index": list(self.worst_index),
            "rel_tol": self.rel_tol,
            "ok": self.ok,
        }


def entrywise_compare(a: MatrixLike, b: MatrixLike, rel_tol: float) -> CompareReport:
    """max over (j, k) of |A - B| / max(|B|, 1e-12 max|B|), with B the reference.

    Raises:
        DimensionMismatchError: A and B differ in size

    Examples:
        entrywise_compare(a, a, 1e-10).max_deviation  # 0.0
    """
    a, b = as_hermitian(a), as_hermitian(b)
    if a.n != b.n:
        raise DimensionMismatchError("cannot compare matrices of different size", n=[a.n, b.n])
    if a.n == 0:
        return CompareReport(0.0, (0, 0), rel_tol)
    ref = np.abs(b.entries)
    floor = RELATIVE_FLOOR * float(np.max(ref))
    denom = np.maximum(ref, floor)
    diff = np.abs(a.entries - b.entries)
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(denom > 0, diff / np.where(denom > 0, denom, 1.0), diff)
    worst = np.unravel_index(int(np.argmax(rel)), rel.shape)
    return CompareReport(float(rel[worst]), (int(worst[0]), int(worst[1])), rel_tol)
