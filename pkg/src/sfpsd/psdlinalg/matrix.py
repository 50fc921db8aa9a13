"""Dense Hermitian matrix with symmetry bookkeeping."""

from dataclasses import dataclass, field
from typing import Any, Sequence, Union

import numpy as np

from sfpsd.errors import DimensionMismatchError, NonHermitianError

ArrayLike = Union[np.ndarray, Sequence[Sequence[complex]]]

HERMITIAN_REL_TOL = 1e-10


def hermitian_defect(data: np.ndarray) -> float:
    """max |M[j,k] - conj(M[k,j])| relative to max(1, max |M|)."""
    if data.size == 0:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(data))))
    return float(np.max(np.abs(data - data.conj().T))) / scale


@dataclass(frozen=True, eq=False)
class HermitianMatrix:
    """Immutable n x n complex Hermitian matrix.

    Build through `from_array`, which checks the Hermitian defect and stores
    the exactly symmetrised matrix (M + M^H) / 2 with a real diagonal.
    """

    entries: np.ndarray
    defect: float = 0.0
    meta: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_array(
        cls, data: ArrayLike, rel_tol: float = HERMITIAN_REL_TOL, **meta: Any
    ) -> "HermitianMatrix":
        """Validate and symmetrise.

        Raises:
            DimensionMismatchError: not a square 2-d array
            NonHermitianError: defect above rel_tol or non-finite entries
        """
        arr = np.array(data, dtype=np.complex128)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatchError("matrix must be square", shape=list(arr.shape))
        if not np.all(np.isfinite(arr)):
            raise NonHermitianError("matrix has non-finite entries")
        defect = hermitian_defect(arr)
        if defect > rel_tol:
            raise NonHermitianError(
                f"matrix is not Hermitian (relative defect {defect:.3e} > {rel_tol:.1e})",
                defect=defect,
            )
        sym = 0.5 * (arr + arr.conj().T)
        sym[np.diag_indices_from(sym)] = sym.diagonal().real
        sym.setflags(write=False)
        return cls(sym, defect, dict(meta))

    @classmethod
    def identity(cls, n: int) -> "HermitianMatrix":
        return cls.from_array(np.eye(n))

    @classmethod
    def ones(cls, n: int) -> "HermitianMatrix":
        return cls.from_array(np.ones((n, n)))

    @property
    def n(self) -> int:
        return int(self.entries.shape[0])

    def __getitem__(self, index):
        return self.entries[index]

    def array(self) -> np.ndarray:
        """Writable copy of the entries."""
        return np.array(self.entries)

    def submatrix(self, size: int) -> "HermitianMatrix":
        """Leading principal submatrix of the given size."""
        return HermitianMatrix(self.entries[:size, :size], self.defect)

    def frobenius_norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def trace(self) -> float:
        return float(self.entries.diagonal().real.sum())

    def check_same_shape(self, other: "HermitianMatrix") -> None:
        if self.n != other.n:
            raise DimensionMismatchError(
                "matrices have different dimensions", left=self.n, right=other.n
            )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "real": self.entries.real.tolist(),
            "imag": self.entries.imag.tolist(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "HermitianMatrix":
        real = np.asarray(data["real"], dtype=float)
        imag = np.asarray(data.get("imag", np.zeros_like(real)), dtype=float)
        if real.shape != imag.shape:
            raise DimensionMismatchError("real and imag parts differ in shape")
        return cls.from_array(real + 1j * imag)
