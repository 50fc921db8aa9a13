"""Matrix specifications: kernel factors and their Hadamard product."""

from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence, Union

from sfpsd.errors import DimensionMismatchError, SpecError
from sfpsd.kernels.families import KernelFamily, family_info
from sfpsd.specialfn.hypergeometric import CoefficientRule

PointLike = Union[complex, float, int, Sequence[Union[complex, float, int]]]

_LIST_FIELDS = ("upper", "lower")


def _normalise_point(point: PointLike) -> tuple[complex, ...]:
    if isinstance(point, (int, float, complex)):
        return (complex(point),)
    return tuple(complex(x) for x in point)


def _normalise_shared(shared: Mapping[str, Any]) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for key, value in shared.items():
        if key in _LIST_FIELDS:
            out[key] = tuple(complex(x) for x in value)
        elif key == "coeff":
            if isinstance(value, CoefficientRule):
                out[key] = value
            elif isinstance(value, Mapping):
                out[key] = CoefficientRule(
                    value.get("kind", "gaussian"),
                    {int(k): float(v) for k, v in dict(value.get("table", {})).items()},
                )
            else:
                raise SpecError(f"coeff must be a coefficient rule, got {type(value).__name__}")
        else:
            out[key] = value
    return out


@dataclass(frozen=True, eq=False)
class FactorSpec:
    """One kernel factor: family tag, family-level parameters and per-index points."""

    family: KernelFamily
    shared: dict[str, Any] = field(default_factory=dict)
    points: tuple[tuple[complex, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "family", KernelFamily(self.family))
        object.__setattr__(self, "shared", _normalise_shared(self.shared))
        object.__setattr__(self, "points", tuple(_normalise_point(p) for p in self.points))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def info(self):
        return family_info(self.family)

    def point(self, j: int) -> tuple[complex, ...]:
        return self.points[j]

    def get(self, key: str, default: Any = None) -> Any:
        return self.shared.get(key, default)

    def with_points(self, points: Iterable[PointLike]) -> "FactorSpec":
        return FactorSpec(self.family, dict(self.shared), tuple(points))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FactorSpec):
            return NotImplemented
        return (
            self.family == other.family
            and self.shared == other.shared
            and self.points == other.points
        )


@dataclass(frozen=True, eq=False)
class MatrixSpec:
    """Hadamard product of factors sharing the same dimension n."""

    factors: tuple[FactorSpec, ...]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def n(self) -> int:
        """Common dimension.

        Raises:
            SpecError: no factors
            DimensionMismatchError: factors disagree on n
        """
        if not self.factors:
            raise SpecError("a matrix spec needs at least one factor")
        sizes = {f.n for f in self.factors}
        if len(sizes) != 1:
            raise DimensionMismatchError(
                "factors have different dimensions", sizes=sorted(sizes)
            )
        return sizes.pop()

    @property
    def families(self) -> list[KernelFamily]:
        return [f.family for f in self.factors]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixSpec):
            return NotImplemented
        return self.label == other.label and self.factors == other.factors
