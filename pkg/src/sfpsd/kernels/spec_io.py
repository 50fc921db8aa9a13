"""MatrixSpec JSON documents, checked against the packaged schema."""

from functools import lru_cache
from importlib import resources
import json
import logging
from pathlib import Path
from typing import Any, Union

import jsonschema

from sfpsd.errors import SpecError
from sfpsd.kernels.spec import FactorSpec, MatrixSpec
from sfpsd.specialfn.hypergeometric import CoefficientRule
from sfpsd.utils.helpers import atomic_write_json

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
_LIST_FIELDS = ("upper", "lower")


@lru_cache(maxsize=None)
def load_schema(name: str) -> dict:
    """Parse one of the JSON schemas shipped in sfpsd/schemas."""
    text = resources.files("sfpsd").joinpath("schemas", name).read_text(encoding="utf-8")
    return json.loads(text)


def validate_document(document: Any, schema_name: str) -> None:
    """Raise SpecError listing every schema error of the document."""
    schema = load_schema(schema_name)
    validator = jsonschema.Draft202012Validator(schema)
    errors = sorted(validator.iter_errors(document), key=lambda e: list(e.path))
    if errors:
        violations = [
            {"path": "/".join(str(p) for p in e.path), "message": e.message} for e in errors
        ]
        raise SpecError(
            f"document does not match {schema_name} ({len(errors)} error(s))",
            violations=violations,
        )


def _encode_complex(z: complex) -> Union[float, list[float]]:
    z = complex(z)
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def _decode_complex(value: Any) -> complex:
    if isinstance(value, (list, tuple)):
        return complex(float(value[0]), float(value[1]))
    return complex(float(value))


def _encode_shared(key: str, value: Any) -> Any:
    if isinstance(value, CoefficientRule):
        return value.to_dict()
    if key in _LIST_FIELDS:
        return [_encode_complex(x) for x in value]
    if isinstance(value, bool):
        raise SpecError(f"shared value {key!r} must be numeric")
    return _encode_complex(value)


def _decode_shared(key: str, value: Any) -> Any:
    if isinstance(value, dict):
        return value
    if key in _LIST_FIELDS:
        return [_decode_complex(x) for x in value]
    z = _decode_complex(value)
    if z.imag == 0:
        r = z.real
        return int(r) if key == "p" and isinstance(value, int) else r
    return z


def _decode_point(point: Any) -> tuple[complex, ...]:
    if isinstance(point, (int, float)):
        return (complex(point),)
    return tuple(_decode_complex(x) for x in point)


def spec_to_dict(spec: MatrixSpec) -> dict:
    """JSON-ready document: complex values as [re, im], reals as plain numbers."""
    return {
        "schema_version": SCHEMA_VERSION,
        "label": spec.label,
        "factors": [
            {
                "family": f.family.value,
                "shared": {k: _encode_shared(k, v) for k, v in f.shared.items()},
                "points": [[_encode_complex(x) for x in p] for p in f.points],
            }
            for f in spec.factors
        ],
    }


def spec_from_dict(document: Any) -> MatrixSpec:
    """Schema-check a document and build the MatrixSpec.

    Raises:
        SpecError: schema violations or unconvertible values
    """
    validate_document(document, "matrix_spec.schema.json")
    try:
        factors = tuple(
            FactorSpec(
                f["family"],
                {k: _decode_shared(k, v) for k, v in f.get("shared", {}).items()},
                tuple(_decode_point(p) for p in f["points"]),
            )
            for f in document["factors"]
        )
    except (TypeError, ValueError, KeyError) as e:
        raise SpecError(f"could not convert spec document: {e}") from e
    return MatrixSpec(factors, document.get("label", ""))


def read_document(path: Union[str, Path]) -> Any:
    """Parse a JSON input file.

    Raises:
        SpecError: unreadable file or invalid JSON
    """
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as e:
        raise SpecError(f"cannot read spec file {path}: {e.strerror}", path=str(path)) from e
    except json.JSONDecodeError as e:
        raise SpecError(f"spec file {path} is not valid JSON: {e}", path=str(path)) from e


def load_spec(path: Union[str, Path]) -> MatrixSpec:
    """Read a MatrixSpec JSON file.

    Raises:
        SpecError: unreadable file, invalid JSON or schema violations
    """
    spec = spec_from_dict(read_document(path))
    logger.debug("loaded spec %r from %s", spec.label, path)
    return spec


def save_spec(spec: MatrixSpec, path: Union[str, Path]) -> Path:
    """Write a MatrixSpec JSON file atomically."""
    return atomic_write_json(Path(path), spec_to_dict(spec))
