"""Helper utilities - seeds, complex argument parsing, atomic JSON output."""

import hashlib
import json
import os
from pathlib import Path
import platform
import re
from typing import Any, Union

import psutil

from sfpsd.errors import SpecError

_IMAG_SUFFIX = re.compile(r"[ij]$")


def derive_seed(seed: int, *parts: object) -> int:
    """Stable 64-bit seed from a base seed and labels (family, trial, ...).

    Independent of scheduling order, so concurrent fuzz trials draw the same
    specs as a sequential run.
    """
    h = hashlib.blake2b(digest_size=8)
    h.update(str(seed).encode("utf-8"))
    for part in parts:
        h.update(b"|")
        h.update(str(part).encode("utf-8"))
    return int.from_bytes(h.digest(), byteorder="big", signed=False)


def parse_complex(text: str) -> complex:
    """Parse "a+bi", "a-bi", "bi", "a" (a trailing j is accepted too).

    Raises:
        SpecError: not a complex literal

    Examples:
        parse_complex("0.5+1.25i")  # (0.5+1.25j)
        parse_complex("-i")         # -1j
    """
    raw = text.strip().replace(" ", "")
    literal = _IMAG_SUFFIX.sub("j", raw) if raw else raw
    try:
        value = complex(literal)
    except ValueError:
        message = f"cannot parse complex number {text!r} (expected a+bi)"
        raise SpecError(message, value=text) from None
    if value != value:  # NaN
        raise SpecError(f"complex argument {text!r} is not a number", value=text)
    return value


def format_complex(z: complex, digits: int = 15) -> str:
    """Inverse of parse_complex for display."""
    z = complex(z)
    if z.imag == 0:
        return f"{z.real:.{digits}g}"
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.{digits}g}{sign}{abs(z.imag):.{digits}g}i"


def host_info() -> dict[str, Any]:
    """Facts about the machine a report was produced on."""
    memory = psutil.virtual_memory()
    return {
        "platform": platform.platform(),
        "machine": platform.machine(),
        "python": platform.python_version(),
        "cpu_count": psutil.cpu_count(logical=True),
        "memory_gb": round(memory.total / 1024**3, 1),
    }


def to_json_text(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True, allow_nan=False) + "\n"


def atomic_write_json(path: Union[str, Path], document: Any) -> Path:
    """Write JSON through a temp file and os.replace so readers never see half a file."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    text = to_json_text(document)
    tmp_path = path.with_name(path.name + ".tmp")
    with open(tmp_path, "w", encoding="utf-8") as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp_path, path)
    return path
