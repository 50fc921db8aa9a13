"""Utils package - console output, logging setup and small helpers."""

from .helpers import (
    atomic_write_json,
    derive_seed,
    format_complex,
    host_info,
    parse_complex,
)

from .display import configure_logging, console, err_console

__all__ = [
    "atomic_write_json",
    "derive_seed",
    "format_complex",
    "host_info",
    "parse_complex",
    "configure_logging",
    "console",
    "err_console",
]
