"""Display utilities - rich console output and log rendering."""

import logging
from typing import Any, Iterable, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from sfpsd.utils.helpers import format_complex

console = Console()
err_console = Console(stderr=True)

LOG_FORMAT = "%(name)s: %(message)s"


def configure_logging(level: str = "WARNING", debug: bool = False) -> None:
    """Route the sfpsd loggers through a RichHandler on stderr.

    Args:
        level: Level name used when debug is off (SFPSD_LOG_LEVEL)
        debug: Force DEBUG and show rich tracebacks
    """
    root = logging.getLogger("sfpsd")
    for handler in list(root.handlers):
        root.removeHandler(handler)
    handler = RichHandler(
        console=err_console,
        show_path=debug,
        rich_tracebacks=debug,
        markup=False,
    )
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root.addHandler(handler)
    root.setLevel(logging.DEBUG if debug else getattr(logging, level.upper(), logging.WARNING))
    root.propagate = False


def print_eval(name: str, args: Iterable[complex], result: Any) -> None:
    """Print an EvalResult."""
    shown = ", ".join(format_complex(a) for a in args)
    table = Table(title=f"🧮 {name}({shown})", show_header=False, box=None)
    table.add_column("field", style="cyan")
    table.add_column("value")
    table.add_row("value", format_complex(result.value))
    table.add_row("err_estimate", f"{result.err_estimate:.3e}")
    table.add_row("terms_used", str(result.terms_used))
    console.print(table)


def print_verdict(label: str, verdict: Any, minors: Optional[list[float]] = None) -> None:
    """Print a PsdVerdict as a panel."""
    status = "[green]✓ PSD[/green]" if verdict.is_psd else "[red]✗ not PSD[/red]"
    lines = [
        f"{status}",
        f"λ_min = {verdict.min_eig:.6e}   λ_max = {verdict.max_eig:.6e}",
        f"tolerance = {verdict.tolerance_used:.3e}   cholesky rank = {verdict.cholesky_rank}",
    ]
    if minors:
        negative = sum(1 for m in minors if m < 0)
        lines.append(f"leading minors: {len(minors)} ({negative} negative)")
    console.print(Panel("\n".join(lines), title=label or "matrix", border_style="cyan"))


def print_fuzz_summary(rows: list[dict]) -> None:
    """One row per family: trials, failures, worst min eigenvalue, oracle deviation."""
    table = Table(title="🎲 fuzz campaign")
    table.add_column("family", style="cyan")
    table.add_column("trials", justify="right")
    table.add_column("failed", justify="right")
    table.add_column("worst λ_min/λ_max", justify="right")
    table.add_column("oracle dev", justify="right")
    for row in rows:
        failed = row["failed"]
        table.add_row(
            row["family"],
            str(row["trials"]),
            f"[red]{failed}[/red]" if failed else "0",
            f"{row['worst_ratio']:.2e}",
            "-" if row.get("oracle_deviation") is None else f"{row['oracle_deviation']:.2e}",
        )
    console.print(table)


def print_identity(name: str, lhs: float, rhs: float, deviation: float, ok: bool) -> None:
    mark = "[green]✓[/green]" if ok else "[red]✗[/red]"
    console.print(
        f"{mark} [cyan]{name}[/cyan]  lhs={lhs:.15g}  rhs={rhs:.15g}  dev={deviation:.2e}"
    )


def print_error(error: Exception, debug: bool = False) -> None:
    """Print an error the way every command does; traceback only in debug mode."""
    console.print(f"[red]❌ Error:[/red] {error}")
    violations = getattr(error, "violations", None)
    for v in violations or []:
        text = v.to_dict() if hasattr(v, "to_dict") else v
        console.print(f"   [yellow]•[/yellow] {text}")
    if debug:
        err_console.print_exception()
