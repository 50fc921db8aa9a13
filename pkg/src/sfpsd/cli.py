"""sfpsd CLI - Main entry point."""

from pathlib import Path
from typing import Callable, Optional

import typer

from sfpsd import __version__
from sfpsd.config import get_settings
from sfpsd.errors import EXIT_NUMERIC, EXIT_VERIFICATION_FAILED, SfpsdError, SpecError
from sfpsd.kernels import FAMILY_INFO, KernelFamily, load_spec, random_spec
from sfpsd.utils import atomic_write_json, configure_logging, console, parse_complex
from sfpsd.utils.display import (
    print_error,
    print_eval,
    print_fuzz_summary,
    print_identity,
    print_verdict,
)

app = typer.Typer(
    name="sfpsd",
    help="sfpsd - positive semidefinite matrices of special functions",
    add_completion=False,
    no_args_is_help=True,
)


@app.callback()
def main(
    ctx: typer.Context,
    debug: bool = typer.Option(False, "--debug", help="Enable debug logging and tracebacks"),
):
    """Evaluate special functions, build kernel matrices and verify them.

    Usage:
        sfpsd eval gamma 5
        sfpsd check --spec gamma.json --report out.json
        sfpsd fuzz --family all --n 4 --trials 25 --seed 7
        sfpsd oracle MP --lambda 1 --phi 1.5707963
    """
    ctx.obj = {"debug": debug}
    configure_logging(get_settings().log_level, debug)
    if debug:
        console.print("[dim]🔧 Debug mode enabled[/dim]")


def _debug(ctx: typer.Context) -> bool:
    return bool((ctx.obj or {}).get("debug", False))


def _run(ctx: typer.Context, action: Callable[[], int]) -> None:
    """Run a command body and map its outcome to the exit-code contract."""
    debug = _debug(ctx)
    try:
        code = action()
    except SfpsdError as e:
        print_error(e, debug)
        raise typer.Exit(e.exit_code)
    except Exception as e:
        print_error(e, debug)
        raise typer.Exit(EXIT_NUMERIC)
    if code:
        raise typer.Exit(code)


def _pipeline(ctx, tol=None, eps=None, max_terms=None):
    # Import here to keep `sfpsd version` and `--help` fast
    from sfpsd.main import Pipeline

    return Pipeline(tol_rel=tol, rel_eps=eps, max_terms=max_terms, debug=_debug(ctx))


def _families(name: str) -> list[KernelFamily]:
    if name.strip().lower() == "all":
        return list(KernelFamily)
    try:
        return [KernelFamily.parse(part) for part in name.split(",")]
    except ValueError as e:
        raise SpecError(str(e), family=name) from e


def _write_report(report, path: Optional[Path]) -> None:
    if path is not None:
        written = report.write(path)
        console.print(f"[dim]📝 Report written to {written}[/dim]")


@app.command(
    "eval", context_settings={"ignore_unknown_options": True, "allow_extra_args": False}
)
def eval_function(
    ctx: typer.Context,
    function: str = typer.Argument(..., help="Evaluator name, e.g. gamma, zeta, theta3"),
    args: list[str] = typer.Argument(None, help="Arguments in the form a+bi"),
    eps: Optional[float] = typer.Option(None, "--eps", help="Series relative tolerance"),
    max_terms: Optional[int] = typer.Option(None, "--max-terms", help="Series term cap"),
):
    """Evaluate one special function."""

    def action() -> int:
        values = [parse_complex(a) for a in args or []]
        result = _pipeline(ctx, eps=eps, max_terms=max_terms).run_eval(function, values)
        print_eval(function, values, result)
        return 0

    _run(ctx, action)


@app.command()
def functions():
    """List the evaluators known to `sfpsd eval`."""
    from sfpsd.specialfn import FUNCTIONS

    for entry in FUNCTIONS.values():
        console.print(
            f"[cyan]{entry.name}[/cyan] {entry.signature}  [dim]{entry.description}[/dim]"
        )


@app.command()
def families():
    """List the kernel families with their labels and oracle routes."""
    for family, info in FAMILY_INFO.items():
        oracle = info.oracle or "-"
        console.print(
            f"[cyan]{family.value:<16}[/cyan] {info.label:<8} {oracle:<10} {info.formula}"
        )


@app.command()
def build(
    ctx: typer.Context,
    spec: Path = typer.Option(..., "--spec", help="MatrixSpec JSON file"),
    report: Optional[Path] = typer.Option(None, "--report", help="Write the matrix as JSON"),
    eps: Optional[float] = typer.Option(None, "--eps"),
    max_terms: Optional[int] = typer.Option(None, "--max-terms"),
):
    """Assemble the Hadamard-product matrix of a spec."""

    def action() -> int:
        matrix_spec = load_spec(spec)
        matrix = _pipeline(ctx, eps=eps, max_terms=max_terms).run_build(matrix_spec)
        console.print(
            f"[green]✓[/green] built [cyan]{matrix_spec.label or spec.name}[/cyan] "
            f"(n={matrix.n}, {len(matrix_spec.factors)} factor(s))"
        )
        if report is not None:
            document = {"label": matrix_spec.label, **matrix.to_dict()}
            console.print(f"[dim]📝 Matrix written to {atomic_write_json(report, document)}[/dim]")
        return 0

    _run(ctx, action)


@app.command()
def check(
    ctx: typer.Context,
    spec: Path = typer.Option(..., "--spec", help="MatrixSpec or matrix-entries JSON file"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Relative PSD tolerance"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON report path"),
    eps: Optional[float] = typer.Option(None, "--eps"),
    max_terms: Optional[int] = typer.Option(None, "--max-terms"),
):
    """Decide whether a spec's matrix is positive semidefinite (exit 0 iff it is)."""
    from sfpsd.main import load_check_input

    def action() -> int:
        pipeline = _pipeline(ctx, tol=tol, eps=eps, max_terms=max_terms)
        result = pipeline.run_check(load_check_input(spec), path=str(spec))
        instance = result.instances[0]
        print_verdict(instance.label, instance.verdict, instance.minors)
        _write_report(result, report)
        return 0 if result.ok else EXIT_VERIFICATION_FAILED

    _run(ctx, action)


@app.command()
def fuzz(
    ctx: typer.Context,
    family: str = typer.Option("all", "--family", help="Family tag, label (m4a), list or 'all'"),
    n: int = typer.Option(4, "--n", help="Matrix dimension"),
    trials: int = typer.Option(10, "--trials", help="Random specs per family"),
    seed: int = typer.Option(0, "--seed", min=0, help="Campaign seed"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Relative PSD tolerance"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON report path"),
    oracle: bool = typer.Option(True, "--oracle/--no-oracle", help="Compare with Gram oracles"),
    eps: Optional[float] = typer.Option(None, "--eps"),
    max_terms: Optional[int] = typer.Option(None, "--max-terms"),
):
    """Random specs per family: build, verify PSD and compare with the oracle."""

    def action() -> int:
        pipeline = _pipeline(ctx, tol=tol, eps=eps, max_terms=max_terms)
        result = pipeline.run_fuzz(_families(family), n, trials, seed, with_oracle=oracle)
        print_fuzz_summary(result.summary)
        _write_report(result, report)
        if not result.ok:
            console.print(f"[red]✗ {len(result.failures)} trial(s) failed[/red]")
            return EXIT_VERIFICATION_FAILED
        console.print(f"[green]✓ all {len(result.instances)} trial(s) verified[/green]")
        return 0

    _run(ctx, action)


@app.command()
def oracle(
    ctx: typer.Context,
    target: Optional[str] = typer.Argument(None, help="MP, AW or a family with an oracle"),
    family: Optional[str] = typer.Option(None, "--family", help="Family to rebuild"),
    lam: float = typer.Option(1.0, "--lambda", help="MP: lambda > 0"),
    phi: float = typer.Option(1.5707963267948966, "--phi", help="MP: 0 < phi < pi"),
    q: float = typer.Option(0.3, "--q", help="AW: 0 < q < 1"),
    alphas: str = typer.Option("0.5,0.7,1.1,1.3", "--alphas", help="AW: four alphas"),
    spec: Optional[Path] = typer.Option(None, "--spec", help="MatrixSpec for a family oracle"),
    n: int = typer.Option(4, "--n", help="Dimension of a generated spec"),
    seed: int = typer.Option(0, "--seed", min=0, help="Seed of a generated spec"),
    tol: Optional[float] = typer.Option(None, "--tol", help="Override the identity tolerance"),
    target_eps: float = typer.Option(1e-12, "--target-eps", help="Quadrature agreement target"),
    report: Optional[Path] = typer.Option(None, "--report", help="JSON report path"),
):
    """Check an integral identity, or a kernel against its measure-side Gram matrix."""

    def action() -> int:
        pipeline = _pipeline(ctx)
        name = (family or target or "").strip()
        if not name and spec is None:
            raise SpecError("oracle needs MP, AW, --family or --spec")
        if name.upper() in ("MP", "AW"):
            if name.upper() == "MP":
                params = {"lambda": lam, "phi": phi}
            else:
                try:
                    params = {"q": q, "alphas": [float(a) for a in alphas.split(",")]}
                except ValueError as e:
                    raise SpecError(f"--alphas must be four numbers: {alphas!r}") from e
            result = pipeline.run_oracle_identity(name, params, tol=tol, target_eps=target_eps)
            for check_result, tolerance in result.identities:
                print_identity(
                    check_result.name,
                    check_result.lhs,
                    check_result.rhs,
                    check_result.deviation,
                    check_result.ok(tolerance),
                )
        else:
            if spec is not None:
                matrix_spec, used_seed = load_spec(spec), None
            else:
                matrix_spec, used_seed = random_spec(_families(name)[0], n, seed), seed
            result = pipeline.run_oracle_spec(matrix_spec, tol=tol, seed=used_seed)
            instance = result.instances[0]
            compare = instance.oracle
            mark = "[green]✓[/green]" if compare.ok else "[red]✗[/red]"
            console.print(
                f"{mark} [cyan]{instance.label}[/cyan]  max deviation {compare.max_deviation:.2e} "
                f"at {compare.worst_index} (tol {compare.rel_tol:.0e})"
            )
        _write_report(result, report)
        return 0 if result.ok else EXIT_VERIFICATION_FAILED

    _run(ctx, action)


@app.command()
def version():
    """Show version information."""
    console.print(f"[cyan bold]sfpsd v{__version__}[/cyan bold]")
    console.print("Special-function kernels, PSD verdicts and Gram oracles")


if __name__ == "__main__":
    app()
