"""sfpsd Pipeline - core orchestration of evaluation, assembly, verification and reports."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
import logging
from pathlib import Path
import time
from typing import Any, Optional, Sequence, Union

from sfpsd import __version__
from sfpsd.config import Settings, get_settings
from sfpsd.errors import SfpsdError, SpecError
from sfpsd.kernels import (
    KernelFamily,
    MatrixSpec,
    build_matrix,
    random_spec,
    read_document,
    spec_from_dict,
    spec_to_dict,
)
from sfpsd.kernels.spec_io import validate_document
from sfpsd.oracle import (
    AW_TOL,
    MP_TOL,
    CompareReport,
    IdentityCheck,
    entrywise_compare,
    oracle_matrix,
    oracle_tolerance,
    verify_aw_integral,
    verify_mp_identity,
)
from sfpsd.psdlinalg import HermitianMatrix, PsdVerdict, leading_minors, psd_verdict
from sfpsd.specialfn import EvalResult, FunctionRouter, SeriesControl
from sfpsd.utils import atomic_write_json, derive_seed, host_info

logger = logging.getLogger(__name__)

REPORT_SCHEMA = "report.schema.json"
REPORT_SCHEMA_VERSION = 1

CheckInput = Union[MatrixSpec, HermitianMatrix]


@dataclass
class InstanceResult:
    """Outcome of verifying one matrix (a spec, a fuzz trial or a raw entries file)."""

    label: str
    families: list[str]
    n: int
    verdict: Optional[PsdVerdict] = None
    minors: list[float] = field(default_factory=list)
    oracle: Optional[CompareReport] = None
    error: Optional[SfpsdError] = None
    spec: Optional[MatrixSpec] = None
    trial: Optional[int] = None
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        if self.error is not None or self.verdict is None:
            return False
        return self.verdict.is_psd and (self.oracle is None or self.oracle.ok)

    @property
    def eigen_ratio(self) -> float:
        """lambda_min / lambda_max (just lambda_min when lambda_max <= 0)."""
        if self.verdict is None:
            return float("-inf")
        if self.verdict.max_eig > 0:
            return self.verdict.min_eig / self.verdict.max_eig
        return self.verdict.min_eig

    def to_dict(self, embed_spec: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "label": self.label,
            "families": self.families,
            "n": self.n,
            "ok": self.ok,
        }
        if self.trial is not None:
            data["trial"] = self.trial
            data["seed"] = self.seed
        if self.verdict is not None:
            data["verdict"] = self.verdict.to_dict()
            data["leading_minors"] = self.minors
            data["oracle"] = None if self.oracle is None else self.oracle.to_dict()
        if self.error is not None:
            data["error"] = self.error.to_dict()
        if embed_spec and self.spec is not None:
            data["spec"] = spec_to_dict(self.spec)
        return data


@dataclass
class Report:
    """Everything a check, fuzz or oracle run writes to --report."""

    command: str
    config: dict[str, Any]
    seed: Optional[int] = None
    instances: list[InstanceResult] = field(default_factory=list)
    identities: list[tuple[IdentityCheck, float]] = field(default_factory=list)
    summary: list[dict[str, Any]] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.instances) and all(
            check.ok(tol) for check, tol in self.identities
        )

    @property
    def failures(self) -> list[InstanceResult]:
        return [i for i in self.instances if not i.ok]

    def to_dict(self) -> dict[str, Any]:
        identities = []
        for check, tol in self.identities:
            entry = check.to_dict()
            entry["tolerance"] = tol
            entry["ok"] = check.ok(tol)
            identities.append(entry)
        document = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "config": self.config,
            "seed": self.seed,
            "host": host_info(),
            "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
            "ok": self.ok,
            "wall_time_s": round(self.wall_time_s, 6),
            # failing specs are embedded so any failure replays from the report alone
            "instances": [i.to_dict(embed_spec=not i.ok) for i in self.instances],
            "identities": identities,
        }
        if self.summary:
            document["summary"] = self.summary
        return document

    def write(self, path: Union[str, Path]) -> Path:
        """Schema-check the report and write it atomically."""
        document = self.to_dict()
        validate_document(document, REPORT_SCHEMA)
        written = atomic_write_json(path, document)
        logger.info("report written to %s", written)
        return written


def load_check_input(path: Union[str, Path]) -> CheckInput:
    """A MatrixSpec file, or a matrix-entries file {"real": [[...]], "imag": [[...]]}.

    Raises:
        SpecError: unreadable, malformed or schema-violating file
        NonHermitianError: the entries are not Hermitian
    """
    document = read_document(path)
    if isinstance(document, dict) and "factors" in document:
        return spec_from_dict(document)
    if isinstance(document, dict) and "real" in document:
        try:
            return HermitianMatrix.from_dict(document)
        except (TypeError, ValueError) as e:
            if isinstance(e, SfpsdError):
                raise
            raise SpecError(f"matrix file {path} has malformed entries: {e}") from e
    raise SpecError(f"{path} is neither a matrix spec nor a matrix-entries file")


class Pipeline:
    """Main class for sfpsd - runs every command against one set of settings."""

    def __init__(
        self,
        settings: Optional[Settings] = None,
        tol_rel: Optional[float] = None,
        rel_eps: Optional[float] = None,
        max_terms: Optional[int] = None,
        debug: bool = False,
    ):
        """Initialize the pipeline.

        Args:
            settings: Environment defaults (get_settings() when omitted)
            tol_rel: PSD tolerance override (--tol)
            rel_eps: Series tolerance override (--eps)
            max_terms: Series term cap override (--max-terms)
            debug: Log routing decisions
        """
        self.settings = settings or get_settings()
        self.tol_rel = tol_rel if tol_rel is not None else self.settings.tol_rel
        self.control = SeriesControl(
            rel_eps=rel_eps if rel_eps is not None else self.settings.rel_eps,
            max_terms=max_terms if max_terms is not None else self.settings.max_terms,
        )
        self.debug = debug
        self.router = FunctionRouter(self.control, debug=debug)
        if debug:
            logger.debug(
                "pipeline: tol_rel=%g rel_eps=%g max_terms=%d threads=%d",
                self.tol_rel, self.control.rel_eps, self.control.max_terms,
                self.settings.max_threads,
            )

    def config(self, **extra: Any) -> dict[str, Any]:
        """Config echo written into every report."""
        echo = {
            "tol_rel": self.tol_rel,
            "rel_eps": self.control.rel_eps,
            "max_terms": self.control.max_terms,
            "max_threads": self.settings.max_threads,
        }
        echo.update({k: v for k, v in extra.items() if v is not None})
        return echo

    # ─── eval / build ────────────────────────────────────────────────────

    def run_eval(self, name: str, args: Sequence[complex]) -> EvalResult:
        return self.router.evaluate(name, args)

    def run_build(self, spec: MatrixSpec) -> HermitianMatrix:
        return build_matrix(spec, self.control)

    # ─── verification ────────────────────────────────────────────────────

    def verify_matrix(self, matrix: HermitianMatrix, label: str = "", seed: int = 0):
        verdict = psd_verdict(matrix, self.tol_rel, seed=seed)
        return InstanceResult(
            label=label or matrix.meta.get("label", "") or "matrix",
            families=[],
            n=matrix.n,
            verdict=verdict,
            minors=leading_minors(matrix),
        )

    def verify_spec(
        self, spec: MatrixSpec, with_oracle: bool = False, seed: int = 0
    ) -> InstanceResult:
        """Build, decide PSD, take leading minors and optionally compare with the oracle.

        Raises:
            SpecError: the spec fails validation
            SfpsdError: numeric failures while building or in the oracle
        """
        matrix = self.run_build(spec)
        result = self.verify_matrix(matrix, spec.label, seed)
        result.families = [f.value for f in spec.families]
        result.spec = spec
        tol = oracle_tolerance(spec)
        if with_oracle and tol is not None:
            result.oracle = entrywise_compare(matrix, oracle_matrix(spec), tol)
        return result

    def run_check(self, source: CheckInput, path: Optional[str] = None) -> Report:
        """Verify one spec or matrix."""
        started = time.perf_counter()
        report = Report("check", self.config(spec=path))
        if isinstance(source, HermitianMatrix):
            report.instances.append(self.verify_matrix(source, label=path or ""))
        else:
            report.instances.append(self.verify_spec(source))
        report.wall_time_s = time.perf_counter() - started
        return report

    # ─── fuzz ────────────────────────────────────────────────────────────

    def _fuzz_trial(
        self, family: KernelFamily, n: int, trial: int, seed: int, with_oracle: bool
    ) -> InstanceResult:
        trial_seed = derive_seed(seed, family.value, trial)
        spec = None
        try:
            spec = random_spec(family, n, trial_seed)
            result = self.verify_spec(spec, with_oracle=with_oracle, seed=trial_seed)
        except SfpsdError as e:
            logger.warning("%s trial %d failed: %s", family.value, trial, e)
            label = spec.label if spec is not None else f"{family.value}:n={n}:seed={trial_seed}"
            result = InstanceResult(label, [family.value], n, error=e, spec=spec)
        result.trial = trial
        result.seed = trial_seed
        if not result.ok:
            logger.info("%s trial %d not verified (seed %d)", family.value, trial, trial_seed)
        return result

    def run_fuzz(
        self,
        families: Sequence[KernelFamily],
        n: int,
        trials: int,
        seed: int,
        with_oracle: bool = True,
    ) -> Report:
        """Random specs per family on a thread pool; results stay in submission order.

        Raises:
            SpecError: trials < 1 or n < 1
        """
        if trials < 1:
            raise SpecError("fuzz needs trials >= 1", trials=trials)
        if n < 1:
            raise SpecError("fuzz needs n >= 1", n=n)
        started = time.perf_counter()
        report = Report(
            "fuzz",
            self.config(families=[f.value for f in families], n=n, trials=trials),
            seed=seed,
        )
        jobs = [(family, trial) for family in families for trial in range(trials)]
        with ThreadPoolExecutor(max_workers=self.settings.max_threads) as pool:
            futures = [
                pool.submit(self._fuzz_trial, family, n, trial, seed, with_oracle)
                for family, trial in jobs
            ]
            report.instances = [f.result() for f in futures]
        for family in families:
            rows = [i for i in report.instances if i.families == [family.value]]
            deviations = [i.oracle.max_deviation for i in rows if i.oracle is not None]
            report.summary.append(
                {
                    "family": family.value,
                    "trials": len(rows),
                    "failed": sum(1 for i in rows if not i.ok),
                    "worst_ratio": min(
                        (i.eigen_ratio for i in rows if i.verdict is not None), default=0.0
                    ),
                    "oracle_deviation": max(deviations) if deviations else None,
                }
            )
        report.wall_time_s = time.perf_counter() - started
        logger.debug("fuzz: %d trial(s) in %.2fs", len(jobs), report.wall_time_s)
        return report

    # ─── oracle ──────────────────────────────────────────────────────────

    def run_oracle_identity(
        self,
        identity: str,
        params: dict[str, Any],
        tol: Optional[float] = None,
        target_eps: float = 1e-12,
        max_levels: int = 10,
    ) -> Report:
        """Check the Meixner-Pollaczek (MP) or Askey-Wilson (AW) identity.

        Raises:
            SpecError: unknown identity name
            DomainError: parameters outside the identity's domain
            QuadratureNoConvergence: the quadrature never settled
        """
        started = time.perf_counter()
        name = identity.strip().upper()
        if name == "MP":
            check = verify_mp_identity(params["lambda"], params["phi"], target_eps, max_levels)
            default_tol = MP_TOL
        elif name == "AW":
            check = verify_aw_integral(params["q"], params["alphas"], target_eps, max_levels)
            default_tol = AW_TOL
        else:
            raise SpecError(f"unknown identity {identity!r} (expected MP or AW)")
        tol = tol if tol is not None else default_tol
        report = Report("oracle", self.config(identity=name, tolerance=tol, **params))
        report.identities.append((check, tol))
        report.wall_time_s = time.perf_counter() - started
        return report

    def run_oracle_spec(
        self, spec: MatrixSpec, tol: Optional[float] = None, seed: Optional[int] = None
    ) -> Report:
        """Compare a spec's kernel matrix with its measure-side reconstruction.

        Raises:
            SpecError: some factor has no oracle, or the spec fails validation
        """
        started = time.perf_counter()
        family_tol = oracle_tolerance(spec)
        if family_tol is None:
            missing = [f.value for f in spec.families]
            raise SpecError(f"no oracle for {', '.join(missing)}", families=missing)
        tol = tol if tol is not None else family_tol
        matrix = self.run_build(spec)
        result = self.verify_matrix(matrix, spec.label)
        result.families = [f.value for f in spec.families]
        result.spec = spec
        result.oracle = entrywise_compare(matrix, oracle_matrix(spec), tol)
        report = Report("oracle", self.config(spec=spec.label, tolerance=tol), seed=seed)
        report.instances.append(result)
        report.wall_time_s = time.perf_counter() - started
        return report
