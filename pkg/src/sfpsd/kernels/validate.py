"""Domain validation of matrix specs - returns structured violations, never raises."""

from dataclasses import asdict, dataclass, field
import logging
import math
from typing import Any, Callable, Iterable, Optional

from sfpsd.errors import SfpsdError
from sfpsd.kernels.families import KernelFamily, family_info
from sfpsd.kernels.spec import FactorSpec, MatrixSpec
from sfpsd.specialfn.hypergeometric import (
    CoefficientRule,
    hypergeometric_coefficients,
    modular_ratios,
    q_hypergeometric_coefficients,
)

logger = logging.getLogger(__name__)

# Coefficient sampling stops once |c_n| R^n falls below this floor or at the cap.
HORIZON_FLOOR = 1e-300
HORIZON_CAP = 400
_SIGN_TOL = 1e-12
_INT_TOL = 1e-14


@dataclass(frozen=True)
class Violation:
    factor: int
    family: str
    condition: str
    detail: str = ""
    point: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, violation: Violation) -> None:
        self.violations.append(violation)

    def to_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.to_dict() for v in self.violations]}


class _FactorChecker:
    """Collects violations of one factor."""

    def __init__(self, report: ValidationReport, index: int, factor: FactorSpec):
        self.report = report
        self.index = index
        self.factor = factor

    def fail(self, condition: str, detail: str = "", point: Optional[int] = None) -> None:
        self.report.add(
            Violation(self.index, self.factor.family.value, condition, detail, point)
        )

    def real_shared(self, key: str) -> Optional[float]:
        value = self.factor.get(key)
        if value is None:
            self.fail(f"{key} is required")
            return None
        try:
            z = complex(value)
        except (TypeError, ValueError):
            self.fail(f"{key} must be a number", repr(value))
            return None
        if z.imag != 0 or not math.isfinite(z.real):
            self.fail(f"{key} must be a finite real number", str(value))
            return None
        return z.real

    def nome(self, key: str = "q") -> Optional[float]:
        q = self.real_shared(key)
        if q is not None and not 0 < q < 1:
            self.fail(f"0 < {key} < 1", f"{key} = {q}")
            return None
        return q

    def each_point(self, condition: str, test: Callable[[tuple], bool]) -> None:
        for j, point in enumerate(self.factor.points):
            if not test(point):
                self.fail(condition, f"point = {[str(x) for x in point]}", j)

    def coefficients_nonnegative(self, name: str, coefficients: Iterable[tuple[int, complex]]):
        for n, c in coefficients:
            size = abs(c)
            if abs(c.imag) > _SIGN_TOL * size or c.real < -_SIGN_TOL * size:
                self.fail(f"{name} coefficient ratios must be >= 0", f"n = {n}: {c}")
                return


def _max_abs_sq(points: Iterable[tuple]) -> float:
    return max((abs(p[0]) ** 2 for p in points), default=0.0)


def _min_abs_sq(points: Iterable[tuple]) -> float:
    return min((abs(p[0]) ** 2 for p in points), default=0.0)


def _horizon(
    coefficients: Iterable[tuple[int, complex]], radius: float, gaussian: Callable[[int], float]
) -> Iterable[tuple[int, complex]]:
    """Yield coefficients while c_n * gaussian(n) * radius^|n| is above the floor."""
    for count, (n, c) in enumerate(coefficients):
        yield n, c
        weight = abs(c) * gaussian(n) * (radius ** abs(n) if radius > 0 else (n == 0))
        if count >= HORIZON_CAP or (count > 2 and weight < HORIZON_FLOOR):
            return


def _nonpositive_integer(a: complex) -> bool:
    k = round(a.real)
    return k <= 0 and abs(a - k) < _INT_TOL


def _check_points_arity(chk: _FactorChecker) -> None:
    arity = family_info(chk.factor.family).point_arity
    for j, point in enumerate(chk.factor.points):
        if len(point) != arity:
            chk.fail(f"each point needs {arity} value(s)", f"got {len(point)}", j)
        elif not all(math.isfinite(x.real) and math.isfinite(x.imag) for x in point):
            chk.fail("point values must be finite", "", j)


def _positive_re(chk: _FactorChecker, name: str, index: int = 0) -> None:
    chk.each_point(f"Re({name}_j) > 0", lambda p: p[index].real > 0)


def _check_theta3(chk: _FactorChecker) -> None:
    chk.nome()


def _check_dn(chk: _FactorChecker) -> None:
    q = chk.nome()
    if q is None:
        return
    chk.each_point(
        "q * exp(4 pi |Im v_j|) < 1",
        lambda p: math.log(q) + 4.0 * math.pi * abs(p[0].imag) < 0,
    )


def _check_positive_s(chk: _FactorChecker) -> None:
    _positive_re(chk, "s")


def _check_gamma(chk: _FactorChecker) -> None:
    _positive_re(chk, "z")


def _check_sin_power(chk: _FactorChecker) -> None:
    lam = chk.real_shared("lambda")
    if lam is not None and not lam > 0:
        chk.fail("lambda > 0", f"lambda = {lam}")
    chk.each_point(
        "phi_j real with 0 < phi_j < pi/2",
        lambda p: p[0].imag == 0 and 0 < p[0].real < 0.5 * math.pi,
    )


def _check_beta(chk: _FactorChecker) -> None:
    _positive_re(chk, "p", 0)
    _positive_re(chk, "q", 1)


def _parameter_lists(chk: _FactorChecker) -> Optional[tuple[tuple, tuple]]:
    try:
        upper = tuple(complex(x) for x in chk.factor.get("upper", ()))
        lower = tuple(complex(x) for x in chk.factor.get("lower", ()))
    except (TypeError, ValueError):
        chk.fail("upper/lower must be lists of numbers")
        return None
    return upper, lower


def _check_hypergeom(chk: _FactorChecker) -> None:
    lists = _parameter_lists(chk)
    if lists is None:
        return
    upper, lower = lists
    r, s = len(upper), len(lower)
    if r > s + 1:
        chk.fail("s + 1 >= r", f"r = {r}, s = {s}")
        return
    radius = _max_abs_sq(chk.factor.points)
    terminates = any(_nonpositive_integer(a) for a in upper)
    if r == s + 1 and not terminates:
        chk.each_point("|z_j| < 1 when s + 1 = r", lambda p: abs(p[0]) < 1)
        if radius >= 1:
            return
    if any(_nonpositive_integer(b) for b in lower) and not terminates:
        chk.fail("lower parameters must not be non-positive integers")
        return
    coefficients = enumerate(hypergeometric_coefficients(upper, lower, HORIZON_CAP))
    chk.coefficients_nonnegative(
        "rFs", _horizon(coefficients, radius, lambda n: 1.0)
    )


def _check_polygamma(chk: _FactorChecker) -> None:
    p = chk.real_shared("p")
    if p is not None and (p != int(p) or p < 1):
        chk.fail("p is an integer >= 1", f"p = {p}")
    chk.each_point("0 < Re(s_j) < 1/2", lambda pt: 0 < pt[0].real < 0.5)


def _check_riemann_xi(chk: _FactorChecker) -> None:
    chk.each_point("|Im z_j| < 1/4", lambda p: abs(p[0].imag) < 0.25)


def _check_hurwitz(chk: _FactorChecker) -> None:
    a = chk.real_shared("a")
    if a is not None and not a > 0:
        chk.fail("a > 0", f"a = {a}")
    _positive_re(chk, "s")


def _check_lerch(chk: _FactorChecker) -> None:
    z = chk.real_shared("z")
    if z is not None and not z < 1:
        chk.fail("z < 1", f"z = {z}")
    a = chk.real_shared("a")
    if a is not None and not a > 0:
        chk.fail("a > 0", f"a = {a}")
    _positive_re(chk, "s")


def _check_aw_qgamma(chk: _FactorChecker) -> None:
    chk.nome()
    chk.each_point(
        "alpha_j1, alpha_j2 real and > 0",
        lambda p: all(x.imag == 0 and x.real > 0 for x in p),
    )


def _check_q_hypergeom(chk: _FactorChecker) -> None:
    from sfpsd.kernels.evaluate import qhyper_radius

    q = chk.nome()
    alpha = chk.real_shared("alpha")
    lists = _parameter_lists(chk)
    if q is None or alpha is None or lists is None:
        return
    if alpha < 0:
        chk.fail("alpha >= 0", f"alpha = {alpha}")
        return
    rho = qhyper_radius(chk.factor)
    if not 0 < rho <= 1:
        chk.fail("0 < radius <= 1", f"radius = {rho}")
        return
    radius = _max_abs_sq(chk.factor.points)
    if alpha == 0:
        # |z_j conj(z_k)| <= max |z_j|^2
        chk.each_point("|z_j|^2 < radius when alpha = 0", lambda p: abs(p[0]) ** 2 < rho)
        if radius >= rho:
            return
    upper, lower = lists
    try:
        coefficients = enumerate(q_hypergeometric_coefficients(upper, lower, q, HORIZON_CAP))
        chk.coefficients_nonnegative(
            "rAs",
            _horizon(coefficients, radius, lambda n: q ** (alpha * n * n)),
        )
    except SfpsdError as e:
        chk.fail("denominator parameters avoid zero factors", e.message)


def _check_modular(kind: str) -> Callable[[_FactorChecker], None]:
    def check(chk: _FactorChecker) -> None:
        q = chk.nome("q")
        p = chk.nome("p")
        lists = _parameter_lists(chk)
        coeff = chk.factor.get("coeff", CoefficientRule())
        if not isinstance(coeff, CoefficientRule):
            chk.fail("coeff must be a nonnegative coefficient rule")
            return
        if q is None or p is None or lists is None:
            return
        if kind == "G":
            chk.each_point("z_j != 0 for the bilateral series", lambda pt: pt[0] != 0)
        upper, lower = lists
        radius = _max_abs_sq(chk.factor.points)
        try:
            ratios = modular_ratios(kind, upper, lower, q, p, 1)
            forward = ((n, c * coeff.value(n, q)) for n, c in ratios)
            chk.coefficients_nonnegative(kind, _horizon(forward, radius, lambda n: 1.0))
            if kind == "G":
                inner = _min_abs_sq(chk.factor.points)
                ratios = modular_ratios(kind, upper, lower, q, p, -1)
                backward = ((n, c * coeff.value(n, q)) for n, c in ratios)
                inverse = 1.0 / inner if inner > 0 else 0.0
                chk.coefficients_nonnegative(kind, _horizon(backward, inverse, lambda n: 1.0))
        except (SfpsdError, OverflowError, ZeroDivisionError) as e:
            chk.fail("coefficient ratios must be finite and nonzero", str(e))

    return check


_CHECKS: dict[KernelFamily, Callable[[_FactorChecker], None]] = {
    KernelFamily.THETA3: _check_theta3,
    KernelFamily.DN: _check_dn,
    KernelFamily.ZETA_TAIL: _check_positive_s,
    KernelFamily.GAMMA: _check_gamma,
    KernelFamily.SIN_POWER: _check_sin_power,
    KernelFamily.BETA: _check_beta,
    KernelFamily.HYPERGEOM: _check_hypergeom,
    KernelFamily.ETA_GAMMA_ZETA: _check_positive_s,
    KernelFamily.ETA_GAMMA1_ZETA: _check_positive_s,
    KernelFamily.POLYGAMMA_ZETA: _check_polygamma,
    KernelFamily.RIEMANN_XI: _check_riemann_xi,
    KernelFamily.HURWITZ_TAIL: _check_hurwitz,
    KernelFamily.HURWITZ_DIFF: _check_hurwitz,
    KernelFamily.LERCH: _check_lerch,
    KernelFamily.AW_QGAMMA: _check_aw_qgamma,
    KernelFamily.Q_HYPERGEOM: _check_q_hypergeom,
    KernelFamily.MODULAR_E: _check_modular("E"),
    KernelFamily.MODULAR_G: _check_modular("G"),
}


def validate_spec(spec: Any) -> ValidationReport:
    """Check every factor against its family's domain conditions.

    Never raises: malformed input turns into violations.

    Examples:
        DN with q = 0.5 and v = 0.2i gives the violation
        "q * exp(4 pi |Im v_j|) < 1" for that point.
    """
    report = ValidationReport()
    if not isinstance(spec, MatrixSpec):
        report.add(Violation(-1, "", "spec must be a MatrixSpec", type(spec).__name__))
        return report
    if not spec.factors:
        report.add(Violation(-1, "", "at least one factor is required"))
        return report
    sizes = {f.n for f in spec.factors}
    if len(sizes) != 1:
        report.add(Violation(-1, "", "all factors must have the same n", str(sorted(sizes))))
    if min(sizes) < 1:
        report.add(Violation(-1, "", "n >= 1"))
    for index, factor in enumerate(spec.factors):
        chk = _FactorChecker(report, index, factor)
        try:
            _check_points_arity(chk)
            if any(v.factor == index for v in report.violations):
                continue
            _CHECKS[factor.family](chk)
        except Exception as e:  # validation must report, not raise
            chk.fail("validation error", f"{type(e).__name__}: {e}")
    if report.violations:
        logger.debug("spec %r: %d violation(s)", spec.label, len(report.violations))
    return report
