"""Hypergeometric-type series: rFs, the deformed q-series rAs^(alpha), rphi_s and modular E/G."""

from dataclasses import dataclass, field
import logging
import math
from typing import Iterator, Literal, Mapping, Optional, Sequence

from sfpsd.errors import DomainError, NonConvergenceError
from sfpsd.specialfn.qseries import elliptic_theta
from sfpsd.specialfn.series import (
    DEFAULT_CONTROL,
    EvalResult,
    Number,
    SeriesControl,
    as_complex,
    as_real,
)

logger = logging.getLogger(__name__)

ModularKind = Literal["E", "G"]
_INT_TOL = 1e-14


def _nonpositive_integer(a: complex) -> Optional[int]:
    k = round(a.real)
    if k <= 0 and abs(a - k) < _INT_TOL:
        return -k
    return None


# ─── generalized hypergeometric rFs ──────────────────────────────────────


def hypergeometric_coefficients(
    upper: Sequence[Number], lower: Sequence[Number], count: int
) -> list[complex]:
    """(a_1..a_r)_n / (1, b_1..b_s)_n for n = 0..count-1 (stops early at termination)."""
    ups = [as_complex(a) for a in upper]
    lows = [as_complex(b) for b in lower]
    coef = complex(1.0)
    out = [coef]
    for n in range(count - 1):
        num = complex(1.0)
        for a in ups:
            num *= a + n
        den = complex(n + 1)
        for b in lows:
            den *= b + n
        if den == 0:
            break
        coef *= num / den
        out.append(coef)
        if coef == 0:
            break
    return out


def hypergeometric_f(
    upper: Sequence[Number],
    lower: Sequence[Number],
    z: Number,
    control: SeriesControl = DEFAULT_CONTROL,
) -> EvalResult:
    """Generalized hypergeometric series rFs(a; b | z) = sum (a)_n / (1, b)_n z^n.

    Raises:
        DomainError: r > s+1, |z| >= 1 with r = s+1, or a lower parameter hits a
            non-positive integer before the series terminates
        NonConvergenceError: max_terms reached

    Examples:
        hypergeometric_f([1, 1], [2], 0.5).value  # 1.3862943611 = 2 ln 2
    """
    ups = [as_complex(a) for a in upper]
    lows = [as_complex(b) for b in lower]
    z = as_complex(z)
    r, s = len(ups), len(lows)
    if r > s + 1:
        raise DomainError("rFs needs s + 1 >= r", r=r, s=s)

    stops = [k for k in map(_nonpositive_integer, ups) if k is not None]
    last = min(stops) if stops else None
    for b in lows:
        k = _nonpositive_integer(b)
        if k is not None and (last is None or k < last):
            raise DomainError("lower parameter is a non-positive integer", b=str(b))
    if r == s + 1 and abs(z) >= 1 and last is None:
        raise DomainError("rFs with r = s + 1 needs |z| < 1", z=str(z))
    if z == 0:
        return EvalResult(1.0, 0.0, 1)

    term = complex(1.0)
    total = complex(1.0)
    n = 0
    while True:
        if last is not None and n >= last:
            return EvalResult(total, 1e-16 * (n + 1) * abs(total), n + 1)
        if n >= control.max_terms:
            raise NonConvergenceError("rFs hit max_terms", z=str(z), terms=n)
        ratio = z / (n + 1)
        for a in ups:
            ratio *= a + n
        for b in lows:
            ratio /= b + n
        term *= ratio
        total += term
        n += 1
        rho = abs(ratio) if r < s + 1 else max(abs(ratio), abs(z))
        if rho < 1:
            tail = abs(term) * rho / (1.0 - rho)
            if control.negligible(tail, abs(total)):
                return EvalResult(total, tail + 1e-16 * n * abs(total), n + 1)


# ─── deformed basic hypergeometric rAs^(alpha) and rphi_s ─────────────────


def _q_ratio(ups: Sequence[complex], lows: Sequence[complex], qn: float) -> complex:
    num = complex(1.0)
    for a in ups:
        num *= 1.0 - a * qn
    den = complex(1.0)
    for b in lows:
        den *= 1.0 - b * qn
    if abs(den) < 1e-300:
        raise DomainError("q-shifted factorial in the denominator vanishes")
    return num / den


def q_hypergeometric_coefficients(
    upper: Sequence[Number], lower: Sequence[Number], q: Number, count: int
) -> list[complex]:
    """(a_1..a_r; q)_n / (b_1..b_s; q)_n for n = 0..count-1."""
    ups = [as_complex(a) for a in upper]
    lows = [as_complex(b) for b in lower]
    q = as_real(q, "q")
    coef = complex(1.0)
    out = [coef]
    for n in range(count - 1):
        coef *= _q_ratio(ups, lows, q**n)
        out.append(coef)
    return out


def deformed_q_hypergeometric(
    upper: Sequence[Number],
    lower: Sequence[Number],
    q: Number,
    alpha: Number,
    z: Number,
    control: SeriesControl = DEFAULT_CONTROL,
    radius: float = 0.5,
) -> EvalResult:
    """rAs^(alpha)(a; b; q; z) = sum (a; q)_n / (b; q)_n q^(alpha n^2) z^n.

    Args:
        upper: Numerator parameters a_1..a_r
        lower: Denominator parameters b_1..b_s
        q: Base in (0, 1)
        alpha: Gaussian exponent >= 0; alpha = 0 restricts |z| < radius
        z: Complex argument
        radius: Disk radius used when alpha = 0 (at most 1)
    """
    ups = [as_complex(a) for a in upper]
    lows = [as_complex(b) for b in lower]
    q = as_real(q, "q")
    alpha = as_real(alpha, "alpha")
    z = as_complex(z)
    if not 0 < q < 1:
        raise DomainError("deformed q-series needs 0 < q < 1", q=q)
    if alpha < 0:
        raise DomainError("deformed q-series needs alpha >= 0", alpha=alpha)
    if not 0 < radius <= 1:
        raise DomainError("radius must lie in (0, 1]", radius=radius)
    if alpha == 0 and abs(z) >= radius:
        raise DomainError(
            "alpha = 0 needs |z| inside the convergence disk", z=str(z), radius=radius
        )
    if z == 0:
        return EvalResult(1.0, 0.0, 1)

    term = complex(1.0)
    total = complex(1.0)
    n = 0
    while True:
        if n >= control.max_terms:
            raise NonConvergenceError("deformed q-series hit max_terms", z=str(z), terms=n)
        # Gaussian factor update q^(alpha (n+1)^2) / q^(alpha n^2)
        ratio = _q_ratio(ups, lows, q**n) * q ** (alpha * (2 * n + 1)) * z
        term *= ratio
        total += term
        n += 1
        rho = abs(ratio) if alpha > 0 else max(abs(ratio), abs(z))
        if alpha == 0 and n > 50 and abs(ratio) >= 1:
            raise NonConvergenceError("ratio test fails for the alpha = 0 series", z=str(z))
        if rho < 1:
            tail = abs(term) * rho / (1.0 - rho)
            if control.negligible(tail, abs(total)):
                return EvalResult(total, tail + 1e-16 * n * abs(total), n + 1)


def basic_hypergeometric_phi(
    upper: Sequence[Number],
    lower: Sequence[Number],
    q: Number,
    z: Number,
    control: SeriesControl = DEFAULT_CONTROL,
) -> EvalResult:
    """rphi_s(a; b | q, z) through rAs with alpha = (s+1-r)/2, base q prepended to the
    lower list and argument (-1/sqrt(q))^(s+1-r) z."""
    q = as_real(q, "q")
    if not 0 < q < 1:
        raise DomainError("rphi_s needs 0 < q < 1", q=q)
    d = len(lower) + 1 - len(upper)
    if d < 0:
        raise DomainError("rphi_s is only supported for s + 1 >= r", r=len(upper), s=len(lower))
    scaled = (-1.0 / math.sqrt(q)) ** d * as_complex(z)
    return deformed_q_hypergeometric(
        upper, [q, *lower], q, d / 2.0, scaled, control, radius=1.0
    )


# ─── modular series rEs / rGs ─────────────────────────────────────────────


@dataclass(frozen=True)
class CoefficientRule:
    """Coefficient sequence A_n (or B_n) of a modular series.

    The default "gaussian" rule is q^(n^2); a "table" rule lists nonnegative
    values by index, missing indices read as zero.
    """

    kind: Literal["gaussian", "table"] = "gaussian"
    table: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("gaussian", "table"):
            raise DomainError(f"unknown coefficient rule {self.kind!r}")
        clean = {int(k): float(v) for k, v in dict(self.table).items()}
        if any(v < 0 or not math.isfinite(v) for v in clean.values()):
            raise DomainError("coefficient table entries must be finite and nonnegative")
        object.__setattr__(self, "table", clean)

    def value(self, n: int, q: float) -> float:
        if self.kind == "gaussian":
            return q ** (n * n)
        return self.table.get(n, 0.0)

    def horizon(self) -> Optional[tuple[int, int]]:
        """Index range carrying nonzero table entries (None for gaussian)."""
        if self.kind == "gaussian":
            return None
        keys = [k for k, v in self.table.items() if v != 0]
        if not keys:
            return (0, 0)
        return (min(keys), max(keys))

    def to_dict(self) -> dict:
        if self.kind == "gaussian":
            return {"kind": "gaussian"}
        return {"kind": "table", "table": {str(k): v for k, v in sorted(self.table.items())}}


DEFAULT_RULE = CoefficientRule()


def _theta_ratio(
    ups: Sequence[complex], lows: Sequence[complex], x_scale: float, p: float,
    control: SeriesControl,
) -> complex:
    num = complex(1.0)
    for a in ups:
        num *= elliptic_theta(a * x_scale, p, control).value
    den = complex(1.0)
    for b in lows:
        den *= elliptic_theta(b * x_scale, p, control).value
    if abs(den) < 1e-300:
        raise DomainError("elliptic shifted factorial in the denominator vanishes")
    return num / den


def modular_ratios(
    kind: ModularKind,
    upper: Sequence[Number],
    lower: Sequence[Number],
    q: float,
    p: float,
    direction: int = 1,
    control: SeriesControl = DEFAULT_CONTROL,
) -> Iterator[tuple[int, complex]]:
    """Yield (n, ratio_n) with ratio_n = (a; q, p)_n / (lower; q, p)_n.

    For kind "E" the base q is prepended to the lower list. direction = -1 walks
    n = -1, -2, ... using the reciprocal branch of the elliptic factorial.
    """
    ups = [as_complex(a) for a in upper]
    lows = [as_complex(b) for b in lower]
    if kind == "E":
        lows = [complex(q), *lows]
    ratio = complex(1.0)
    n = 0
    if direction > 0:
        yield 0, ratio
        while True:
            ratio *= _theta_ratio(ups, lows, q**n, p, control)
            n += 1
            yield n, ratio
    else:
        while True:
            n -= 1
            # (a;q,p)_{n} = (a;q,p)_{n+1} / theta(a q^n; p) for n < 0
            ratio /= _theta_ratio(ups, lows, q**n, p, control)
            yield n, ratio


def _check_modular(kind: str, q: float, p: float) -> None:
    if kind not in ("E", "G"):
        raise DomainError(f"modular series kind must be 'E' or 'G', got {kind!r}")
    if not 0 < q < 1 or not 0 < p < 1:
        raise DomainError("modular series need q = e^(-2 pi sigma), p = e^(-2 pi tau) in (0, 1)")


def _one_sided_sum(
    terms: Iterator[tuple[int, complex]],
    coeff: CoefficientRule,
    q: float,
    z: complex,
    control: SeriesControl,
    stop_index: Optional[int],
) -> tuple[complex, float, int]:
    total = complex(0.0)
    quiet = 0
    count = 0
    for n, ratio in terms:
        if count >= control.max_terms:
            raise NonConvergenceError("modular series hit max_terms", z=str(z))
        a_n = coeff.value(n, q)
        term = ratio * a_n * z**n if a_n != 0 else 0j
        total += term
        count += 1
        if stop_index is not None:
            if abs(n) >= abs(stop_index):
                return total, 1e-16 * count * abs(total), count
            continue
        if control.negligible(abs(term), abs(total)):
            quiet += 1
            if quiet >= 2:
                return total, abs(term), count
        else:
            quiet = 0
    raise NonConvergenceError("modular series ended unexpectedly")


def modular_series(
    kind: ModularKind,
    upper: Sequence[Number],
    lower: Sequence[Number],
    q: Number,
    p: Number,
    coeff: CoefficientRule = DEFAULT_RULE,
    z: Number = 0.0,
    control: SeriesControl = DEFAULT_CONTROL,
) -> EvalResult:
    """Modular series: E is the unilateral sum (a; q,p)_n / (q, b; q,p)_n A_n z^n,
    G the bilateral sum (c; q,p)_n / (d; q,p)_n B_n z^n over all integers n.

    Both tails stop after two consecutive negligible terms (heuristic
    last-term bound); a table rule stops at its last nonzero index.
    """
    q = as_real(q, "q")
    p = as_real(p, "p")
    z = as_complex(z)
    _check_modular(kind, q, p)
    span = coeff.horizon()
    if kind == "E":
        if z == 0:
            return EvalResult(coeff.value(0, q), 0.0, 1)
        stop = None if span is None else max(span[1], 0)
        value, err, count = _one_sided_sum(
            modular_ratios("E", upper, lower, q, p, 1, control), coeff, q, z, control, stop
        )
        return EvalResult(value, err, count)

    if z == 0:
        raise DomainError("the bilateral G series needs z != 0")
    stop_hi = None if span is None else max(span[1], 0)
    stop_lo = None if span is None else min(span[0], -1)
    right, err_r, n_r = _one_sided_sum(
        modular_ratios("G", upper, lower, q, p, 1, control), coeff, q, z, control, stop_hi
    )
    if stop_lo is not None and stop_lo == -1 and coeff.value(-1, q) == 0:
        return EvalResult(right, err_r, n_r)
    left, err_l, n_l = _one_sided_sum(
        modular_ratios("G", upper, lower, q, p, -1, control), coeff, q, z, control, stop_lo
    )
    return EvalResult(right + left, err_r + err_l, n_r + n_l)
