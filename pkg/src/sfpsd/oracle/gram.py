"""Gram matrices of point functions under positive measures.

The quadrature route factors each positive weight as sqrt(w) and integrates
a_j conj(a_k) with a_j = sqrt(w) f_j, all in log space so that amplitudes
near the endpoints of a double-exponential rule neither overflow nor turn
into NaN.
"""

from dataclasses import dataclass
import logging
import math
from typing import Callable, Optional, Sequence

import numpy as np

from sfpsd.errors import DomainError, SpecError, TailTooLargeError
from sfpsd.kernels.families import KernelFamily, family_info
from sfpsd.kernels.spec import FactorSpec, MatrixSpec
from sfpsd.oracle.measures import (
    DEFAULT_TAIL_EPS,
    DiscreteMeasure,
    WeightedLine,
    WeightId,
    dn_measure,
    theta3_measure,
)
from sfpsd.psdlinalg.matrix import HermitianMatrix
from sfpsd.specialfn.quadrature import DomainKind, NodeSet, integrate

logger = logging.getLogger(__name__)

# Per-entry relative agreement expected between a kernel and its oracle.
ORACLE_TOL = {"discrete": 1e-10, "quadrature": 1e-7}

# Unit intervals summed explicitly before the sawtooth tail is closed analytically.
SAWTOOTH_INTERVALS = 64
# Terms summed directly in p! sum (c + n y)^(-p-1) before Euler-Maclaurin.
_POLYGAMMA_DIRECT = 16

_WEIGHT_BY_FAMILY: dict[KernelFamily, WeightId] = {
    KernelFamily.ZETA_TAIL: "ZETA_TAIL_WEIGHT",
    KernelFamily.GAMMA: "GAMMA_WEIGHT",
    KernelFamily.BETA: "BETA_WEIGHT",
    KernelFamily.ETA_GAMMA_ZETA: "ETA_WEIGHT",
    KernelFamily.ETA_GAMMA1_ZETA: "ETA1_WEIGHT",
    KernelFamily.POLYGAMMA_ZETA: "POLYGAMMA_WEIGHT",
    KernelFamily.HURWITZ_TAIL: "HURWITZ_TAIL_WEIGHT",
    KernelFamily.HURWITZ_DIFF: "COSH_WEIGHT",
    KernelFamily.LERCH: "LERCH_WEIGHT",
}

LogAmplitude = Callable[[NodeSet], np.ndarray]


@dataclass(frozen=True)
class _Piece:
    """One quadrature domain; log_amplitude returns log(sqrt(w) f_j) of shape (m, E, n)."""

    kind: DomainKind
    lo: float
    hi: float
    log_amplitude: LogAmplitude


# ─── discrete measures ────────────────────────────────────────────────────


def _exponent_growth(v: np.ndarray) -> float:
    """max |Im(v_j - conj(v_k))| = max |Im v_j + Im v_k|."""
    if v.size == 0:
        return 0.0
    return float(np.max(np.abs(v.imag[:, None] + v.imag[None, :])))


def gram_discrete(
    measure: DiscreteMeasure,
    exponents: Sequence[complex],
    target_eps: float = DEFAULT_TAIL_EPS,
) -> HermitianMatrix:
    """G[j,k] = sum over atoms of weight * exp(2 pi i x (v_j - conj(v_k))).

    Raises:
        TailTooLargeError: the truncation tail exceeds target_eps, or the
            exponents grow faster than the tail bound was computed for

    Examples:
        gram_discrete(DiscreteMeasure.single(), [0.1, 0.3j])  # all-ones matrix
    """
    v = np.asarray([complex(x) for x in exponents], dtype=np.complex128)
    if measure.tail_bound > target_eps:
        raise TailTooLargeError(
            "measure truncation tail exceeds target",
            tail=measure.tail_bound,
            target_eps=target_eps,
        )
    growth = _exponent_growth(v)
    if growth > measure.growth * (1.0 + 1e-12) + 1e-15:
        raise TailTooLargeError(
            "exponents grow faster than the measure tail bound covers",
            growth=growth,
            covered=measure.growth,
        )
    d = v[:, None] - v.conj()[None, :]
    phases = np.exp(2j * np.pi * measure.locations[:, None, None] * d[None, :, :])
    g = np.einsum("a,ajk->jk", measure.weights, phases)
    return HermitianMatrix.from_array(g, measure=measure.name, atoms=len(measure))


# ─── weights ──────────────────────────────────────────────────────────────


def _checked(log_w: np.ndarray, weight_id: str) -> np.ndarray:
    if np.any(np.isnan(log_w)):
        raise DomainError(f"{weight_id} is negative or undefined at a quadrature node")
    return log_w


def _amplitude(half_log_w: np.ndarray, log_f: np.ndarray) -> np.ndarray:
    """Broadcast (m,) or (m, E) half log weights against (m, E, n) log point functions."""
    half = half_log_w.reshape(half_log_w.shape + (1,) * (log_f.ndim - half_log_w.ndim))
    return half + log_f


def _power_points(log_x: np.ndarray, exponents: np.ndarray) -> np.ndarray:
    """log(x^e_j) with shape (m, 1, n)."""
    return log_x[:, None, None] * exponents[None, None, :]


def _log1pexp(x: np.ndarray) -> np.ndarray:
    return np.logaddexp(0.0, x)


def _scaled_power_sum(c: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """y * sum_{n>=1} (c + n y)^(-p-1), direct terms then Euler-Maclaurin through B6."""
    n = np.arange(1, _POLYGAMMA_DIRECT, dtype=float)
    head = y * np.sum((c[:, None] + n[None, :] * y[:, None]) ** (-p - 1.0), axis=1)
    base = c + _POLYGAMMA_DIRECT * y
    r = p + 1.0
    tail = (
        base ** (-float(p)) / p
        + 0.5 * y * base ** (-r)
        + r * y**2 * base ** (-r - 1.0) / 12.0
        - r * (r + 1.0) * (r + 2.0) * y**4 * base ** (-r - 3.0) / 720.0
        + r * (r + 1.0) * (r + 2.0) * (r + 3.0) * (r + 4.0) * y**6 * base ** (-r - 5.0) / 30240.0
    )
    return head + tail


def _gamma_pieces(points: np.ndarray, params: dict) -> list[_Piece]:
    z = points[:, 0]

    def amp(nodes: NodeSet) -> np.ndarray:
        log_x = np.log(nodes.dist_lo)
        log_w = _checked(-nodes.x - log_x, "GAMMA_WEIGHT")
        return _amplitude(0.5 * log_w, _power_points(log_x, z))

    return [_Piece("half", 0.0, math.inf, amp)]


def _beta_pieces(points: np.ndarray, params: dict) -> list[_Piece]:
    p, q = points[:, 0], points[:, 1]

    def amp(nodes: NodeSet) -> np.ndarray:
        log_x = np.log(nodes.dist_lo)
        log_1mx = np.log(nodes.dist_hi)
        log_w = _checked(-log_x - log_1mx, "BETA_WEIGHT")
        log_f = _power_points(log_x, p) + _power_points(log_1mx, q)
        return _amplitude(0.5 * log_w, log_f)

    return [_Piece("finite", 0.0, 1.0, amp)]


def _sawtooth_pieces(shift: float, weight_id: str) -> Callable[[np.ndarray, dict], list[_Piece]]:
    """{u}/(u+shift) on (1, inf) with f_j = (u+shift)^(-s_j), unit intervals [m, m+1]."""

    def pieces(points: np.ndarray, params: dict) -> list[_Piece]:
        a = float(params.get("a", shift))
        s = points[:, 0]
        m = np.arange(1, SAWTOOTH_INTERVALS, dtype=float)

        def amp(nodes: NodeSet) -> np.ndarray:
            t = nodes.dist_lo
            log_u = np.log(m[None, :] + t[:, None] + a)  # (nodes, intervals)
            log_w = _checked(np.log(t)[:, None] - log_u, weight_id)
            log_f = -log_u[:, :, None] * s[None, None, :]
            return _amplitude(0.5 * log_w, log_f)

        return [_Piece("finite", 0.0, 1.0, amp)]

    return pieces


def _sawtooth_tail(points: np.ndarray, a: float) -> np.ndarray:
    """Euler-Maclaurin closure of int_M^inf {u} (u+a)^(-sigma-1) du, sigma = s_j + conj(s_k)."""
    s = points[:, 0]
    sigma = s[:, None] + s.conj()[None, :]
    base = SAWTOOTH_INTERVALS + a
    log_base = math.log(base)

    def power(e):
        return np.exp(-e * log_base)

    return (
        0.5 * power(sigma) / sigma
        - power(sigma + 1.0) / 12.0
        + (sigma + 1.0) * (sigma + 2.0) * power(sigma + 3.0) / 720.0
        - (sigma + 1.0) * (sigma + 2.0) * (sigma + 3.0) * (sigma + 4.0) * power(sigma + 5.0)
        / 30240.0
    )


def _half_line_pieces(
    log_weight: Callable[[np.ndarray, np.ndarray, dict], np.ndarray], weight_id: str
) -> Callable[[np.ndarray, dict], list[_Piece]]:
    """Weight on (0, inf) with f_j = x^(s_j)."""

    def pieces(points: np.ndarray, params: dict) -> list[_Piece]:
        s = points[:, 0]

        def amp(nodes: NodeSet) -> np.ndarray:
            log_x = np.log(nodes.dist_lo)
            log_w = _checked(log_weight(nodes.x, log_x, params), weight_id)
            return _amplitude(0.5 * log_w, _power_points(log_x, s))

        return [_Piece("half", 0.0, math.inf, amp)]

    return pieces


def _eta_log_weight(x, log_x, params):
    return -log_x - _log1pexp(x)


def _eta1_log_weight(x, log_x, params):
    return x - 2.0 * _log1pexp(x)


def _cosh_log_weight(x, log_x, params):
    a = float(params["a"])
    # log(2 cosh x) = x + log1p(e^(-2x))
    return -log_x - a * x - x - np.log1p(np.exp(-2.0 * x))


def _lerch_log_weight(x, log_x, params):
    a = float(params["a"])
    z = float(params["z"])
    with np.errstate(over="ignore"):
        return -a * x - log_x - np.log1p(-z * np.exp(-x))


def _polygamma_pieces(points: np.ndarray, params: dict) -> list[_Piece]:
    """x^(-s_j) under p! sum (x+n)^(-p-1): [0, 1] directly, [1, inf) through x = 1/y."""
    p = int(params["p"])
    s = points[:, 0]
    log_fact = math.log(math.factorial(p))

    def near(nodes: NodeSet) -> np.ndarray:
        x = nodes.dist_lo
        log_x = np.log(x)
        weight_sum = _scaled_power_sum(x, np.ones_like(x), p)
        log_w = _checked(log_fact + np.log(weight_sum), "POLYGAMMA_WEIGHT")
        return _amplitude(0.5 * log_w, _power_points(log_x, -s))

    def far(nodes: NodeSet) -> np.ndarray:
        y = nodes.dist_lo
        log_y = np.log(y)
        # x^(-s) w(x) dx = y^(s + p - 2) * [p! y sum (1 + n y)^(-p-1)] dy
        scaled = _scaled_power_sum(np.ones_like(y), y, p)
        log_w = _checked((p - 2.0) * log_y + log_fact + np.log(scaled), "POLYGAMMA_WEIGHT")
        return _amplitude(0.5 * log_w, _power_points(log_y, s))

    return [_Piece("finite", 0.0, 1.0, near), _Piece("finite", 0.0, 1.0, far)]


_PIECES: dict[str, Callable[[np.ndarray, dict], list[_Piece]]] = {
    "GAMMA_WEIGHT": _gamma_pieces,
    "BETA_WEIGHT": _beta_pieces,
    "ZETA_TAIL_WEIGHT": _sawtooth_pieces(0.0, "ZETA_TAIL_WEIGHT"),
    "HURWITZ_TAIL_WEIGHT": _sawtooth_pieces(0.0, "HURWITZ_TAIL_WEIGHT"),
    "ETA_WEIGHT": _half_line_pieces(_eta_log_weight, "ETA_WEIGHT"),
    "ETA1_WEIGHT": _half_line_pieces(_eta1_log_weight, "ETA1_WEIGHT"),
    "COSH_WEIGHT": _half_line_pieces(_cosh_log_weight, "COSH_WEIGHT"),
    "LERCH_WEIGHT": _half_line_pieces(_lerch_log_weight, "LERCH_WEIGHT"),
    "POLYGAMMA_WEIGHT": _polygamma_pieces,
}


def _integrand(piece: _Piece) -> Callable[[NodeSet], np.ndarray]:
    def f(nodes: NodeSet) -> np.ndarray:
        log_a = piece.log_amplitude(nodes)
        with np.errstate(under="ignore", over="ignore", invalid="ignore"):
            a = np.exp(log_a)
        a = a.reshape(a.shape[0], -1, a.shape[-1])
        return np.einsum("pej,pek->pjk", a, a.conj())

    return f


def _as_points(points: Sequence) -> np.ndarray:
    rows = []
    for p in points:
        values = p if isinstance(p, (tuple, list, np.ndarray)) else (p,)
        rows.append(tuple(complex(x) for x in values))
    if not rows:
        raise DomainError("gram_quadrature needs at least one point")
    return np.asarray(rows, dtype=np.complex128)


def gram_quadrature(line: WeightedLine, points: Sequence) -> HermitianMatrix:
    """G[j,k] = integral of f_j conj(f_k) w over the line's domain.

    Args:
        line: Weight, its parameters and the quadrature control
        points: Per-index parameters of the point functions (s_j, z_j or (p_j, q_j))

    Raises:
        SpecError: the weight has no point-function pairing
        QuadratureNoConvergence: consecutive levels never agreed to target_eps

    Examples:
        gram_quadrature(WeightedLine("GAMMA_WEIGHT"), [0.5])  # [[Gamma(1)]] = [[1]]
    """
    builder = _PIECES.get(line.weight_id)
    if builder is None:
        raise SpecError(f"{line.weight_id} has no Gram point functions")
    pts = _as_points(points)
    n = pts.shape[0]
    total = np.zeros((n, n), dtype=np.complex128)
    levels = 0
    for piece in builder(pts, line.params):
        result = integrate(
            _integrand(piece),
            piece.kind,
            piece.lo,
            piece.hi,
            target_eps=line.target_eps,
            max_levels=line.max_levels,
        )
        total += np.asarray(result.value).reshape(n, n)
        levels = max(levels, result.levels)
    if line.weight_id in ("ZETA_TAIL_WEIGHT", "HURWITZ_TAIL_WEIGHT"):
        total += _sawtooth_tail(pts, float(line.params.get("a", 0.0)))
    logger.debug("gram_quadrature %s n=%d: %d level(s)", line.weight_id, n, levels)
    return HermitianMatrix.from_array(total, weight=line.weight_id, levels=levels)


# ─── family oracles ───────────────────────────────────────────────────────


def line_for_factor(
    factor: FactorSpec, target_eps: float = 1e-12, max_levels: int = 10
) -> WeightedLine:
    """The weighted line whose Gram matrix reproduces a factor's kernel."""
    weight = _WEIGHT_BY_FAMILY.get(factor.family)
    if weight is None:
        raise SpecError(f"{factor.family.value} has no quadrature oracle")
    params = {}
    for key in ("a", "z", "p"):
        if factor.get(key) is not None:
            params[key] = complex(factor.get(key)).real
    return WeightedLine(weight, params, target_eps, max_levels)


def kernel_from_gram(factor: FactorSpec, gram: HermitianMatrix) -> HermitianMatrix:
    """Undo the positive rescalings between a raw Gram matrix and the displayed kernel.

    POLYGAMMA_ZETA: the Gram matrix is pi times the kernel.
    HURWITZ_DIFF: G = D K D^H with D = diag(4^(-s_j)), so K = D^-1 G D^-H.
    """
    entries = gram.array()
    if factor.family == KernelFamily.POLYGAMMA_ZETA:
        entries = entries / math.pi
    elif factor.family == KernelFamily.HURWITZ_DIFF:
        s = np.asarray([p[0] for p in factor.points], dtype=np.complex128)
        d = np.exp(s * math.log(4.0))
        entries = d[:, None] * entries * d.conj()[None, :]
    return HermitianMatrix.from_array(entries, **gram.meta)


def oracle_factor_matrix(
    factor: FactorSpec,
    target_eps: float = 1e-12,
    max_levels: int = 10,
    tail_eps: float = DEFAULT_TAIL_EPS,
) -> HermitianMatrix:
    """Kernel matrix of one factor rebuilt from its measure.

    Raises:
        SpecError: the family has no oracle
    """
    info = family_info(factor.family)
    if info.oracle == "discrete":
        v = np.asarray([p[0] for p in factor.points], dtype=np.complex128)
        q = complex(factor.get("q")).real
        growth = _exponent_growth(v)
        if factor.family == KernelFamily.THETA3:
            measure = theta3_measure(q, growth, tail_eps)
        else:
            measure = dn_measure(q, growth, tail_eps)
        return gram_discrete(measure, v, tail_eps)
    if info.oracle == "quadrature":
        line = line_for_factor(factor, target_eps, max_levels)
        return kernel_from_gram(factor, gram_quadrature(line, factor.points))
    raise SpecError(f"{factor.family.value} ({info.label}) has no Gram oracle")


def oracle_matrix(
    spec: MatrixSpec, target_eps: float = 1e-12, max_levels: int = 10
) -> HermitianMatrix:
    """Hadamard product of the factor oracles.

    Raises:
        SpecError: some factor has no oracle
    """
    n = spec.n
    product = np.ones((n, n), dtype=np.complex128)
    for factor in spec.factors:
        product *= oracle_factor_matrix(factor, target_eps, max_levels).entries
    return HermitianMatrix.from_array(product, label=spec.label)


def oracle_tolerance(spec: MatrixSpec) -> Optional[float]:
    """Loosest per-entry tolerance among the factors' oracle kinds (None without oracle)."""
    kinds = [family_info(f.family).oracle for f in spec.factors]
    if any(k is None for k in kinds):
        return None
    return max(ORACLE_TOL[k] for k in kinds)
