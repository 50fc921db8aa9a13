"""Function router - maps evaluator names to callables for `sfpsd eval`."""

from dataclasses import dataclass
import logging
from typing import Callable, Literal, Sequence

from sfpsd.errors import DomainError, UnknownFunctionError
from sfpsd.specialfn.gamma import beta, gamma, log_gamma, rising_factorial
from sfpsd.specialfn.lerch import lerch_phi
from sfpsd.specialfn.qseries import elliptic_theta, gamma_q, q_pochhammer
from sfpsd.specialfn.series import DEFAULT_CONTROL, EvalResult, SeriesControl
from sfpsd.specialfn.theta import jacobi_dn, quarter_period, theta3
from sfpsd.specialfn.zeta import dirichlet_eta, hurwitz_zeta, polygamma_shift, riemann_xi, zeta

logger = logging.getLogger(__name__)

ArgKind = Literal["complex", "real", "int"]


@dataclass(frozen=True)
class FunctionEntry:
    name: str
    call: Callable[..., object]
    args: tuple[ArgKind, ...]
    description: str
    takes_control: bool = True
    optional: int = 0

    @property
    def arity(self) -> tuple[int, int]:
        return len(self.args) - self.optional, len(self.args)

    @property
    def signature(self) -> str:
        names = [f"<{kind}>" for kind in self.args]
        for i in range(len(names) - self.optional, len(names)):
            names[i] = f"[{names[i]}]"
        return " ".join(names)


def _convert(value: complex, kind: ArgKind, position: int, name: str):
    if kind == "complex":
        return value
    if value.imag != 0:
        raise DomainError(f"{name}: argument {position} must be real", value=str(value))
    if kind == "real":
        return value.real
    if value.real != int(value.real):
        raise DomainError(f"{name}: argument {position} must be an integer", value=str(value))
    return int(value.real)


def _wrap(raw: object) -> EvalResult:
    if isinstance(raw, EvalResult):
        return raw
    return EvalResult(complex(raw), 0.0, 1)


_ENTRIES = (
    FunctionEntry("gamma", gamma, ("complex",), "Euler Gamma (Lanczos)", takes_control=False),
    FunctionEntry("log_gamma", log_gamma, ("complex",), "log Gamma", takes_control=False),
    FunctionEntry("beta", beta, ("complex", "complex"), "Euler Beta B(p, q)", takes_control=False),
    FunctionEntry("zeta", zeta, ("complex",), "Riemann zeta, Re(s) > 0"),
    FunctionEntry("eta", dirichlet_eta, ("complex",), "Dirichlet eta, Re(s) > 0"),
    FunctionEntry("hurwitz_zeta", hurwitz_zeta, ("complex", "real"), "Hurwitz zeta(s, a)"),
    FunctionEntry("lerch_phi", lerch_phi, ("real", "complex", "real"), "Lerch Phi(z, s, a), z < 1"),
    FunctionEntry(
        "polygamma_shift", polygamma_shift, ("int", "real"), "(-1)^(p-1) psi^(p)(1+x)"
    ),
    FunctionEntry("theta3", theta3, ("complex", "real"), "Jacobi theta_3(v, q)"),
    FunctionEntry("quarter_period", quarter_period, ("real",), "K = (pi/2) theta_3(0, q)^2"),
    FunctionEntry("jacobi_dn", jacobi_dn, ("complex", "real"), "dn(2Kv) Fourier series"),
    FunctionEntry("riemann_xi", riemann_xi, ("complex",), "Riemann Xi, |Im z| < 1/2"),
    FunctionEntry(
        "rising_factorial", rising_factorial, ("complex", "int"), "(a)_n", takes_control=False
    ),
    FunctionEntry(
        "q_pochhammer",
        q_pochhammer,
        ("complex", "real", "int"),
        "(z; q)_n, n omitted for the infinite product",
        optional=1,
    ),
    FunctionEntry("gamma_q", gamma_q, ("real", "real"), "q-Gamma Gamma_q(x)"),
    FunctionEntry("elliptic_theta", elliptic_theta, ("complex", "real"), "theta(x; p)"),
)

FUNCTIONS: dict[str, FunctionEntry] = {entry.name: entry for entry in _ENTRIES}


class FunctionRouter:
    """Routes an evaluator name and raw complex arguments to the evaluator."""

    def __init__(self, control: SeriesControl = DEFAULT_CONTROL, debug: bool = False):
        self.control = control
        self.debug = debug

    def route(self, name: str) -> FunctionEntry:
        """Look up an evaluator by name.

        Raises:
            UnknownFunctionError: name is not registered
        """
        entry = FUNCTIONS.get(name.strip().lower())
        if entry is None:
            raise UnknownFunctionError(
                f"unknown function {name!r}; known: {', '.join(sorted(FUNCTIONS))}",
                function=name,
            )
        return entry

    def evaluate(self, name: str, args: Sequence[complex]) -> EvalResult:
        """Convert arguments by kind and evaluate.

        Raises:
            UnknownFunctionError: name is not registered
            DomainError: wrong argument count or kind, or evaluator domain errors
        """
        entry = self.route(name)
        low, high = entry.arity
        if not low <= len(args) <= high:
            raise DomainError(
                f"{entry.name} takes {entry.signature}, got {len(args)} argument(s)"
            )
        converted = [
            _convert(complex(value), kind, i + 1, entry.name)
            for i, (value, kind) in enumerate(zip(args, entry.args))
        ]
        if self.debug:
            logger.debug("[Router] %s%s", entry.name, tuple(converted))
        if entry.takes_control:
            if len(converted) < high:
                return _wrap(entry.call(*converted, control=self.control))
            return _wrap(entry.call(*converted, self.control))
        return _wrap(entry.call(*converted))

    def get_route_description(self, name: str) -> str:
        """Human-readable one-liner for an evaluator."""
        entry = FUNCTIONS.get(name)
        if entry is None:
            return "Unknown function"
        return f"{entry.name} {entry.signature} - {entry.description}"
