"""Test gamma, zeta and their relatives against closed forms and mpmath."""

import cmath
import math
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfpsd.errors import DomainError, NonConvergenceError, PoleError
from sfpsd.specialfn import (
    SeriesControl,
    beta,
    dirichlet_eta,
    gamma,
    hurwitz_zeta,
    lerch_phi,
    log_gamma,
    polygamma_shift,
    riemann_xi,
    rising_factorial,
    zeta,
)
from tests.conftest import rel_err

mpmath.mp.dps = 30


def mp_complex(z) -> complex:
    return complex(mpmath.mpc(z))


# ─── gamma ────────────────────────────────────────────────────────────────


def test_gamma_integers_and_half():
    assert rel_err(gamma(5).value, 24.0) < 1e-12
    assert rel_err(gamma(1).value, 1.0) < 1e-14
    assert rel_err(gamma(0.5).value, math.sqrt(math.pi)) < 1e-13


@pytest.mark.parametrize("z", [0, -1, -7, complex(-3, 0)])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        gamma(z)


def test_gamma_reflection_identity():
    z = complex(0.3, 0.4)
    lhs = gamma(z).value * gamma(1 - z).value
    assert rel_err(lhs, math.pi / cmath.sin(math.pi * z)) < 1e-13


@pytest.mark.parametrize(
    "z", [complex(2.5, 1.0), complex(0.1, -3.0), complex(-2.7, 0.5), complex(12.0, 8.0)]
)
def test_gamma_matches_mpmath(z):
    assert rel_err(gamma(z).value, mp_complex(mpmath.gamma(z))) < 1e-12


@given(
    st.floats(min_value=-15.0, max_value=25.0),
    st.floats(min_value=-20.0, max_value=20.0),
)
@settings(max_examples=60, deadline=None)
def test_log_gamma_real_part_is_log_abs_gamma(x, y):
    z = complex(x, y)
    if abs(z - round(x)) < 1e-3 and round(x) <= 0:
        return
    expected = float(mpmath.log(abs(mpmath.gamma(mpmath.mpc(x, y)))))
    assert abs(log_gamma(z).real - expected) < 1e-10 * max(1.0, abs(expected))


def test_gamma_overflow():
    from sfpsd.errors import EvaluationOverflowError

    with pytest.raises(EvaluationOverflowError):
        gamma(200)


def test_beta_and_rising_factorial():
    assert rel_err(beta(2, 3).value, 1.0 / 12.0) < 1e-13
    assert rel_err(beta(0.5, 0.5).value, math.pi) < 1e-13
    assert rising_factorial(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
    assert rising_factorial(complex(1, 1), 0) == 1
    with pytest.raises(DomainError):
        beta(-1, 2)
    with pytest.raises(DomainError):
        rising_factorial(1.0, -1)


# ─── zeta family ──────────────────────────────────────────────────────────


def test_zeta_known_values():
    assert abs(zeta(2).value - math.pi**2 / 6) < 1e-10
    assert abs(zeta(4).value - math.pi**4 / 90) < 1e-12
    assert abs(zeta(0.5).value - (-1.4603545088095868)) < 1e-10


def test_zeta_domain():
    with pytest.raises(PoleError):
        zeta(1)
    with pytest.raises(DomainError):
        zeta(-1.0)
    with pytest.raises(DomainError):
        zeta(2, method="bogus")


@pytest.mark.parametrize(
    "s", [complex(0.5, 14.134725), complex(1.5, 0.0), complex(3.0, 2.0), complex(0.8, -5.0)]
)
def test_zeta_routes_agree(s):
    eta_route = zeta(s, method="eta").value
    em_route = zeta(s, method="euler_maclaurin").value
    assert abs(eta_route - em_route) <= 1e-10 * max(1.0, abs(em_route))


def test_zeta_auto_switches_near_eta_zero():
    # 1 - 2^(1-s) vanishes at s = 1 + 2 pi i / log 2
    s = complex(1.0, 2.0 * math.pi / math.log(2.0))
    value = zeta(s).value
    assert rel_err(value, mp_complex(mpmath.zeta(s))) < 1e-10


@pytest.mark.parametrize("s", [complex(2.0, 0.0), complex(0.7, 3.0), complex(4.5, -1.0)])
def test_zeta_matches_mpmath(s):
    assert rel_err(zeta(s).value, mp_complex(mpmath.zeta(s))) < 1e-11


def test_dirichlet_eta():
    assert abs(dirichlet_eta(1).value - math.log(2.0)) < 1e-13
    assert abs(dirichlet_eta(2).value - math.pi**2 / 12) < 1e-13
    with pytest.raises(DomainError):
        dirichlet_eta(0)


def test_eta_respects_max_terms():
    with pytest.raises(NonConvergenceError):
        dirichlet_eta(complex(0.5, 40.0), SeriesControl(max_terms=12))


def test_hurwitz_zeta():
    assert abs(hurwitz_zeta(2, 0.5).value - math.pi**2 / 2) < 1e-10
    assert rel_err(hurwitz_zeta(3, 1).value, zeta(3).value) < 1e-12
    s, a = complex(2.5, 1.0), 0.3
    assert rel_err(hurwitz_zeta(s, a).value, mp_complex(mpmath.zeta(s, a))) < 1e-11
    with pytest.raises(DomainError):
        hurwitz_zeta(2, 0)
    with pytest.raises(PoleError):
        hurwitz_zeta(1, 0.5)


@pytest.mark.parametrize("p,x", [(1, 0.0), (2, 0.3), (3, 4.0), (1, 25.0)])
def test_polygamma_shift_matches_mpmath(p, x):
    expected = float((-1) ** (p - 1) * mpmath.polygamma(p, 1 + x))
    assert rel_err(polygamma_shift(p, x).value.real, expected) < 1e-12


def test_polygamma_shift_domain():
    assert abs(polygamma_shift(1, 0).value - math.pi**2 / 6) < 1e-12
    with pytest.raises(DomainError):
        polygamma_shift(0, 1.0)
    with pytest.raises(DomainError):
        polygamma_shift(2, -0.5)


def test_riemann_xi_at_zero():
    assert abs(riemann_xi(0).value - 0.49712077818831410) < 1e-10


def test_riemann_xi_is_even_and_real(rng):
    for z in rng.uniform(-25.0, 25.0, 50):
        forward = riemann_xi(z).value
        backward = riemann_xi(-z).value
        assert forward.imag == 0.0
        assert abs(forward - backward) < 1e-12 * max(1.0, abs(forward))


def test_riemann_xi_strip():
    with pytest.raises(DomainError):
        riemann_xi(complex(0.0, 0.5))


# ─── identities and tolerance response ────────────────────────────────────

COARSE = SeriesControl(rel_eps=1e-10)
FINE = SeriesControl(rel_eps=5e-11)


def assert_within_estimates(evaluate):
    coarse, fine = evaluate(COARSE), evaluate(FINE)
    slack = coarse.err_estimate + fine.err_estimate + 1e-14 * abs(coarse.value)
    assert abs(fine.value - coarse.value) <= slack


@pytest.mark.parametrize("s", [0.3, complex(0.5, 3.0), complex(2.0, -1.0), complex(1.5, 8.0)])
def test_halving_rel_eps_zeta_family(s):
    assert_within_estimates(lambda c: zeta(s, c))
    assert_within_estimates(lambda c: dirichlet_eta(s, c))
    assert_within_estimates(lambda c: hurwitz_zeta(s, 0.4, c))
    assert_within_estimates(lambda c: lerch_phi(0.6, s, 0.7, c))
    assert_within_estimates(lambda c: lerch_phi(-0.8, s, 1.3, c))


@pytest.mark.parametrize("x", [0.0, 0.3, 2.5])
def test_halving_rel_eps_polygamma_and_xi(x):
    assert_within_estimates(lambda c: polygamma_shift(2, x, c))
    assert_within_estimates(lambda c: riemann_xi(complex(4.0 * x, 0.1 * x), c))


def test_hurwitz_at_one_is_zeta(rng):
    checked = 0
    while checked < 200:
        s = complex(rng.uniform(0.2, 4.0), rng.uniform(-6.0, 6.0))
        if abs(s - 1.0) < 0.1:
            continue
        h, z = hurwitz_zeta(s, 1.0), zeta(s)
        assert abs(h.value - z.value) <= (
            1e-10 * abs(z.value) + h.err_estimate + z.err_estimate
        ), s
        checked += 1


def test_gamma_recurrence(rng):
    re = rng.uniform(-20.0, 30.0, 1000)
    im = rng.uniform(-30.0, 30.0, 1000)
    for z in re + 1j * im:
        shifted = gamma(z + 1).value
        assert rel_err(z * gamma(z).value, shifted) < 1e-11, z


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
