"""Test rFs, the deformed q-series, rphi_s and the modular series."""

import cmath
import math
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import mpmath
import pytest

from sfpsd.errors import DomainError
from sfpsd.specialfn import (
    DEFAULT_RULE,
    CoefficientRule,
    SeriesControl,
    basic_hypergeometric_phi,
    deformed_q_hypergeometric,
    hypergeometric_f,
    modular_series,
    q_pochhammer,
    theta3,
)
from tests.conftest import rel_err


def test_hypergeometric_closed_forms():
    assert rel_err(hypergeometric_f([1, 1], [2], 0.5).value, 2.0 * math.log(2.0)) < 1e-13
    assert rel_err(hypergeometric_f([], [], 1.0).value, math.e) < 1e-14
    z = complex(0.2, -0.3)
    assert rel_err(hypergeometric_f([], [], z).value, cmath.exp(z)) < 1e-14


def test_hypergeometric_terminating_outside_disk():
    # 2F1(-2, b; b; z) = (1 - z)^2 is a polynomial, valid for any z
    assert rel_err(hypergeometric_f([-2, 1], [1], 3.0).value, 4.0) < 1e-15


def test_hypergeometric_matches_mpmath():
    upper, lower, z = [0.5, 1.3], [2.2], complex(0.3, 0.4)
    expected = complex(mpmath.hyp2f1(0.5, 1.3, 2.2, mpmath.mpc(z)))
    assert rel_err(hypergeometric_f(upper, lower, z).value, expected) < 1e-13
    expected = complex(mpmath.hyp1f1(0.7, 1.9, -2.5))
    assert rel_err(hypergeometric_f([0.7], [1.9], -2.5).value, expected) < 1e-12


def test_hypergeometric_domain():
    with pytest.raises(DomainError):
        hypergeometric_f([1, 1, 1], [1], 0.1)
    with pytest.raises(DomainError):
        hypergeometric_f([1, 1], [2], 1.0)
    with pytest.raises(DomainError):
        hypergeometric_f([1], [-2], 0.1)


def test_q_binomial_theorem():
    # 1phi0(a; -; q, z) = (az; q)_inf / (z; q)_inf
    a, q, z = 0.3, 0.5, 0.4
    expected = q_pochhammer(a * z, q).value / q_pochhammer(z, q).value
    assert rel_err(basic_hypergeometric_phi([a], [], q, z).value, expected) < 1e-13


def test_basic_phi_matches_mpmath():
    upper, lower, q, z = [0.2, 0.4], [0.7], 0.3, 0.5
    expected = float(mpmath.qhyper(upper, lower, q, z))
    assert rel_err(basic_hypergeometric_phi(upper, lower, q, z).value, expected) < 1e-12
    # s + 1 - r = 1 brings the Gaussian factor in
    upper, lower, z = [0.2], [0.4], 2.0
    expected = float(mpmath.qhyper(upper, lower, q, z))
    assert rel_err(basic_hypergeometric_phi(upper, lower, q, z).value, expected) < 1e-12


def test_deformed_series_domain():
    with pytest.raises(DomainError):
        deformed_q_hypergeometric([], [], 0.5, 0.0, 0.6, radius=0.5)
    with pytest.raises(DomainError):
        deformed_q_hypergeometric([], [], 0.5, -1.0, 0.1)
    with pytest.raises(DomainError):
        deformed_q_hypergeometric([], [], 1.5, 1.0, 0.1)
    # alpha > 0 converges everywhere
    value = deformed_q_hypergeometric([], [], 0.5, 1.0, 50.0).value
    assert math.isfinite(value.real)


def test_deformed_series_gaussian_sum():
    # no parameters: sum q^(alpha n^2) z^n
    q, alpha, z = 0.4, 0.5, 1.5
    expected = sum(q ** (alpha * n * n) * z**n for n in range(80))
    assert rel_err(deformed_q_hypergeometric([], [], q, alpha, z).value, expected) < 1e-13


def test_modular_g_reduces_to_theta3():
    # equal numerator and denominator parameters leave sum q^(n^2) z^n over Z
    q, v = 0.2, 0.1
    z = cmath.exp(2j * math.pi * v)
    value = modular_series("G", [0.3], [0.3], q, 0.1, DEFAULT_RULE, z).value
    assert rel_err(value, theta3(v, q).value) < 1e-12


def test_modular_table_rule():
    rule = CoefficientRule("table", {0: 1.0})
    assert modular_series("E", [], [], 0.5, 0.1, rule, 0.7).value == 1
    assert modular_series("E", [], [], 0.5, 0.1, DEFAULT_RULE, 0).value == 1
    assert rule.horizon() == (0, 0)
    assert rule.to_dict() == {"kind": "table", "table": {"0": 1.0}}


def test_modular_domain():
    with pytest.raises(DomainError):
        modular_series("G", [], [], 0.5, 0.1, DEFAULT_RULE, 0)
    with pytest.raises(DomainError):
        modular_series("X", [], [], 0.5, 0.1, DEFAULT_RULE, 0.3)
    with pytest.raises(DomainError):
        modular_series("E", [], [], 0.5, 1.0, DEFAULT_RULE, 0.3)
    with pytest.raises(DomainError):
        CoefficientRule("table", {1: -0.5})


def test_halving_rel_eps():
    for evaluate in (
        lambda c: hypergeometric_f([0.5, 1.2], [1.5], complex(0.6, 0.2), c),
        lambda c: hypergeometric_f([], [0.7], 3.0, c),
    ):
        coarse = evaluate(SeriesControl(rel_eps=1e-10))
        fine = evaluate(SeriesControl(rel_eps=5e-11))
        slack = coarse.err_estimate + fine.err_estimate + 1e-14 * abs(coarse.value)
        assert abs(fine.value - coarse.value) <= slack


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
