"""
Tests for domain validation of matrix specs.
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from sfpsd.kernels import FactorSpec, KernelFamily, MatrixSpec, random_spec, validate_spec


def _conditions(family, shared, points):
    report = validate_spec(MatrixSpec((FactorSpec(family, shared, points),)))
    return [v.condition for v in report.violations]


class TestDomains:
    def test_dn_strip(self):
        report = validate_spec(
            MatrixSpec((FactorSpec(KernelFamily.DN, {"q": 0.5}, [0.1, 0.2j]),))
        )
        assert not report.ok
        (violation,) = report.violations
        assert violation.condition == "q * exp(4 pi |Im v_j|) < 1"
        assert violation.point == 1
        assert violation.family == "DN"

    def test_nome_range(self):
        assert "0 < q < 1" in _conditions(KernelFamily.THETA3, {"q": 1.0}, [0.0])
        assert "q is required" in _conditions(KernelFamily.THETA3, {}, [0.0])
        assert "q must be a finite real number" in _conditions(
            KernelFamily.THETA3, {"q": 0.5j}, [0.0]
        )

    def test_positive_real_part(self):
        report = validate_spec(
            MatrixSpec((FactorSpec(KernelFamily.GAMMA, {}, [1.0, -0.5 + 1j]),))
        )
        assert [(v.condition, v.point) for v in report.violations] == [("Re(z_j) > 0", 1)]

    def test_hypergeom_parameter_counts(self):
        conditions = _conditions(
            KernelFamily.HYPERGEOM, {"upper": [1, 1, 1], "lower": [1]}, [0.1]
        )
        assert conditions == ["s + 1 >= r"]

    def test_hypergeom_unit_disk(self):
        conditions = _conditions(
            KernelFamily.HYPERGEOM, {"upper": [0.5, 0.5], "lower": [1.0]}, [0.2, 1.2j]
        )
        assert "|z_j| < 1 when s + 1 = r" in conditions

    def test_hypergeom_negative_coefficient(self):
        conditions = _conditions(KernelFamily.HYPERGEOM, {"upper": [-0.5], "lower": []}, [0.5])
        assert "rFs coefficient ratios must be >= 0" in conditions

    def test_hypergeom_positive_parameters_pass(self):
        assert _conditions(
            KernelFamily.HYPERGEOM, {"upper": [0.5, 1.5], "lower": [2.0]}, [0.3, 0.5j]
        ) == []

    def test_polygamma(self):
        conditions = _conditions(KernelFamily.POLYGAMMA_ZETA, {"p": 1.5}, [0.6])
        assert "p is an integer >= 1" in conditions
        assert "0 < Re(s_j) < 1/2" in conditions

    def test_sin_power(self):
        conditions = _conditions(KernelFamily.SIN_POWER, {"lambda": -1}, [math.pi / 2])
        assert conditions == ["lambda > 0", "phi_j real with 0 < phi_j < pi/2"]

    def test_lerch_and_hurwitz(self):
        assert "z < 1" in _conditions(KernelFamily.LERCH, {"z": 1.0, "a": 1.0}, [1.0])
        assert "a > 0" in _conditions(KernelFamily.LERCH, {"z": 0.5, "a": 0.0}, [1.0])
        assert "a > 0" in _conditions(KernelFamily.HURWITZ_TAIL, {"a": -1}, [1.0])

    def test_riemann_xi_strip(self):
        assert _conditions(KernelFamily.RIEMANN_XI, {}, [3 + 0.3j]) == ["|Im z_j| < 1/4"]

    def test_aw_qgamma_real_alphas(self):
        conditions = _conditions(KernelFamily.AW_QGAMMA, {"q": 0.5}, [(1.0, 0.5j)])
        assert conditions == ["alpha_j1, alpha_j2 real and > 0"]

    def test_q_hypergeom_radius(self):
        shared = {"upper": [], "lower": [], "q": 0.5, "alpha": 0.0, "radius": 0.5}
        assert "|z_j|^2 < radius when alpha = 0" in _conditions(
            KernelFamily.Q_HYPERGEOM, shared, [0.8]
        )
        shared["alpha"] = -0.1
        assert "alpha >= 0" in _conditions(KernelFamily.Q_HYPERGEOM, shared, [0.1])

    def test_modular_g_needs_nonzero_points(self):
        shared = {"upper": [], "lower": [], "q": 0.5, "p": 0.1}
        conditions = _conditions(KernelFamily.MODULAR_G, shared, [0.0, 1.0])
        assert "z_j != 0 for the bilateral series" in conditions


class TestStructure:
    def test_point_arity(self):
        conditions = _conditions(KernelFamily.BETA, {}, [1.0])
        assert conditions == ["each point needs 2 value(s)"]

    def test_mismatched_sizes(self):
        spec = MatrixSpec(
            (
                FactorSpec(KernelFamily.GAMMA, {}, [1.0]),
                FactorSpec(KernelFamily.GAMMA, {}, [1.0, 2.0]),
            )
        )
        report = validate_spec(spec)
        assert [v.condition for v in report.violations] == ["all factors must have the same n"]

    def test_empty_and_wrong_type(self):
        assert not validate_spec(MatrixSpec(())).ok
        assert validate_spec({"factors": []}).violations[0].condition == (
            "spec must be a MatrixSpec"
        )

    def test_violations_name_the_factor(self):
        spec = MatrixSpec(
            (
                FactorSpec(KernelFamily.GAMMA, {}, [1.0]),
                FactorSpec(KernelFamily.THETA3, {"q": 2.0}, [0.0]),
            )
        )
        report = validate_spec(spec)
        assert report.to_dict()["violations"][0]["factor"] == 1

    @pytest.mark.parametrize("family", list(KernelFamily))
    def test_random_specs_validate(self, family):
        for seed in range(5):
            assert validate_spec(random_spec(family, 4, seed)).ok


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
