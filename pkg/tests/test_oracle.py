"""Test the measure-side Gram oracles and the two integral identities."""

import math
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest

from sfpsd.errors import DimensionMismatchError, DomainError, SpecError, TailTooLargeError
from sfpsd.kernels import FAMILY_INFO, FactorSpec, KernelFamily, MatrixSpec, random_spec
from sfpsd.kernels.evaluate import build_matrix, factor_matrix
from sfpsd.oracle import (
    AW_TOL,
    MP_TOL,
    ORACLE_TOL,
    DiscreteMeasure,
    WeightedLine,
    dn_measure,
    entrywise_compare,
    gram_discrete,
    gram_quadrature,
    oracle_factor_matrix,
    oracle_matrix,
    oracle_tolerance,
    theta3_measure,
    verify_aw_integral,
    verify_mp_identity,
)

QUADRATURE_FAMILIES = [f for f, info in FAMILY_INFO.items() if info.oracle == "quadrature"]


# ─── discrete measures ────────────────────────────────────────────────────


class TestDiscrete:
    def test_single_atom_gives_ones(self):
        g = gram_discrete(DiscreteMeasure.single(), [0.1, 0.3j])
        assert np.allclose(g.entries, np.ones((2, 2)))

    def test_theta3_measure_tail(self):
        measure = theta3_measure(0.5)
        assert measure.tail_bound <= 1e-15
        assert measure.weights[measure.locations == 0.0][0] == 1.0

    def test_theta3_matches_kernel(self):
        factor = FactorSpec(KernelFamily.THETA3, {"q": 0.3}, [0.1, -0.2 + 0.05j, 0.05j])
        report = entrywise_compare(oracle_factor_matrix(factor), factor_matrix(factor), 1e-10)
        assert report.ok, report.to_dict()

    def test_dn_matches_kernel(self):
        factor = FactorSpec(KernelFamily.DN, {"q": 0.2}, [0.0, 0.3 + 0.02j, -0.1 - 0.03j])
        report = entrywise_compare(oracle_factor_matrix(factor), factor_matrix(factor), 1e-10)
        assert report.ok, report.to_dict()

    def test_theta3_two_points(self):
        factor = FactorSpec(KernelFamily.THETA3, {"q": 0.1}, [0.0, 0.25])
        report = entrywise_compare(oracle_factor_matrix(factor), factor_matrix(factor), 1e-10)
        assert report.ok, report.to_dict()

    def test_dn_two_points(self):
        factor = FactorSpec(KernelFamily.DN, {"q": 0.3}, [0.0, 0.1])
        report = entrywise_compare(oracle_factor_matrix(factor), factor_matrix(factor), 1e-9)
        assert report.ok, report.to_dict()

    def test_growth_beyond_bound(self):
        with pytest.raises(TailTooLargeError):
            gram_discrete(theta3_measure(0.5), [0.2j, 0.2j])

    def test_dn_measure_diverges(self):
        with pytest.raises(TailTooLargeError) as info:
            dn_measure(0.5, growth=0.2)
        assert info.value.exit_code == 2

    def test_bad_measures(self):
        with pytest.raises(DomainError):
            DiscreteMeasure(np.array([0.0, 1.0]), np.array([1.0, -1.0]), 0.0)
        with pytest.raises(DomainError):
            theta3_measure(1.0)


# ─── quadrature Gram matrices ─────────────────────────────────────────────


class TestQuadrature:
    def test_gamma_weight(self):
        g = gram_quadrature(WeightedLine("GAMMA_WEIGHT"), [0.5])
        assert g[0, 0].real == pytest.approx(1.0, rel=1e-9)

    def test_beta_weight(self):
        g = gram_quadrature(WeightedLine("BETA_WEIGHT"), [(0.5, 0.5)])
        assert g[0, 0].real == pytest.approx(1.0, rel=1e-9)

    def test_zeta_tail_weight(self):
        factor = FactorSpec(KernelFamily.ZETA_TAIL, {}, [1.0, 1.5])
        report = entrywise_compare(oracle_factor_matrix(factor), factor_matrix(factor), 1e-7)
        assert report.ok, report.to_dict()

    def test_beta_weight_against_kernel(self):
        factor = FactorSpec(KernelFamily.BETA, {}, [(1.0, 1.0), (2.0, 3.0)])
        report = entrywise_compare(oracle_factor_matrix(factor), factor_matrix(factor), 1e-8)
        assert report.ok, report.to_dict()

    def test_weight_without_points(self):
        with pytest.raises(SpecError):
            gram_quadrature(WeightedLine("MP_WEIGHT"), [1.0])

    def test_unknown_weight(self):
        with pytest.raises(DomainError):
            WeightedLine("NOPE")

    @pytest.mark.parametrize("family", QUADRATURE_FAMILIES)
    def test_matches_kernel(self, family):
        spec = random_spec(family, 3, seed=3)
        tol = ORACLE_TOL["quadrature"]
        report = entrywise_compare(oracle_matrix(spec), build_matrix(spec), tol)
        assert report.ok, report.to_dict()

    @pytest.mark.slow
    @pytest.mark.parametrize("family", QUADRATURE_FAMILIES)
    def test_matches_kernel_many_seeds(self, family):
        for seed in range(10, 20):
            spec = random_spec(family, 5, seed)
            report = entrywise_compare(oracle_matrix(spec), build_matrix(spec), 1e-7)
            assert report.ok, (seed, report.to_dict())


class TestTolerances:
    def test_by_kind(self):
        theta = FactorSpec(KernelFamily.THETA3, {"q": 0.3}, [0.0])
        gamma = FactorSpec(KernelFamily.GAMMA, {}, [1.0])
        sine = FactorSpec(KernelFamily.SIN_POWER, {"lambda": 1.0}, [0.5])
        assert oracle_tolerance(MatrixSpec((theta,))) == 1e-10
        assert oracle_tolerance(MatrixSpec((theta, gamma))) == 1e-7
        assert oracle_tolerance(MatrixSpec((theta, sine))) is None

    def test_family_without_oracle(self):
        with pytest.raises(SpecError):
            oracle_factor_matrix(FactorSpec(KernelFamily.SIN_POWER, {"lambda": 1.0}, [0.5]))

    def test_product_of_oracles(self):
        theta = FactorSpec(KernelFamily.THETA3, {"q": 0.3}, [0.1, 0.2])
        gamma = FactorSpec(KernelFamily.GAMMA, {}, [1.0, 1.5 + 0.5j])
        spec = MatrixSpec((theta, gamma))
        report = entrywise_compare(oracle_matrix(spec), build_matrix(spec), 1e-7)
        assert report.ok


# ─── identities ───────────────────────────────────────────────────────────


class TestIdentities:
    def test_mp_closed_form(self):
        check = verify_mp_identity(1.0, math.pi / 2)
        lhs, rhs = check
        assert rhs == pytest.approx(0.25, rel=1e-14)
        assert lhs == pytest.approx(0.25, rel=MP_TOL)

    @pytest.mark.parametrize("lam, phi", [(0.3, 1.0), (2.5, 0.4), (1.0, 2.2)])
    def test_mp_holds(self, lam, phi):
        check = verify_mp_identity(lam, phi)
        assert check.ok(MP_TOL), check.to_dict()

    @pytest.mark.parametrize("lam", [0.5, 1.0, 2.5])
    @pytest.mark.parametrize("phi", [math.pi / 6, math.pi / 4, math.pi / 2])
    def test_mp_grid(self, lam, phi):
        assert verify_mp_identity(lam, phi).ok(1e-6)

    def test_mp_half(self):
        assert verify_mp_identity(0.5, math.pi / 4).rhs == pytest.approx(
            0.7071067811865476, rel=1e-13
        )

    def test_mp_domain(self):
        with pytest.raises(DomainError):
            verify_mp_identity(0.0, 1.0)
        with pytest.raises(DomainError):
            verify_mp_identity(1.0, math.pi)

    @pytest.mark.parametrize(
        "q, alphas",
        [
            (0.3, (0.5, 0.7, 1.1, 1.3)),
            (0.6, (0.4, 0.9, 1.2, 2.0)),
            (0.1, (1, 1, 1, 1)),
            (0.05, (0.6, 0.6, 0.6, 0.6)),
        ],
    )
    def test_aw_holds(self, q, alphas):
        check = verify_aw_integral(q, alphas)
        assert check.ok(AW_TOL), check.to_dict()
        assert check.ok(1e-6)
        assert check.to_dict()["name"] == "AW"

    def test_aw_domain(self):
        with pytest.raises(DomainError):
            verify_aw_integral(1.0, (1, 1, 1, 1))
        with pytest.raises(DomainError):
            verify_aw_integral(0.5, (1, 1, 1))
        with pytest.raises(DomainError):
            verify_aw_integral(0.5, (1, 1, 1, -1))


# ─── comparison ───────────────────────────────────────────────────────────


class TestCompare:
    def test_perturbed_entry(self, rng):
        b = rng.standard_normal((3, 3))
        b = b + b.T + 10 * np.eye(3)
        a = b.copy()
        a[0, 2] *= 1 + 1e-6
        a[2, 0] *= 1 + 1e-6
        report = entrywise_compare(a, b, 1e-7)
        assert not report.ok
        assert report.max_deviation == pytest.approx(1e-6, rel=1e-6)
        assert set(report.worst_index) == {0, 2}

    def test_zero_reference_entries_use_floor(self):
        b = np.array([[1.0, 0.0], [0.0, 1.0]])
        a = np.array([[1.0, 1e-15], [1e-15, 1.0]])
        assert entrywise_compare(a, b, 1e-2).ok

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            entrywise_compare(np.eye(2), np.eye(3), 1e-10)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
