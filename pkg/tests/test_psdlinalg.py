"""Test the Hermitian eigensolver, pivoted Cholesky and PSD verdicts."""

import math
import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sfpsd.errors import DimensionMismatchError, DomainError, NonHermitianError
from sfpsd.psdlinalg import (
    HermitianMatrix,
    cholesky_determinant,
    eigen_decomposition,
    eigenvalues_hermitian,
    gram_matrix,
    hadamard_det_check,
    leading_minors,
    pivoted_cholesky,
    psd_verdict,
    schur_product,
)
from sfpsd.psdlinalg.eigen import MAX_SWEEPS, _offdiag_norm, jacobi_symmetric, real_embedding
from tests.conftest import random_gram, random_hermitian

seeds = st.integers(min_value=0, max_value=2**32 - 1)
sizes = st.integers(min_value=1, max_value=6)


# ─── HermitianMatrix ──────────────────────────────────────────────────────


class TestHermitianMatrix:
    def test_symmetrised_with_real_diagonal(self):
        m = HermitianMatrix.from_array([[1 + 1e-13j, 2j], [-2j, 3]])
        assert m[0, 0] == 1.0
        assert m.defect < 1e-10
        assert not m.entries.flags.writeable

    def test_not_hermitian(self):
        with pytest.raises(NonHermitianError) as info:
            HermitianMatrix.from_array([[1, 2], [0, 1]])
        assert info.value.exit_code == 3

    def test_non_finite(self):
        with pytest.raises(NonHermitianError):
            HermitianMatrix.from_array([[np.nan, 0], [0, 1]])

    def test_not_square(self):
        with pytest.raises(DimensionMismatchError):
            HermitianMatrix.from_array([[1, 2, 3], [2, 1, 0]])

    def test_dict_form(self):
        m = HermitianMatrix.from_array([[2, 1 - 1j], [1 + 1j, 3]])
        data = m.to_dict()
        assert data["n"] == 2
        assert data["imag"] == [[0.0, -1.0], [1.0, 0.0]]
        assert np.array_equal(HermitianMatrix.from_dict(data).entries, m.entries)

    def test_submatrix_and_trace(self):
        m = HermitianMatrix.from_array(np.diag([1.0, 2.0, 3.0]))
        assert m.submatrix(2).n == 2
        assert m.trace() == 6.0


# ─── eigenvalues ──────────────────────────────────────────────────────────


class TestEigenvalues:
    def test_real_example(self):
        assert eigenvalues_hermitian([[2, 1], [1, 2]]).eigenvalues == pytest.approx(
            (1.0, 3.0), abs=1e-14
        )

    def test_complex_example(self):
        assert eigenvalues_hermitian([[1, 1j], [-1j, 1]]).eigenvalues == pytest.approx(
            (0.0, 2.0), abs=1e-14
        )

    def test_empty(self):
        result = eigenvalues_hermitian(np.zeros((0, 0)))
        assert result.eigenvalues == ()
        assert result.min_eig == 0.0

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=sizes)
    def test_matches_lapack(self, seed, n):
        a = random_hermitian(np.random.default_rng(seed), n)
        ours = np.array(eigenvalues_hermitian(a).eigenvalues)
        reference = np.linalg.eigvalsh(a)
        scale = max(1.0, float(np.max(np.abs(reference))))
        assert np.max(np.abs(ours - reference)) <= 1e-11 * scale

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=sizes)
    def test_trace_and_determinant(self, seed, n):
        a = random_hermitian(np.random.default_rng(seed), n)
        eigs = np.array(eigenvalues_hermitian(a).eigenvalues)
        scale = max(1.0, float(np.max(np.abs(eigs))))
        assert abs(eigs.sum() - np.trace(a).real) <= 1e-11 * scale * n
        det = np.linalg.det(a).real
        assert abs(np.prod(eigs) - det) <= 1e-9 * scale**n

    @pytest.mark.slow
    def test_two_hundred_hermitian_matrices(self):
        rng = np.random.default_rng(200)
        for trial in range(200):
            n = int(rng.integers(1, 9))
            a = random_hermitian(rng, n)
            eigs = np.array(eigenvalues_hermitian(a).eigenvalues)
            scale = max(1.0, float(np.max(np.abs(eigs))))
            assert abs(eigs.sum() - np.trace(a).real) <= 1e-10 * scale * n, trial
            assert abs(np.prod(eigs) - np.linalg.det(a).real) <= 1e-9 * scale**n, trial

    @pytest.mark.slow
    def test_backward_error_at_sixteen(self, rng):
        a = random_hermitian(rng, 16)
        result, v = eigen_decomposition(a)
        residual = np.linalg.norm(a @ v - v @ np.diag(result.eigenvalues))
        assert residual <= 1e-9 * np.linalg.norm(a)

    def test_decomposition(self, rng):
        a = random_hermitian(rng, 5)
        result, v = eigen_decomposition(a)
        assert np.allclose(v.conj().T @ v, np.eye(5), atol=1e-12)
        assert np.allclose(a @ v, v @ np.diag(result.eigenvalues), atol=1e-11)

    def test_decomposition_with_repeated_eigenvalue(self, rng):
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        a = q @ np.diag([1.0, 1.0, 2.0]) @ q.conj().T
        result, v = eigen_decomposition(a)
        assert result.eigenvalues == pytest.approx((1.0, 1.0, 2.0), abs=1e-12)
        assert np.allclose(a @ v, v @ np.diag(result.eigenvalues), atol=1e-11)


class TestJacobiConvergence:
    def test_offdiag_norm_of_diagonal_is_zero(self):
        a = np.diag([1.0 / 3.0, 2.0 / 7.0, 5.1, 1.0e3])
        assert _offdiag_norm(a) == 0.0

    def test_offdiag_norm_keeps_tiny_entries(self):
        a = np.diag([1.0 / 3.0, 2.0 / 7.0, 5.1, 1.0e3])
        a[0, 3] = a[3, 0] = 1e-19
        assert _offdiag_norm(a) == pytest.approx(math.sqrt(2.0) * 1e-19)

    def test_diagonal_embedding_needs_no_sweep(self):
        embedded = real_embedding(HermitianMatrix.from_array(np.diag([0.1, 7.3])))
        assert embedded.shape == (4, 4)
        values, vectors, sweeps, off = jacobi_symmetric(embedded)
        assert sweeps == 0
        assert off == 0.0
        assert sorted(values) == [0.1, 0.1, 7.3, 7.3]

    def test_rotated_to_diagonal_stops(self):
        # after two sweeps the off-diagonal entries sit near 1e-19
        m = random_gram(np.random.default_rng(10391), 2)
        result = eigenvalues_hermitian(m)
        embedded = real_embedding(HermitianMatrix.from_array(m))
        assert result.iterations < MAX_SWEEPS
        assert result.offdiag_residual <= 1e-14 * np.linalg.norm(embedded)
        deviation = np.abs(np.array(result.eigenvalues) - np.linalg.eigvalsh(m))
        assert np.max(deviation) <= 1e-12 * result.max_eig
        assert psd_verdict(m).is_psd

    @pytest.mark.parametrize("seed", range(8))
    def test_random_grams_converge(self, seed):
        rng = np.random.default_rng(seed)
        for n in range(2, 8):
            assert psd_verdict(random_gram(rng, n)).is_psd


# ─── pivoted Cholesky ─────────────────────────────────────────────────────


class TestPivotedCholesky:
    def test_identity(self):
        rank, success = pivoted_cholesky(np.eye(3))
        assert (rank, success) == (3, True)

    def test_rank_one(self):
        rank, success = pivoted_cholesky([[1, 1], [1, 1]])
        assert (rank, success) == (1, True)

    def test_indefinite(self):
        result = pivoted_cholesky([[1, 2], [2, 1]])
        assert result.success is False
        with pytest.raises(DomainError):
            result.determinant

    def test_reconstruction(self, rng):
        m = random_gram(rng, 6)
        result = pivoted_cholesky(m, tol=1e-12)
        perm = list(result.permutation)
        permuted = m[np.ix_(perm, perm)]
        assert result.rank == 6
        assert np.allclose(permuted, result.factor @ result.factor.conj().T, rtol=1e-10)

    def test_rank_deficient_gram(self, rng):
        rank, success = pivoted_cholesky(random_gram(rng, 6, rank=2))
        assert (rank, success) == (2, True)

    def test_pivots_descend(self, rng):
        pivots = pivoted_cholesky(random_gram(rng, 5)).pivots
        assert pivots[0] == max(pivots)

    def test_determinant(self, rng):
        m = random_gram(rng, 4)
        assert cholesky_determinant(m) == pytest.approx(np.linalg.det(m).real, rel=1e-9)
        assert abs(cholesky_determinant(random_gram(rng, 4, rank=3))) < 1e-9


# ─── verdicts ─────────────────────────────────────────────────────────────


class TestVerdict:
    def test_semidefinite_diagonal(self):
        verdict = psd_verdict(np.diag([0.0, 1.0]))
        assert verdict.is_psd
        assert verdict.cholesky_rank == 1

    def test_indefinite(self):
        verdict = psd_verdict([[1, 2], [2, 1]])
        assert not verdict.is_psd
        assert verdict.min_eig == pytest.approx(-1.0, abs=1e-13)
        assert verdict.min_quadratic_form < 0

    def test_tolerance_scales_with_largest_eigenvalue(self):
        verdict = psd_verdict(np.diag([1e-12, 100.0]), tol_rel=1e-8)
        assert verdict.tolerance_used == pytest.approx(1e-6)
        assert verdict.to_dict()["is_psd"] is True

    def test_slightly_negative_within_tolerance(self):
        assert psd_verdict(np.diag([-1e-12, 1.0])).is_psd
        assert not psd_verdict(np.diag([-1e-6, 1.0])).is_psd

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds, n=sizes)
    def test_gram_matrices_are_psd(self, seed, n):
        rng = np.random.default_rng(seed)
        rank = int(rng.integers(1, n + 1))
        assert psd_verdict(random_gram(rng, n, rank)).is_psd

    def test_all_ones(self):
        verdict = psd_verdict(np.ones((4, 4)))
        assert verdict.is_psd
        assert verdict.cholesky_rank == 1

    @pytest.mark.slow
    def test_thousand_gram_matrices(self):
        rng = np.random.default_rng(1000)
        for trial in range(1000):
            n = int(rng.integers(1, 9))
            m = random_gram(rng, n, rank=int(rng.integers(1, n + 1)))
            assert psd_verdict(m).is_psd, trial

    def test_shifted_gram_is_not_psd(self, rng):
        m = random_gram(rng, 4, rank=2) - 0.1 * np.eye(4)
        assert not psd_verdict(m).is_psd


class TestSchurProduct:
    @settings(max_examples=25, deadline=None)
    @given(seed=seeds, n=sizes)
    def test_product_of_psd_is_psd(self, seed, n):
        rng = np.random.default_rng(seed)
        a, b = random_gram(rng, n), random_gram(rng, n, rank=1)
        assert psd_verdict(schur_product(a, b)).is_psd

    @settings(max_examples=25, deadline=None)
    @given(seed=seeds, n=sizes)
    def test_determinant_inequality(self, seed, n):
        rng = np.random.default_rng(seed)
        assert hadamard_det_check(random_gram(rng, n), random_gram(rng, n))

    def test_rank_deficient_pairs(self, rng):
        for n in range(2, 7):
            a, b = random_gram(rng, n, rank=1), random_gram(rng, n, rank=n - 1)
            assert psd_verdict(schur_product(a, b)).is_psd
            assert hadamard_det_check(a, b)
            assert hadamard_det_check(b, b)

    @pytest.mark.slow
    def test_five_hundred_pairs(self):
        for seed in range(500):
            rng = np.random.default_rng(seed)
            n = int(rng.integers(1, 7))
            a = random_gram(rng, n, rank=int(rng.integers(1, n + 1)))
            b = random_gram(rng, n, rank=int(rng.integers(1, n + 1)))
            assert psd_verdict(schur_product(a, b)).is_psd, seed
            assert hadamard_det_check(a, b), seed

    def test_ones_is_the_identity(self, rng):
        a = random_hermitian(rng, 4)
        assert np.allclose(schur_product(a, np.ones((4, 4))).entries, a)

    def test_diagonals(self):
        product = schur_product(np.diag([1.0, 2.0]), np.diag([3.0, 4.0]))
        assert np.allclose(product.entries, np.diag([3.0, 8.0]))

    def test_mismatched_sizes(self):
        with pytest.raises(DimensionMismatchError):
            schur_product(np.eye(2), np.eye(3))

    def test_det_check_rejects_indefinite(self):
        with pytest.raises(DomainError):
            hadamard_det_check([[1, 2], [2, 1]], np.eye(2))


class TestMinors:
    def test_positive_definite(self):
        assert leading_minors([[2, 1], [1, 2]]) == pytest.approx([2.0, 3.0])

    def test_negative_minor_keeps_its_sign(self):
        assert leading_minors([[1, 2], [2, 1]]) == pytest.approx([1.0, -3.0])

    def test_gram_matrix(self, rng):
        g = rng.standard_normal((2, 3))
        m = gram_matrix(g)
        assert m.n == 3
        assert all(minor >= -1e-12 for minor in leading_minors(m))
        with pytest.raises(DomainError):
            gram_matrix(np.ones(3))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
