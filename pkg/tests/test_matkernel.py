import numpy as np
import pytest

from opsplit import (
    DimensionError,
    DomainError,
    NumericalRankError,
    SingularMatrixError,
    commutator_norm,
    diag_split,
    embed,
    lin_solve,
    mat_exp,
    mat_root,
    split_embedded,
)


class TestMatExp:
    def test_zero_matrix_gives_identity(self):
        assert np.array_equal(mat_exp(np.zeros((3, 3)), 1.0), np.eye(3))

    def test_nilpotent_series_terminates(self):
        N = np.array([[0.0, 1.0], [0.0, 0.0]])
        assert np.allclose(mat_exp(N, 1.0), [[1.0, 1.0], [0.0, 1.0]], atol=1e-15)

    def test_zero_row_sums_preserve_ones(self, gen_a):
        ones = np.ones(10)
        assert np.allclose(mat_exp(gen_a, 1.0) @ ones, ones, atol=1e-14)

    def test_semigroup_law(self, rng):
        for _ in range(20):
            M = rng.standard_normal((10, 10))
            M /= max(1.0, np.linalg.norm(M))
            s, t = rng.uniform(0.0, 1.0, 2)
            lhs = mat_exp(M, s + t)
            rhs = mat_exp(M, s) @ mat_exp(M, t)
            assert np.linalg.norm(lhs - rhs) <= 1e-10 * np.linalg.norm(lhs)

    def test_deterministic_bytes(self, gen_a):
        assert mat_exp(gen_a, 0.7).tobytes() == mat_exp(gen_a, 0.7).tobytes()

    def test_complex_input_supported(self):
        M = np.array([[1j]])
        assert abs(mat_exp(M, np.pi)[0, 0] + 1.0) < 1e-14

    def test_rejects_non_square(self):
        with pytest.raises(DimensionError):
            mat_exp(np.ones((2, 3)), 1.0)

    def test_rejects_non_finite(self):
        with pytest.raises(DomainError):
            mat_exp(np.array([[np.nan, 0], [0, 1.0]]), 1.0)
        with pytest.raises(DomainError):
            mat_exp(np.eye(2), np.inf)


class TestMatRoot:
    def test_identity_root(self):
        assert np.allclose(mat_root(np.eye(4), 3), np.eye(4), atol=1e-14)

    def test_scalar_diagonal_roots(self):
        R = mat_root(np.diag([8.0, 27.0]), 3)
        assert np.allclose(R, np.diag([2.0, 3.0]), atol=1e-13)

    def test_generator_cube_root_residual(self, gen_a):
        R = mat_root(gen_a, 3)
        residual = np.linalg.norm(np.linalg.matrix_power(R, 3) - gen_a)
        assert residual <= 1e-10 * max(1.0, np.linalg.norm(gen_a))

    def test_singular_input_keeps_exact_kernel(self, gen_a):
        # ones spans the zero eigenvalue of the generator
        R = mat_root(gen_a, 3)
        assert np.linalg.norm(R @ np.ones(10)) < 1e-13

    def test_principal_branch_for_negative_axis(self):
        # -1 maps to exp(i pi / p), not to a real root
        R = mat_root(np.array([[-1.0]]), 2)
        assert abs(R[0, 0] - 1j) < 1e-14
        R3 = mat_root(np.array([[-8.0]]), 3)
        assert abs(R3[0, 0] - 2.0 * np.exp(1j * np.pi / 3)) < 1e-13

    def test_eigenvalues_in_principal_sector(self, rng):
        M = rng.standard_normal((8, 8))
        for p in (2, 3, 5):
            R = mat_root(M @ M.T + 0.1 * np.eye(8), p)
            args = np.angle(np.linalg.eigvals(R))
            assert np.all(args > -np.pi / p - 1e-12)
            assert np.all(args <= np.pi / p + 1e-12)

    def test_random_diagonalizable_residuals(self, rng):
        for _ in range(20):
            M = rng.standard_normal((10, 10)) / np.sqrt(10)
            M = M @ M.T + 0.5 * np.eye(10)  # spectrum on the positive axis
            p = int(rng.integers(2, 6))
            R = mat_root(M, p)
            residual = np.linalg.norm(np.linalg.matrix_power(R, p) - M)
            assert residual <= 1e-10 * max(1.0, np.linalg.norm(M))

    def test_defective_matrix_rejected(self):
        with pytest.raises(NumericalRankError):
            mat_root(np.array([[1.0, 1.0], [0.0, 1.0]]), 2)

    def test_nilpotent_rejected(self):
        with pytest.raises(NumericalRankError):
            mat_root(np.array([[0.0, 1.0], [0.0, 0.0]]), 3)

    def test_zero_matrix_has_zero_root(self):
        assert np.array_equal(mat_root(np.zeros((3, 3)), 4), np.zeros((3, 3)))

    def test_invalid_order(self):
        with pytest.raises(DomainError):
            mat_root(np.eye(2), 1)

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            mat_root(np.array([[np.inf]]), 2)


class TestDiagSplit:
    def test_identity(self):
        D, R = diag_split(np.eye(3))
        assert np.array_equal(D, np.eye(3))
        assert np.array_equal(R, np.zeros((3, 3)))

    def test_two_by_two(self):
        D, R = diag_split(np.array([[1.0, 2.0], [3.0, 4.0]]))
        assert np.array_equal(D, [[1.0, 0.0], [0.0, 4.0]])
        assert np.array_equal(R, [[0.0, 2.0], [3.0, 0.0]])

    def test_exact_additivity(self, rng):
        M = rng.standard_normal((12, 12))
        D, R = diag_split(M)
        assert np.array_equal(D + R, M)

    def test_root_split_recomposes(self, gen_a):
        # the operator pair for the third-order runs: diag/off-diag of A^(1/3)
        R = mat_root(gen_a, 3)
        D, O = diag_split(R)
        assert np.array_equal(D + O, R)
        assert np.count_nonzero(np.diag(O)) == 0


class TestEmbed:
    def test_imaginary_unit_squares_to_minus_identity(self):
        E = embed(1j * np.eye(3))
        assert np.allclose(E @ E, -np.eye(6), atol=0)

    def test_real_matrix_is_block_diagonal(self, rng):
        M = rng.standard_normal((4, 4))
        E = embed(M)
        assert np.array_equal(E[:4, :4], M)
        assert np.array_equal(E[4:, 4:], M)
        assert np.count_nonzero(E[:4, 4:]) == 0

    def test_product_homomorphism(self, rng):
        for _ in range(10):
            M1 = (rng.standard_normal((10, 10)) + 1j * rng.standard_normal((10, 10))) / np.sqrt(10)
            M2 = (rng.standard_normal((10, 10)) + 1j * rng.standard_normal((10, 10))) / np.sqrt(10)
            assert np.linalg.norm(embed(M1 @ M2) - embed(M1) @ embed(M2)) <= 1e-12
            assert np.linalg.norm(embed(M1 + M2) - (embed(M1) + embed(M2))) == 0.0

    def test_exponential_compatibility(self, rng):
        M = (rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))) / 3
        diff = np.linalg.norm(embed(mat_exp(M, 0.8)) - mat_exp(embed(M), 0.8))
        assert diff <= 1e-10

    def test_split_embedded_roundtrip(self, rng):
        M = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        assert np.array_equal(split_embedded(embed(M)), M)

    def test_split_embedded_rejects_odd_dimension(self):
        with pytest.raises(DimensionError):
            split_embedded(np.eye(3))


class TestCommutatorNorm:
    def test_self_commutes(self, rng):
        M = rng.standard_normal((7, 7))
        assert commutator_norm(M, M) == 0.0

    def test_identity_commutes(self, rng):
        M = rng.standard_normal((7, 7))
        assert commutator_norm(M, np.eye(7)) == 0.0

    def test_matches_brute_force_products(self, gen_a, gen_b):
        # recompute [A, B] with explicit loop products, no numpy matmul
        n = 10
        lhs = [[sum(gen_a[i][k] * gen_b[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
        rhs = [[sum(gen_b[i][k] * gen_a[k][j] for k in range(n)) for j in range(n)]
               for i in range(n)]
        brute = np.sqrt(sum((lhs[i][j] - rhs[i][j]) ** 2
                            for i in range(n) for j in range(n)))
        assert abs(commutator_norm(gen_a, gen_b) - brute) < 1e-15

    def test_shape_mismatch(self):
        with pytest.raises(DimensionError):
            commutator_norm(np.eye(2), np.eye(3))


class TestLinSolve:
    def test_identity(self, rng):
        b = rng.standard_normal(6)
        assert np.array_equal(lin_solve(np.eye(6), b), b)

    def test_scalar_diagonal(self):
        assert np.allclose(lin_solve(np.diag([2.0]), np.array([4.0])), [2.0])

    def test_residual_bound(self, rng):
        M = rng.standard_normal((20, 20))
        b = rng.standard_normal(20)
        x = lin_solve(M, b)
        assert np.linalg.norm(M @ x - b) <= 1e-10 * (
            np.linalg.norm(M) * np.linalg.norm(x) + np.linalg.norm(b)
        )

    def test_singular_named_pivot(self):
        M = np.zeros((3, 3))
        M[0, 0] = 1.0
        with pytest.raises(SingularMatrixError, match="pivot"):
            lin_solve(M, np.ones(3))

    def test_singular_inconsistent_rejected_in_min_norm(self):
        M = np.diag([1.0, 0.0])
        with pytest.raises(SingularMatrixError):
            lin_solve(M, np.array([1.0, 1.0]), min_norm=True)

    def test_min_norm_drops_kernel_component(self):
        # consistent singular system: solution family e1 + span(e2)
        M = np.diag([2.0, 0.0])
        x = lin_solve(M, np.array([2.0, 0.0]), min_norm=True)
        assert np.allclose(x, [1.0, 0.0], atol=1e-14)
