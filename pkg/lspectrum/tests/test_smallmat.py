import numpy as np
from django.test import SimpleTestCase
from numpy.polynomial import polynomial as P

from lspectrum.exceptions import ZeroPolynomial
from lspectrum.smallmat import Mat3, RealPoly, adj2, det2, eig2_real, pinv_small, real_eigenvalues, real_roots

TOL = 1e-8


class Mat3Tests(SimpleTestCase):
    def test_blocks_partition_the_matrix(self):
        A = Mat3([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
        np.testing.assert_array_equal(A.tilde, [[1, 2], [4, 5]])
        np.testing.assert_array_equal(A.u, [3, 6])
        np.testing.assert_array_equal(A.v, [7, 8])
        self.assertEqual(A.a, 9.0)
        self.assertEqual(Mat3.from_blocks(A.tilde, A.u, A.v, A.a), A)

    def test_rejects_bad_shapes_and_non_finite_entries(self):
        with self.assertRaises(ValueError):
            Mat3(np.eye(2))
        with self.assertRaises(ValueError):
            Mat3([[np.nan, 0, 0], [0, 1, 0], [0, 0, 1]])

    def test_entries_are_read_only(self):
        A = Mat3(np.eye(3))
        with self.assertRaises(ValueError):
            A.entries[0, 0] = 5.0


class Adj2Tests(SimpleTestCase):
    def test_examples(self):
        np.testing.assert_array_equal(adj2(np.eye(2)), np.eye(2))
        M = np.array([[1.0, 2.0], [3.0, 4.0]])
        np.testing.assert_array_equal(adj2(M), [[4, -2], [-3, 1]])
        np.testing.assert_allclose(M @ adj2(M), -2.0 * np.eye(2))

    def test_adjugate_identity_on_random_matrices(self):
        rng = np.random.default_rng(7)
        for _ in range(200):
            M = rng.uniform(-5, 5, (2, 2))
            bound = 1e-10 * (1 + np.linalg.norm(M) ** 2)
            np.testing.assert_allclose(M @ adj2(M), det2(M) * np.eye(2), atol=bound)
            np.testing.assert_allclose(adj2(M) @ M, det2(M) * np.eye(2), atol=bound)


class Eig2RealTests(SimpleTestCase):
    def test_symmetric_involution(self):
        eigs = eig2_real([[0, 1], [1, 0]], TOL)
        self.assertEqual([e.value for e in eigs], [-1.0, 1.0])
        self.assertEqual([e.multiplicity for e in eigs], [1, 1])

    def test_scalar_matrix_has_multiplicity_two(self):
        (eig,) = eig2_real(3.5 * np.eye(2), TOL)
        self.assertEqual(eig.value, 3.5)
        self.assertEqual(eig.multiplicity, 2)

    def test_rotation_has_no_real_eigenvalues(self):
        self.assertEqual(eig2_real([[0, -1], [1, 0]], TOL), [])

    def test_jordan_block_has_multiplicity_one(self):
        (eig,) = eig2_real([[0, 1], [0, 0]], TOL)
        self.assertEqual(eig.value, 0.0)
        self.assertEqual(eig.multiplicity, 1)
        np.testing.assert_allclose(np.array([[0, 1], [0, 0]]) @ eig.vector, 0.0, atol=1e-15)

    def test_values_zero_the_characteristic_polynomial(self):
        rng = np.random.default_rng(11)
        for _ in range(300):
            M = rng.uniform(-3, 3, (2, 2))
            for eig in eig2_real(M, TOL):
                bound = 1e-10 * (1 + np.linalg.norm(M) ** 2)
                self.assertLessEqual(abs(det2(M - eig.value * np.eye(2))), bound)
                self.assertAlmostEqual(float(np.linalg.norm(eig.vector)), 1.0, places=12)
                np.testing.assert_allclose(M @ eig.vector, eig.value * eig.vector, atol=1e-8)

    def test_close_eigenvalues_stay_apart(self):
        M = np.diag([1.0, 1.00005])
        eigs = eig2_real(M, TOL)
        np.testing.assert_allclose([e.value for e in eigs], [1.0, 1.00005], rtol=0, atol=1e-14)
        self.assertEqual([e.multiplicity for e in eigs], [1, 1])
        for eig in eigs:
            self.assertLessEqual(abs(det2(M - eig.value * np.eye(2))), 1e-10 * (1 + np.linalg.norm(M) ** 2))
            np.testing.assert_allclose(M @ eig.vector, eig.value * eig.vector, atol=1e-14)

    def test_nearly_scalar_matrix_counts_as_scalar(self):
        (eig,) = eig2_real(np.diag([1.0, 1.0 + 1.5e-8]), TOL)
        self.assertEqual(eig.multiplicity, 2)

    def test_rejects_non_positive_tolerance(self):
        with self.assertRaises(ValueError):
            eig2_real(np.eye(2), 0.0)


class PinvSmallTests(SimpleTestCase):
    def test_projector_is_its_own_pseudoinverse(self):
        np.testing.assert_array_equal(pinv_small([[1, 0], [0, 0]], TOL), [[1, 0], [0, 0]])

    def test_stacked_zero_block(self):
        B = np.array([[0, 0], [0, 0], [3, 4]], dtype=float)
        np.testing.assert_allclose(pinv_small(B, TOL), np.array([[0, 0, 3], [0, 0, 4]]) / 25.0)

    def test_zero_matrix(self):
        np.testing.assert_array_equal(pinv_small(np.zeros((3, 2)), TOL), np.zeros((2, 3)))

    def test_penrose_identities_on_random_full_rank(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            M = rng.uniform(-2, 2, (3, 2))
            X = pinv_small(M, TOL)
            self.assertLess(np.linalg.norm(M @ X @ M - M), 1e-10)
            self.assertLess(np.linalg.norm(X @ M @ X - X), 1e-10)
            self.assertLess(np.linalg.norm((M @ X).T - M @ X), 1e-10)
            self.assertLess(np.linalg.norm((X @ M).T - X @ M), 1e-10)

    def test_rank_one_formula_matches_general_pseudoinverse(self):
        rng = np.random.default_rng(5)
        for rows in (1, 2, 3):
            for _ in range(50):
                M = np.outer(rng.uniform(-2, 2, rows), rng.uniform(-2, 2, 2))
                expected = M.T / np.trace(M.T @ M)
                np.testing.assert_allclose(pinv_small(M, TOL), expected, rtol=1e-12, atol=1e-14)
                np.testing.assert_allclose(np.linalg.pinv(M, rcond=1e-10), expected, rtol=1e-10, atol=1e-12)

    def test_rejects_oversized_input(self):
        with self.assertRaises(ValueError):
            pinv_small(np.zeros((3, 3)), TOL)


class RealRootsTests(SimpleTestCase):
    def roots(self, *coefficients):
        return [(r.value, r.multiplicity) for r in real_roots(RealPoly.of(*coefficients), TOL)]

    def test_factored_quadratic(self):
        found = self.roots(-1, 0, 1)
        self.assertEqual([m for _, m in found], [1, 1])
        np.testing.assert_allclose([x for x, _ in found], [-1.0, 1.0], atol=1e-14)

    def test_quadruple_root(self):
        self.assertEqual(self.roots(0, 0, 0, 0, 1), [(0.0, 4)])

    def test_resolvent_with_triple_root(self):
        # (2 - μ)²(μ² - 2μ) = μ(μ - 2)³
        coeffs = P.polymul(P.polymul([2, -1], [2, -1]), [0, -2, 1])
        result = real_roots(RealPoly(tuple(coeffs)), TOL)
        self.assertEqual([r.multiplicity for r in result], [1, 3])
        np.testing.assert_allclose([r.value for r in result], [0.0, 2.0], atol=1e-8)

    def test_complex_pair_is_dropped(self):
        self.assertEqual(self.roots(1, 0, 1), [])

    def test_zero_polynomial(self):
        with self.assertRaises(ZeroPolynomial):
            real_roots(RealPoly.of(0, 1e-12, 0), TOL)

    def test_recovers_known_factorisations(self):
        rng = np.random.default_rng(17)
        for _ in range(200):
            n_real = int(rng.integers(0, 5))
            real = np.sort(rng.choice(np.linspace(-3, 3, 13), size=n_real, replace=False))
            coeffs = P.polyfromroots(real) if n_real else np.array([1.0])
            if n_real <= 2:
                # complex pair (x - re)² + im² with im well away from zero
                re, im = rng.uniform(-2, 2), rng.uniform(0.5, 2)
                coeffs = P.polymul(coeffs, [re * re + im * im, -2 * re, 1.0])
            coeffs = coeffs * rng.uniform(0.5, 2.0)
            found = real_roots(RealPoly(tuple(coeffs)), TOL)
            np.testing.assert_allclose([r.value for r in found], real, atol=TOL)
            for root in found:
                bound = TOL * (1 + np.abs(coeffs).sum() * max(1.0, abs(root.value)) ** 4)
                self.assertLessEqual(abs(P.polyval(root.value, coeffs)), bound)

    def test_close_roots_are_not_merged(self):
        coeffs = P.polyfromroots([1.0, 1.00005, 3.0, -2.0])
        found = real_roots(RealPoly(tuple(coeffs)), TOL)
        self.assertEqual([r.multiplicity for r in found], [1, 1, 1, 1])
        np.testing.assert_allclose([r.value for r in found], [-2.0, 1.0, 1.00005, 3.0], rtol=0, atol=1e-9)

    def test_tangent_pair_near_zero(self):
        # μ⁴ - (2 + 2x²)μ² + 1 - 2x² with roots ±2.5e-5
        r = 6.25e-10
        x2 = (1 - r) ** 2 / (2 * (1 + r))
        found = real_roots(RealPoly.of(1 - 2 * x2, 0, -(2 + 2 * x2), 0, 1), TOL)
        small = [root for root in found if abs(root.value) < 1e-3]
        self.assertEqual([root.multiplicity for root in small], [1, 1])
        np.testing.assert_allclose([root.value for root in small], [-2.5e-5, 2.5e-5], rtol=0, atol=1e-10)


class RealEigenvaluesTests(SimpleTestCase):
    def test_close_eigenvalues_stay_apart(self):
        E = np.array([[1.0, 0.0, 0.0], [0.0, 1.00005, 0.0], [0.5, 0.5, 1.00002]])
        found = real_eigenvalues(E, TOL)
        self.assertEqual([r.multiplicity for r in found], [1, 1, 1])
        np.testing.assert_allclose([r.value for r in found], [1.0, 1.00002, 1.00005], rtol=0, atol=1e-12)

    def test_repeated_eigenvalues_are_merged(self):
        self.assertEqual(real_eigenvalues(np.eye(3), TOL), [(1.0, 3)])
        E = np.array([[2.0, 1.0, 0.0], [0.0, 2.0, 1.0], [0.0, 0.0, 2.0]])
        (root,) = real_eigenvalues(E, TOL)
        self.assertEqual(root.multiplicity, 3)
        self.assertAlmostEqual(root.value, 2.0, places=8)

    def test_complex_pair_is_dropped(self):
        E = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 3.0]])
        found = real_eigenvalues(E, TOL)
        self.assertEqual([r.multiplicity for r in found], [1])
        self.assertAlmostEqual(found[0].value, 3.0, places=12)
