import math

import numpy as np
import pytest
from numpy.polynomial import Polynomial
from numpy.testing import assert_allclose
from scipy.special import gammaln

from fockbench import basis
from fockbench import operators as op
from fockbench import symbols as sy
from fockbench.analysis import operator_norm
from fockbench.errors import PreconditionError, ReliabilityWarning

AF = sy.AnalyticFunction


def quad_matrix(fn, N, rule=None):
    """entries[m, n] = int fn(n, w) conj(e_m(w)) dmu(w) on a planar rule."""
    rule = rule or basis.make_rule("planar-polar", (80, 96))
    w = rule.nodes
    E = basis.basis_matrix(N, w)
    cols = np.array([fn(n, w) for n in range(N)])  # (N, nodes)
    return (E.conj() * rule.weights) @ cols.T


class TestWeyl:
    def test_corner_entry(self):
        assert_allclose(op.weyl_matrix(1.0, 48).entries[0, 0], math.exp(-0.5), rtol=1e-15)

    def test_composition_law(self):
        z, w = 0.4 + 0.3j, -0.2 + 0.5j
        A = (op.weyl_matrix(z) @ op.weyl_matrix(w)).leading(20)
        B = op.weyl_matrix(z + w).leading(20)
        assert_allclose(A, np.exp(-1j * np.imag(z * np.conj(w))) * B, atol=1e-12)

    def test_leading_block_unitary(self):
        W = op.weyl_matrix(0.8 - 0.6j, 48)
        U = W.entries[:, :20]
        assert_allclose(U.conj().T @ U, np.eye(20), atol=1e-10)
        assert W.meta["column_mass_defect"] < 1e-6

    def test_laguerre_entries_match_recursion(self):
        z = 0.7 - 0.9j
        W = op.weyl_matrix(z, 24).entries
        for j in range(6):
            assert_allclose(op.weyl_column_closed(z, j, 24)[:, 0], W[:, j], atol=1e-13)

    def test_matches_quadrature(self):
        z = 0.5 + 0.2j
        # W_z e_n(w) = k_z(w) e_n(w - z)
        fn = lambda n, w: np.exp(w * np.conj(z) - 0.5 * abs(z) ** 2) * basis.monomial_basis_eval(n, w - z)
        assert_allclose(op.weyl_matrix(z, 10).entries, quad_matrix(fn, 10), atol=1e-12)


class TestWeightedComposition:
    @pytest.mark.parametrize("psi,a,lam", [
        (AF.polynomial([1.0, 0.5]), 0.3 - 0.2j, 0.7),
        (AF.kernel_multiple(1.0, 0.4j), 0.1, -1.0),
        (AF.polynomial([0.5, -0.3j, 0.2]), 0.2 + 0.4j, 0.4 + 0.3j),
    ])
    def test_matches_quadrature(self, psi, a, lam):
        fn = lambda n, w: psi(w) * basis.monomial_basis_eval(n, a + lam * w)
        assert_allclose(op.weighted_composition_matrix(psi, a, lam, 10).entries, quad_matrix(fn, 10), atol=1e-11)

    def test_lambda_outside_disc(self):
        with pytest.raises(PreconditionError, match="lambda"):
            op.weighted_composition_matrix(AF.polynomial([1.0]), 0, 1.2, 8)

    def test_zero_psi_rejected_by_build(self):
        with pytest.raises(PreconditionError, match="psi"):
            op.build(op.WeightedComposition(AF.polynomial([0.0])), 8)

    def test_entries_read_only(self):
        W = op.weighted_composition_matrix(AF.polynomial([1.0]), 0, 0.5, 4)
        with pytest.raises(ValueError):
            W.entries[0, 0] = 2.0


class TestVolterra:
    def test_z2_half_formula(self):
        N = 48
        V = op.volterra_matrix(AF.polynomial([0.0, 1.0]), 0, 1, N).entries
        n = np.arange(N - 2)
        E = np.zeros((N, N))
        E[n + 2, n] = np.sqrt((n + 1) / (n + 2))
        assert_allclose(V, E, atol=1e-14)

    @pytest.mark.parametrize("coeffs,a,lam", [([0.5, 1.0, 0.3], 0.0, 1.0), ([1.0, -2j], 0.3 + 0.1j, 0.6), ([0.0, 0.0, 1.0], -0.5, -0.5j)])
    def test_matches_polynomial_antiderivative(self, coeffs, a, lam):
        N = 10
        gp = Polynomial(coeffs)
        V = op.volterra_matrix(AF.polynomial(coeffs), a, lam, N).entries
        phi = Polynomial([a, lam])
        for n in range(N):
            integrand = (phi ** n) * gp / math.sqrt(math.factorial(n))
            c = integrand.integ().coef  # antiderivative with value 0 at 0
            col = np.zeros(N, dtype=complex)
            k = min(N, c.size)
            col[:k] = c[:k] * np.exp(0.5 * gammaln(np.arange(k) + 1))
            assert_allclose(V[:, n], col, atol=1e-12)

    def test_shift_norm(self):
        for k in range(5):
            assert_allclose(operator_norm(op.shift_A_k_matrix(k, 48)), 1 / math.sqrt(math.factorial(k)), rtol=1e-12)

    def test_volterra_is_shift_times_wco(self):
        gp = AF.polynomial([0.3, 1.0])
        V = op.volterra_matrix(gp, 0.2, 0.5, 16).entries
        W = op.weighted_composition_matrix(gp, 0.2, 0.5, 16).entries
        A1 = op.shift_A_k_matrix(1, 16).entries
        assert_allclose(V, A1 @ W, atol=1e-14)


class TestHausdorff:
    def test_norm_two_atoms(self):
        H = op.hausdorff_matrix(sy.MeasureSpec(((2.0, 1.0), (3.0, 1.0))), 48)
        assert_allclose(operator_norm(H), 5 / 6, rtol=1e-12)

    def test_delta_one_is_identity(self):
        assert_allclose(op.hausdorff_matrix(sy.MeasureSpec(((1.0, 1.0),)), 12).entries, np.eye(12))

    def test_diag_against_dilation(self):
        # H_{delta_x} f(z) = f(z/x)/x, so e_n maps to x^{-(n+1)} e_n
        H = op.hausdorff_matrix(sy.MeasureSpec(((2.5, 1.0),)), 10).entries
        fn = lambda n, w: basis.monomial_basis_eval(n, w / 2.5) / 2.5
        assert_allclose(H, quad_matrix(fn, 10), atol=1e-13)


class TestToeplitz:
    def test_constant(self):
        assert_allclose(op.toeplitz_matrix(sy.Constant(2 - 1j), 10).entries, (2 - 1j) * np.eye(10))

    def test_gaussian_radial_closed_form(self):
        T = op.toeplitz_matrix(sy.GaussianRadial(0.5, 2.0), 20).entries
        n = np.arange(20)
        assert_allclose(T, np.diag(2.0 / 1.5 ** (n + 1)), atol=1e-14)

    def test_radial_eigenvalues_quadrature(self):
        ev = op.toeplitz_radial_eigenvalues(lambda r: np.exp(-r ** 2), 30)
        assert_allclose(ev, 0.5 ** (np.arange(30) + 1), rtol=1e-12)

    def test_radial_step_eigenvalues(self):
        f = sy.RadialStep((1.0,), (1.0, 0.0))
        # mass of Gamma(n+1) below 1
        assert_allclose(op.toeplitz_radial_eigenvalues(f, 2).real, [1 - math.exp(-1), 1 - 2 * math.exp(-1)], rtol=1e-13)

    def test_angular_matches_planar_quadrature(self):
        T = op.toeplitz_matrix(sy.Angular(2), 8).entries
        f = sy.CallableSymbol(lambda z: sy.Angular(2)(z), 1.0)
        assert_allclose(T, op.toeplitz_matrix(f, 8).entries, atol=1e-10)

    def test_vertical_matches_planar_quadrature(self):
        f = sy.Vertical(sy.LineCosine(1.0, 1.3, 0.4, 0.2), -1)
        g = sy.CallableSymbol(lambda z: f(z), f.sup)
        assert_allclose(op.toeplitz_matrix(f, 8).entries, op.toeplitz_matrix(g, 8).entries, atol=1e-10)

    def test_plane_wave_is_weyl(self):
        z0 = 0.6 - 0.3j
        T = op.toeplitz_matrix(sy.PlaneWave(z0), 24).entries
        assert_allclose(T[:12, :12], op.weyl_matrix(z0, 24).entries[:12, :12], atol=1e-12)

    def test_sum_is_linear(self):
        f = sy.SymbolSum((sy.GaussianRadial(1.0, 1.0), sy.Angular(2)), (2.0, 1j))
        T = op.toeplitz_matrix(f, 10).entries
        ref = 2 * op.toeplitz_matrix(sy.GaussianRadial(1.0, 1.0), 10).entries + 1j * op.toeplitz_matrix(sy.Angular(2), 10).entries
        assert_allclose(T, ref, atol=1e-13)


class TestSingularIntegral:
    @pytest.mark.parametrize("m", [sy.sign_step(0.3), sy.LineCosine(1.0, 1.3, 0.4, 0.2), sy.LineGaussian(1.0, 0.2, 0.5)])
    def test_direct_matches_multiplier(self, m):
        D = op.singular_integral_matrix_direct(m, 6)
        M = op.singular_integral_matrix_multiplier(m, 6)
        assert_allclose(D.entries, M.entries, atol=1e-8)

    def test_constant_multiplier_is_identity(self):
        assert_allclose(op.singular_integral_matrix(sy.LineConstant(1.0), 12).entries, np.eye(12), atol=1e-12)

    def test_phi_closed_vs_quadrature(self):
        m = sy.sign_step(0.3)
        z = np.array([0.5 + 1j, -2 + 0.3j, 3.5 - 2j])
        assert_allclose(op.phi_from_multiplier(m, z, "closed"), op.phi_from_multiplier(m, z, "quadrature"), rtol=1e-10)

    def test_cosine_profile_phi(self):
        # m = cos 2x gives phi(u) = e^{-1/2} cosh(u)
        u = np.array([0.3, 1j, -0.5 + 0.7j])
        assert_allclose(op.phi_from_multiplier(sy.LineCosine(1.0, 2.0), u), math.exp(-0.5) * np.cosh(u), rtol=1e-13)

    def test_phi_quadrature_warns_far_out(self):
        with pytest.warns(ReliabilityWarning):
            op.phi_from_multiplier(sy.sign_step(), np.array([7.0 + 0j]), "quadrature")

    def test_norm_below_sup(self):
        S = op.singular_integral_matrix(sy.sign_step(0.3), 16)
        assert operator_norm(S) <= 1.0 + 1e-10


class TestToeplitzType:
    def test_j0_is_toeplitz(self):
        f = sy.GaussianRadial(0.3, 1.0)
        assert_allclose(op.toeplitz_type_matrix(f, 0, 12).entries, op.toeplitz_matrix(f, 12).entries, atol=1e-13)

    def test_constant_symbol(self):
        for j in range(3):
            assert_allclose(op.toeplitz_type_matrix(sy.Constant(1.0), j, 12).entries, np.eye(12), atol=1e-12)

    def test_index_range(self):
        with pytest.raises(PreconditionError):
            op.toeplitz_type_matrix(sy.Constant(1.0), 12, 12)


class TestBuild:
    def test_dispatch(self):
        specs = [op.Toeplitz(sy.Constant(1.0)), op.Weyl(0.5), op.Shift(2), op.Parity(),
                 op.Hausdorff(sy.MeasureSpec(((2.0, 1.0),))), op.Volterra(AF.polynomial([1.0]))]
        for s in specs:
            A = op.build(s, 8)
            assert A.dim == 8
            assert op.describe(s)

    def test_parity(self):
        assert_allclose(np.diag(op.build(op.Parity(), 5).entries), [1, -1, 1, -1, 1])

    def test_bad_N(self):
        with pytest.raises(PreconditionError):
            op.build(op.Parity(), 0)

    def test_algebra(self):
        A = op.weyl_matrix(0.3, 8)
        B = op.linear_combine([(2.0, A), (-1.0, A)])
        assert_allclose(B.entries, A.entries)
        assert_allclose((A @ A.H).entries, A.entries @ A.entries.conj().T)
        assert_allclose(op.rank_one(np.eye(3)[0], np.eye(3)[1]).entries, np.outer(np.eye(3)[0], np.eye(3)[1]))
