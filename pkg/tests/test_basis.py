import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose
from scipy.special import eval_hermite, eval_laguerre, gammaincc

from fockbench import basis
from fockbench.errors import PreconditionError

points = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)


class TestMonomials:
    def test_values_match_definition(self):
        z = np.array([0.3 - 1.1j, 2.0 + 0.5j, 0j])
        for n in range(12):
            assert_allclose(basis.monomial_basis_eval(n, z), z ** n / math.sqrt(math.factorial(n)), rtol=1e-13, atol=1e-300)

    def test_basis_matrix_rows(self):
        z = np.array([0.5 + 0.5j, -1.0])
        E = basis.basis_matrix(6, z)
        assert E.shape == (6, 2)
        for n in range(6):
            assert_allclose(E[n], basis.monomial_basis_eval(n, z), rtol=1e-14)

    def test_negative_index(self):
        with pytest.raises(PreconditionError):
            basis.monomial_basis_eval(-1, 1.0)

    @given(points, points)
    @settings(max_examples=30, deadline=None)
    def test_reproducing_kernel_expansion(self, w, z):
        E = basis.basis_matrix(90, np.array([w, z]))
        # terms reach exp(|w||z|) before cancelling, so the error scales with that
        scale = math.exp(abs(w) * abs(z))
        assert_allclose(np.sum(E[:, 0] * np.conj(E[:, 1])), basis.kernel_eval(w, z), rtol=1e-12, atol=1e-13 * scale)


class TestKernelCoefficients:
    def test_unit_norm_up_to_tail(self):
        # sum_{n<N} e^{-r^2} r^{2n}/n! is the regularized upper incomplete gamma Q(N, r^2)
        for z, N in [(0.7 + 0.2j, 10), (2.0j, 24), (3.0, 48)]:
            c = basis.normalized_kernel_coeffs(z, N)
            assert_allclose(np.sum(np.abs(c) ** 2), gammaincc(N, abs(z) ** 2), rtol=1e-12)

    def test_origin(self):
        c = basis.normalized_kernel_coeffs(0, 5)
        assert_allclose(c, [1, 0, 0, 0, 0])

    def test_matrix_columns(self):
        z = np.array([0.3 + 0.4j, -1.2])
        C = basis.kernel_coeff_matrix(z, 8)
        for j in range(2):
            assert_allclose(C[:, j], basis.normalized_kernel_coeffs(z[j], 8), rtol=1e-14)


class TestSpecialFunctions:
    def test_laguerre_against_scipy(self):
        x = np.linspace(0, 6, 13)
        for j in range(10):
            assert_allclose(basis.laguerre_poly(j, x), eval_laguerre(j, x), rtol=1e-11, atol=1e-12)

    def test_hermite_functions_against_closed_form(self):
        x = np.linspace(-3, 3, 11)
        H = basis.hermite_functions(8, x)
        for n in range(8):
            ref = (2 / math.pi) ** 0.25 / math.sqrt(2.0 ** n * math.factorial(n)) * eval_hermite(n, math.sqrt(2) * x) * np.exp(-x * x)
            assert_allclose(H[n], ref, rtol=1e-12, atol=1e-14)

    def test_hermite_orthonormal(self):
        x, w = basis.piecewise_line_rule((), 0.0, 10.0, 200)
        H = basis.hermite_functions(20, x)
        assert_allclose((H * w) @ H.T, np.eye(20), atol=1e-12)


class TestQuadrature:
    def test_planar_moments(self):
        rule = basis.make_rule("planar-polar", (40, 64))
        for n in range(8):
            for m in range(8):
                got = basis.integrate_gaussian(lambda z: z ** n * np.conj(z) ** m, rule)
                assert_allclose(got, math.factorial(n) if n == m else 0.0, atol=1e-10 * math.factorial(n))

    def test_default_rule_sizes(self):
        rule = basis.default_planar_rule()
        assert rule.sizes == (200, 256)
        assert len(rule) == 200 * 256

    def test_line_and_angular_rules(self):
        h = basis.make_rule("line-hermite", (30,))
        assert_allclose(np.sum(h.weights), math.sqrt(math.pi), rtol=1e-14)
        a = basis.make_rule("angular-uniform", (16,))
        assert_allclose(np.sum(a.weights * np.exp(3j * a.nodes)), 0.0, atol=1e-14)
        r = basis.make_rule("radial-laguerre", (20,))
        assert_allclose(np.sum(r.weights * r.nodes ** 3), 6.0, rtol=1e-12)

    def test_lebesgue_weights(self):
        rule = basis.make_rule("planar-polar", (60, 32))
        # (1/pi) int exp(-2|z|^2) dz = 1/2
        got = np.sum(rule.lebesgue_weights() * np.exp(-2 * np.abs(rule.nodes) ** 2))
        assert_allclose(got, 0.5, rtol=1e-12)

    def test_rule_is_read_only(self):
        rule = basis.make_rule("line-hermite", (4,))
        with pytest.raises(ValueError):
            rule.nodes[0] = 1.0

    @pytest.mark.parametrize("kind,sizes", [("nope", (3,)), ("planar-polar", (3,)), ("line-hermite", (0,))])
    def test_bad_rules(self, kind, sizes):
        with pytest.raises(PreconditionError):
            basis.make_rule(kind, sizes)

    def test_integrate_needs_planar(self):
        with pytest.raises(PreconditionError):
            basis.integrate_gaussian(lambda z: 1.0, basis.make_rule("line-hermite", (4,)))

    def test_piecewise_rule_polynomial_exact(self):
        x, w = basis.piecewise_line_rule((-1.0, 0.5), 0.0, 2.0, 8)
        assert_allclose(np.sum(w * x ** 6), 2 * 2.0 ** 7 / 7, rtol=1e-13)


def test_as_point():
    assert basis.as_point([1.0, -2.0]) == 1 - 2j
    with pytest.raises(PreconditionError):
        basis.as_point(complex("nan"))
