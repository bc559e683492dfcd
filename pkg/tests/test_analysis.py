import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from fockbench import analysis as an
from fockbench import operators as op
from fockbench import symbols as sy
from fockbench import transforms as tr
from fockbench.errors import PreconditionError, ReliabilityWarning

AF = sy.AnalyticFunction


class TestReports:
    def test_fails_needs_witness(self):
        with pytest.raises(ValueError):
            an.PredicateReport("x", "fails")

    def test_unknown_verdict(self):
        with pytest.raises(ValueError):
            an.PredicateReport("x", "maybe")

    def test_value_lookup(self):
        r = an.PredicateReport("x", "holds", None, [("a", 1)])
        assert r.holds and r.value("a") == 1 and r.value("b", 5) == 5

    def test_decay_profile_validation(self):
        with pytest.raises(ValueError):
            an.DecayProfile((2.0, 1.0), (0.1, 0.2))


class TestWcoPredicates:
    def test_M_z_closed_form(self):
        z = np.array([0.5, 1 + 2j])
        psi = AF.polynomial([1.0, 2.0])
        ref = np.abs(1 + 2 * z) ** 2 * np.exp(np.abs(0.1 + 0.5 * z) ** 2 - np.abs(z) ** 2)
        assert_allclose(an.M_z_quantity(psi, 0.1, 0.5, z), ref, rtol=1e-13)

    def test_contraction_is_compact(self):
        p = an.wco_predicates(AF.polynomial([1.0, 1.0]), 0.2, 0.5)
        assert p.bounded.holds and p.compact.holds

    def test_weyl_case_bounded_not_compact(self):
        a = 0.4 - 0.2j
        p = an.wco_predicates(AF.kernel_multiple(math.exp(-abs(a) ** 2 / 2), -a), a, 1.0)
        assert p.bounded.holds
        assert p.compact.verdict == "fails" and p.compact.witness is not None

    def test_unbounded(self):
        p = an.wco_predicates(AF.polynomial([0.0, 1.0]), 0, 1.0)
        assert p.bounded.verdict == "fails"
        assert p.compact.verdict == "fails"
        z, val = p.bounded.witness
        assert abs(z) > 0 and val > 1

    @pytest.mark.filterwarnings("ignore::RuntimeWarning")
    def test_overflow_is_infinite(self):
        assert an.M_z_quantity(AF.polynomial([1.0]), 0, 1.0, 1e4 * (1 + 1j)) == 1.0
        assert math.isinf(an.M_z_quantity(AF.kernel_multiple(1.0, 40.0), 0, 1.0, 30.0))


class TestVolterraPredicates:
    def test_z2_half_bounded_not_compact(self):
        p = an.volterra_predicates(AF.polynomial([0.0, 1.0]), 0, 1.0)
        assert p.bounded.holds and p.compact.verdict == "fails"

    def test_contracted_is_compact(self):
        p = an.volterra_predicates(AF.polynomial([1.0]), 0, 0.5)
        assert p.compact.holds

    def test_unbounded(self):
        assert an.volterra_predicates(AF.polynomial([0.0, 0.0, 1.0]), 0, 1.0).bounded.verdict == "fails"

    def test_berezin_series(self):
        gp = AF.polynomial([0.3, 1.0, -0.2j])
        a, lam = 0.1 + 0.2j, 0.5
        z = np.array([0.2, -0.4 + 0.3j, 0.8j])
        V = op.volterra_matrix(gp, a, lam, 48)
        assert_allclose(an.volterra_berezin_series(gp, a, lam, z, K=30), tr.berezin(V, z), atol=1e-11)


class TestHausdorff:
    def test_predicates(self):
        p = an.hausdorff_predicates(sy.MeasureSpec(((2.0, 1.0), (3.0, -0.5))))
        assert p.bounded.holds and p.compact.holds
        q = an.hausdorff_predicates(sy.MeasureSpec(((1.0, 0.5), (2.0, 1.0))))
        assert q.bounded.holds and q.compact.verdict == "fails"

    def test_symbol_eigenvalues(self):
        rho = sy.MeasureSpec(((2.0, 1.0), (3.5, 0.25)))
        assert an.hausdorff_symbol_check(rho, 40) < 1e-12
        n = np.arange(10)
        f = an.hausdorff_toeplitz_symbol(rho)
        T = op.toeplitz_matrix(f, 10).entries
        assert_allclose(np.diag(T), 2.0 ** -(n + 1) + 0.25 * 3.5 ** -(n + 1), atol=1e-13)

    def test_symbol_needs_atoms(self):
        with pytest.raises(PreconditionError):
            an.hausdorff_toeplitz_symbol(sy.MeasureSpec((), sy.Density("power", 1.0, 2.0)))


class TestDistance:
    def test_constant_M_z(self):
        a = 0.6 + 0.3j
        d = an.distance_lower_bound(AF.kernel_multiple(1.0, a), a, -1.0)
        assert_allclose(d.limsup, math.exp(abs(a) ** 2), rtol=1e-12)
        assert_allclose(d.value, math.exp(abs(a) ** 2 / 2), rtol=1e-6)
        assert d.stable

    def test_preconditions(self):
        psi = AF.polynomial([1.0])
        with pytest.raises(PreconditionError):
            an.distance_lower_bound(psi, 0, 1.0)
        with pytest.raises(PreconditionError):
            an.distance_lower_bound(psi, 0, 1.5)
        with pytest.raises(PreconditionError):
            an.distance_lower_bound(AF.polynomial([0.0]), 0, -1.0)

    def test_compact_case_is_zero(self):
        d = an.distance_lower_bound(AF.polynomial([1.0]), 0.0, 0.3)
        assert d.value < 1e-6 and d.stable


class TestWcoSymbol:
    @pytest.mark.parametrize("psi,a,lam", [(AF.polynomial([1.0, 0.3]), 0.2, 0.6), (AF.polynomial([0.5j]), -0.1 + 0.1j, 0.8 + 0.2j)])
    def test_toeplitz_reproduces_operator(self, psi, a, lam):
        f, rep = an.wco_toeplitz_symbol(psi, a, lam)
        assert rep.holds
        T = op.toeplitz_matrix(f, 24)
        W = op.weighted_composition_matrix(psi, a, lam, 24)
        assert_allclose(T.leading(12), W.leading(12), atol=1e-9)

    def test_heat_closed_form(self):
        psi, a, lam = AF.polynomial([1.0, -0.4]), 0.3j, 0.7
        f, _ = an.wco_toeplitz_symbol(psi, a, lam)
        w = np.array([0.1, 0.5 - 0.5j])
        for t in (0.5, 1.0, 2.0):
            assert_allclose(tr.heat_transform(f, t, w), an.wco_heat_closed_form(psi, a, lam, t - 1, w), atol=1e-11)

    def test_lambda_range(self):
        with pytest.raises(PreconditionError):
            an.wco_toeplitz_symbol(AF.polynomial([1.0]), 0, -0.5)
        with pytest.raises(PreconditionError):
            an.wco_toeplitz_symbol(AF.polynomial([1.0]), 0, 0.0)

    def test_unbounded_symbol_warns(self):
        with pytest.warns(ReliabilityWarning):
            _, rep = an.wco_toeplitz_symbol(AF.polynomial([0.0, 0.0, 1.0]), 0, 1.0)
        assert rep.verdict == "fails"


class TestSingular:
    def test_gamma_constant(self):
        assert_allclose(an.singular_gamma_a(sy.LineConstant(1.0), np.array([0.0, 2.0])), [1.0, 1.0], atol=1e-13)

    def test_gamma_cosine(self):
        k = 1.7
        x = np.array([-0.4, 0.0, 1.1])
        ref = math.exp(-k * k / 8) * np.cos(k * x / math.sqrt(2))
        assert_allclose(an.singular_gamma_a(sy.LineCosine(1.0, k), x), ref, atol=1e-13)

    def test_vertical_sign(self):
        rec = an.vertical_toeplitz_from_m0(sy.sign_step(0.3), N=24)
        assert rec.sign == -1 and rec.decisive
        assert dict(rec.errors)[-1] < 1e-8


class TestIndex:
    def test_volterra_minus_two(self):
        est = an.fredholm_index_estimate(lambda N: op.volterra_matrix(AF.polynomial([0.0, 1.0]), 0, 1.0, N))
        assert est.stable and est.index == -2

    def test_unitary_zero(self):
        est = an.fredholm_index_estimate(op.weyl_matrix(0.5, 48))
        assert est.index == 0

    def test_shift_adjoint_plus_one(self):
        est = an.fredholm_index_estimate(lambda N: op.adjoint(op.shift_A_k_matrix(1, N)), threshold=1e-6)
        assert est.index in (None, 1)

    def test_dims(self):
        with pytest.raises(PreconditionError):
            an.fredholm_index_estimate(op.identity(48), dims=(24, 36))


class TestLocalization:
    def test_weyl(self):
        z0 = 0.5 + 0.5j
        g = np.linspace(-1.5, 1.5, 5)
        grid = (g[:, None] + 1j * g[None, :]).ravel()
        rep = an.localization_check(op.weyl_matrix(z0, 48), an.weyl_domination_profile(z0), grid)
        assert rep.holds

    def test_hausdorff(self):
        rho = sy.MeasureSpec(((2.0, 1.0), (3.0, 0.5)))
        g = np.linspace(-1.5, 1.5, 5)
        grid = (g[:, None] + 1j * g[None, :]).ravel()
        rep = an.localization_check(op.hausdorff_matrix(rho, 48), an.hausdorff_domination_profile(rho), grid)
        assert rep.holds

    def test_too_small_profile_fails(self):
        rep = an.localization_check(op.identity(48), lambda r: 0.5 * np.exp(-np.asarray(r) ** 2), np.array([0.0, 0.5]))
        assert rep.verdict == "fails" and len(rep.witness) == 4


class TestDecay:
    def test_hausdorff_profile(self):
        prof = an.berezin_decay_profile(op.hausdorff_matrix(sy.MeasureSpec(((2.0, 1.0),)), 48), (1.0, 2.0, 3.0))
        r = np.array(prof.radii)
        assert_allclose(prof.sup_values, 0.5 * np.exp(-r ** 2 / 2), rtol=1e-10)

    def test_truncated(self):
        with pytest.warns(ReliabilityWarning):
            prof = an.berezin_decay_profile(op.identity(16), (1.0, 3.0))
        assert prof.truncated and prof.radii == (1.0,)

    def test_slow_oscillation(self):
        n = np.arange(200)
        # |cos(sqrt m / 10) - cos(sqrt n / 10)| <= |sqrt m - sqrt n| / 10
        assert an.slow_oscillation_check(np.cos(np.sqrt(n) / 10), 0.11, 1.0, 10).holds
        rep = an.slow_oscillation_check((-1.0) ** n, 0.05, 1.0, 10)
        assert rep.verdict == "fails"
