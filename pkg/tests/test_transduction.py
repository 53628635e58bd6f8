import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import expm

from bpqm_jdr.channel import helstrom_binary_error
from bpqm_jdr.errors import DegenerateOutcomeError
from bpqm_jdr.transduction import (
    DegenerateLimitWarning,
    TransductionConfig,
    fock_coefficient,
    herald_prob_ipp,
    herald_probability,
    heralded_outcome,
    optimal_phi_bound,
    optimize_phi,
    overall_error_n0,
    phi_inner_product_preserving,
    pnr_receiver_error,
    sigma_at_half_pi,
    sigma_closed_form,
)

FOCK_CUTOFF = 40


def jc_heralded(beta, phi, n, sign):
    """Brute-force oracle: evolve |sign*beta> (x) |g> under the resonant JC coupling, then count n photons.

    Basis index = 2 * photon + atom, atom 0 = ground, 1 = excited.
    """
    dim = 2 * FOCK_CUTOFF
    h = np.zeros((dim, dim))
    for k in range(1, FOCK_CUTOFF):
        # a sigma_+ : |k, g> -> sqrt(k) |k-1, e>
        h[2 * (k - 1) + 1, 2 * k] = math.sqrt(k)
    h = h + h.T
    field = np.array([math.exp(-beta**2 / 2) * (sign * beta) ** k / math.sqrt(math.factorial(k)) for k in range(FOCK_CUTOFF)])
    psi = np.zeros(dim, dtype=complex)
    psi[0::2] = field
    out = expm(-1j * phi * h) @ psi
    atom = out[2 * n: 2 * n + 2]
    return atom, float(np.vdot(atom, atom).real)


class TestFock:
    def test_vacuum(self):
        assert fock_coefficient(0.0, 0) == 1.0

    @given(st.floats(min_value=0, max_value=5))
    def test_n0(self, beta):
        assert fock_coefficient(beta, 0) == pytest.approx(math.exp(-beta * beta / 2), rel=1e-14)

    def test_value(self):
        assert fock_coefficient(1.0, 2) == pytest.approx(0.428882, abs=1e-6)
        assert fock_coefficient(1.0, 3, -1) == pytest.approx(-math.exp(-0.5) / math.sqrt(6), rel=1e-14)

    def test_large_n_no_overflow(self):
        assert fock_coefficient(2.0, 400) == 0.0 or math.isfinite(fock_coefficient(2.0, 400))


class TestHeraldedOutcome:
    @pytest.mark.parametrize("beta, phi", [(0.1, math.pi / 2), (0.5, 1.0), (1.2, 2.5), (0.8, 0.3)])
    @pytest.mark.parametrize("n", [0, 1, 2, 5])
    def test_matches_jc_evolution(self, beta, phi, n):
        out = heralded_outcome(beta, phi, n)
        for sign, state in ((1, out.state_plus), (-1, out.state_minus)):
            atom, p = jc_heralded(beta, phi, n, sign)
            assert p == pytest.approx(out.p_n, abs=1e-12)
            assert abs(np.vdot(atom / math.sqrt(p), state)) == pytest.approx(1.0, abs=1e-10)
        assert abs(out.overlap()) == pytest.approx(abs(out.sigma_n), abs=1e-10)
        # the amplitude inner product carries an extra (-1)^n
        assert out.overlap().real == pytest.approx((-1) ** n * out.sigma_n, abs=1e-10)
        assert np.linalg.norm(out.state_plus) == pytest.approx(1.0, abs=1e-12)

    def test_no_interaction(self):
        for n in range(5):
            out = heralded_outcome(0.7, 0.0, n)
            assert out.sigma_n == pytest.approx(1.0)
            assert out.p_n == pytest.approx(math.exp(-0.49) * 0.49**n / math.factorial(n), rel=1e-12)

    def test_half_pi_point(self):
        out = heralded_outcome(0.1, math.pi / 2, 0)
        assert out.p_n == pytest.approx(0.999950, abs=1e-6)
        assert out.sigma_n == pytest.approx(0.980198, abs=1e-6)
        assert out.sigma_n == pytest.approx(sigma_at_half_pi(0.1), abs=1e-14)

    @given(st.floats(0, 2), st.floats(0, math.pi))
    def test_n0_probability_formula(self, beta, phi):
        expected = math.exp(-beta * beta) * (1 + beta * beta * math.sin(phi) ** 2)
        assert herald_probability(beta, phi, 0) == pytest.approx(expected, rel=1e-12, abs=1e-300)

    @settings(max_examples=30)
    @given(st.floats(0, 2), st.floats(0, math.pi))
    def test_normalization(self, beta, phi):
        assert sum(herald_probability(beta, phi, n) for n in range(51)) == pytest.approx(1.0, abs=1e-10)

    def test_degenerate_outcome(self):
        with pytest.raises(DegenerateOutcomeError):
            heralded_outcome(0.0, 1.0, 1)

    def test_real_convention(self):
        plus, minus = heralded_outcome(0.4, phi_inner_product_preserving(0.4), 0).real_convention()
        assert np.allclose(plus.imag, 0) and np.allclose(minus.imag, 0)
        assert plus[0] == pytest.approx(minus[0]) and plus[1] == pytest.approx(-minus[1])

    def test_closed_form_sigma_vs_amplitudes(self):
        for n in range(11):
            out = heralded_outcome(0.9, 1.3, n)
            assert sigma_closed_form(0.9, 1.3, n) == pytest.approx((-1) ** n * out.overlap().real, abs=1e-10)


class TestPulseArea:
    def test_small_beta_limit(self):
        assert phi_inner_product_preserving(1e-4) == pytest.approx(math.pi / 2, abs=1e-6)

    def test_zero_beta_warns(self):
        with pytest.warns(DegenerateLimitWarning):
            assert phi_inner_product_preserving(0.0) == math.pi / 2

    def test_value(self):
        assert phi_inner_product_preserving(0.1) == pytest.approx(1.5650, abs=1e-3)

    @given(st.floats(1e-3, 3.0))
    def test_preserves_overlap(self, beta):
        out = heralded_outcome(beta, phi_inner_product_preserving(beta), 0)
        assert out.sigma_n == pytest.approx(math.exp(-2 * beta * beta), abs=1e-10)

    def test_ipp_probability(self):
        assert herald_prob_ipp(0.0) == 1.0
        assert herald_prob_ipp(0.1) == pytest.approx(0.999950, abs=1e-6)
        assert herald_prob_ipp(1.0) == pytest.approx(0.648054, abs=1e-6)

    @given(st.floats(1e-3, 3.0))
    def test_ipp_probability_matches_general_formula(self, beta):
        phi = phi_inner_product_preserving(beta)
        assert herald_prob_ipp(beta) == pytest.approx(herald_probability(beta, phi, 0), rel=1e-12)


class TestOverallError:
    def test_zero_beta(self):
        assert overall_error_n0(0.0, 1.0) == pytest.approx(0.5)

    def test_half_pi_value(self):
        assert overall_error_n0(0.1, math.pi / 2) == pytest.approx(0.401020, abs=1e-5)

    @given(st.floats(1e-3, 2.0))
    def test_ipp_identity(self, beta):
        phi = phi_inner_product_preserving(beta)
        expected = 1 - herald_prob_ipp(beta) * (1 - helstrom_binary_error(math.exp(-2 * beta * beta)))
        assert overall_error_n0(beta, phi) == pytest.approx(expected, abs=1e-12)

    def test_bound(self):
        phi, err = optimal_phi_bound(1.0)
        assert phi == math.pi / 2
        assert err == pytest.approx(0.264241, abs=1e-6)
        for beta in (0.05, 0.3, 1.0, 1.7):
            assert optimal_phi_bound(beta)[1] == pytest.approx(overall_error_n0(beta, math.pi / 2), abs=1e-12)

    @pytest.mark.parametrize("beta", [0.05, 0.1, 0.5, 1.0])
    def test_numeric_optimum_is_half_pi(self, beta):
        phi, err = optimize_phi(beta, 0)
        assert phi == pytest.approx(math.pi / 2, abs=1e-6)
        assert err == pytest.approx(optimal_phi_bound(beta)[1], abs=1e-12)

    def test_half_pi_overlap_below_optical_overlap(self):
        # the gap is about 2 beta^6 / 3, so resolve it in extended precision
        with mp.workdps(60):
            for b in np.linspace(1e-3, 2.0, 200):
                b = mp.mpf(float(b))
                assert mp.exp(-2 * b * b) - (1 - b * b) / (1 + b * b) > 0
        betas = np.linspace(0.05, 2.0, 200)
        assert all(math.exp(-2 * b * b) > sigma_at_half_pi(b) for b in betas)
        assert sigma_at_half_pi(0.0) == math.exp(0.0)


class TestPNR:
    @given(st.floats(0, 2), st.floats(0, math.pi))
    def test_single_term(self, beta, phi):
        assert pnr_receiver_error(beta, phi, 0) == pytest.approx(overall_error_n0(beta, phi), abs=1e-12)

    def test_against_amplitude_oracle(self):
        beta, phi = 0.5, math.pi / 2
        success = 0.0
        for n in range(6):
            a, pa = jc_heralded(beta, phi, n, 1)
            b, pb = jc_heralded(beta, phi, n, -1)
            ovl = abs(np.vdot(a, b)) / math.sqrt(pa * pb)
            success += 0.5 * pa * (1 + math.sqrt(1 - ovl**2))
        assert pnr_receiver_error(beta, phi, 5) == pytest.approx(1 - success, abs=1e-10)

    def test_untruncated_limit(self):
        beta, phi = 1.0, 1.1
        success = 0.0
        for n in range(51):
            out = heralded_outcome(beta, phi, n)
            success += 0.5 * out.p_n * (1 + math.sqrt(1 - out.sigma_n**2))
        assert pnr_receiver_error(beta, phi, 50) == pytest.approx(1 - success, abs=1e-12)

    @pytest.mark.parametrize("beta", [0.1, 0.4, 0.8, 1.0])
    def test_optimum_monotone_and_bounded(self, beta):
        errs = [optimize_phi(beta, k)[1] for k in range(4)]
        assert all(b <= a + 1e-12 for a, b in zip(errs, errs[1:]))
        assert errs[-1] >= helstrom_binary_error(math.exp(-2 * beta * beta)) - 1e-12

    def test_config_validation(self):
        TransductionConfig(0.5, 1.0, 3)
        with pytest.raises(ValueError):
            TransductionConfig(-0.1, 1.0)
        with pytest.raises(ValueError):
            TransductionConfig(0.1, 4.0)
        with pytest.raises(ValueError):
            TransductionConfig(0.1, 1.0, -1)
