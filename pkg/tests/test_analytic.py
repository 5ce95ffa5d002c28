import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kerrscope import (FockConfig, ModelParams, NonlinearSign, PhotonDistribution,
                       ValidityWarning, linear_limit, log_cmm, observables, photon_distribution,
                       scale)
from kerrscope import lindblad
from kerrscope.analytic import _log_cmm_table, _log_factorials

from conftest import fig1a

pytestmark = pytest.mark.filterwarnings("ignore::kerrscope.ValidityWarning")


def mp_log_cmm(scaled, m, dps=60):
    """ln C_mm straight from complex Gamma functions at high precision."""
    with mpmath.workdps(dps):
        phi_conj = mpmath.mpc(scaled.phi.real, -scaled.phi.imag)
        z = 1j * phi_conj
        ratio = mpmath.gamma(1 + m + z) / (mpmath.factorial(m) * mpmath.gamma(1 + z))
        sig = abs(mpmath.mpc(scaled.sigma.real, scaled.sigma.imag))
        return float(-2 * m * mpmath.log(sig) + 2 * mpmath.log(abs(ratio)))


def test_log_cmm_m0():
    assert log_cmm(scale(fig1a(-1.0), 50), 0) == 0.0


def test_log_cmm_m1():
    s = scale(fig1a(-0.3), 50)
    expected = -2 * math.log(abs(s.sigma)) + math.log(abs(1 + 1j * s.phi.conjugate()) ** 2)
    assert log_cmm(s, 1) == pytest.approx(expected, rel=1e-14)


@pytest.mark.parametrize("delta", [-3.0, -1.0, -0.37, 0.5])
def test_log_cmm_against_high_precision_gamma(delta):
    s = scale(fig1a(delta), 50)
    table = _log_cmm_table(s, 50)
    assert np.all(np.isfinite(table))
    for m in range(0, 51, 5):
        assert table[m] == pytest.approx(mp_log_cmm(s, m), rel=1e-11, abs=1e-11)


def test_log_cmm_zero_drive():
    s = scale(fig1a(0.0, omega=0.0), 50)
    assert log_cmm(s, 0) == 0.0
    with pytest.raises(ValueError):
        log_cmm(s, 1)
    with pytest.raises(ValueError):
        log_cmm(s, -1)


def test_log_factorial_table_is_shared_read_only():
    t = _log_factorials(10)
    assert t is _log_factorials(10)
    assert not t.flags.writeable
    assert t[5] == pytest.approx(math.log(120))


@pytest.mark.parametrize("sign", list(NonlinearSign))
@pytest.mark.parametrize("delta", [-2.0, 0.0, 3.0])
def test_zero_drive_is_vacuum(sign, delta):
    dist = photon_distribution(scale(fig1a(delta, omega=0.0, sign=sign), 50))
    assert dist.q_max == 50
    assert dist.probs[0] == 1.0
    assert np.all(dist.probs[1:] == 0.0)


def test_single_photon_regime_near_minus_one():
    dist = photon_distribution(scale(fig1a(-1.0), 50))
    obs = observables(dist)
    # P = (0.27, 0.47, 0.25, 0.013, ...): one photon is the most likely outcome
    assert np.argmax(dist.probs) == 1
    assert dist.probs[0] + dist.probs[1] > 0.7
    assert dist.probs[3:].sum() < 0.02
    assert obs.g2 < 1.0


def test_distribution_matches_master_equation_at_minus_three():
    p = fig1a(-3.0)
    dist = photon_distribution(scale(p, 50))
    rho = lindblad.steady_state(p, FockConfig(dim=20))
    diag = np.real(np.diag(rho.entries))
    assert np.max(np.abs(dist.probs[:20] - diag)) <= 1e-2
    assert dist.probs[20:].sum() < 1e-10


def _unnormalized_and_z(scaled):
    # brute-force double sum with exact integer factorials in mpmath
    two_s = scaled.two_s
    c = [mpmath.e ** mp_log_cmm(scaled, m, dps=40) for m in range(two_s + 1)]
    f = mpmath.factorial
    num = [sum(c[m] * f(q + m) * f(two_s - q) / (f(q) * f(two_s - q - m))
               for m in range(two_s - q + 1)) for q in range(two_s + 1)]
    z = sum(c[m] * f(two_s + m + 1) * f(m) ** 2 / (f(two_s - m) * f(2 * m + 1))
            for m in range(two_s + 1))
    return num, z


def test_explicit_normalization_matches_direct_sum():
    s = scale(fig1a(-1.4), 12)
    num, z = _unnormalized_and_z(s)
    assert float(abs(sum(num) / z - 1)) < 1e-10
    probs = [float(x / z) for x in num]
    np.testing.assert_allclose(photon_distribution(s).probs, probs, rtol=1e-9, atol=1e-300)


@settings(max_examples=60, deadline=None)
@given(delta=st.floats(-7, 1), omega=st.floats(1e-4, 0.5), gamma=st.floats(1e-4, 1e-2),
       two_s=st.integers(1, 120), sign=st.sampled_from(NonlinearSign))
def test_normalized_and_nonnegative(delta, omega, gamma, two_s, sign):
    p = ModelParams.from_scaled(delta, 1.0, omega, gamma, two_s, sign)
    dist = photon_distribution(scale(p, two_s))
    assert np.all(dist.probs >= 0)
    assert abs(dist.probs.sum() - 1.0) <= 1e-12
    obs = observables(dist)
    assert 0 <= obs.mean_n <= dist.q_max


@pytest.mark.parametrize("two_s", [1, 2, 10, 50, 100, 150, 200])
def test_finite_up_to_two_hundred_excitations(two_s):
    for delta in (-6.0, -1.0, 0.0, 1.0):
        dist = photon_distribution(scale(fig1a(delta), two_s))
        assert np.all(np.isfinite(dist.probs))
        assert abs(dist.probs.sum() - 1.0) <= 1e-12


def test_tail_mass_small_in_validity_regime():
    dist = photon_distribution(scale(fig1a(-2.0), 50))
    assert dist.tail_mass() < 1e-10


def test_mirror_distributions():
    for d in np.linspace(-7, 1, 17):
        a = photon_distribution(scale(fig1a(d), 50)).probs
        r = photon_distribution(scale(fig1a(-d, sign=NonlinearSign.REPULSIVE), 50)).probs
        assert np.max(np.abs(a - r)) <= 1e-10


def test_validity_warning():
    with warnings.catch_warnings():
        warnings.simplefilter("error", ValidityWarning)
        photon_distribution(scale(fig1a(2.0), 50))
        with pytest.raises(ValidityWarning):
            photon_distribution(scale(fig1a(0.0, omega=1.5), 50))
        with pytest.raises(ValidityWarning):
            # <n> ~ 1 at the two-photon resonance, i.e. <n>/2s above 0.02
            photon_distribution(scale(fig1a(-1.0), 10))


def test_observables_vacuum():
    obs = observables(PhotonDistribution([1.0, 0.0, 0.0]))
    assert (obs.mean_n, obs.g2_unnorm, obs.g2) == (0.0, 0.0, None)


def test_observables_single_photon():
    obs = observables(PhotonDistribution([0.0, 1.0, 0.0, 0.0]))
    assert (obs.mean_n, obs.g2_unnorm, obs.g2) == (1.0, 0.0, 0.0)


def test_observables_poissonian():
    lam = 0.3
    q = np.arange(60)
    probs = np.exp(-lam + q * math.log(lam) - np.array([math.lgamma(k + 1) for k in q]))
    obs = observables(PhotonDistribution(probs))
    # direct-summation oracle: <n> = lam, <n(n-1)> = lam^2 for a Poissonian
    assert obs.mean_n == pytest.approx(lam, rel=1e-12)
    assert obs.g2 == pytest.approx(1.0, abs=1e-6)


def test_photon_distribution_rejects_bad_input():
    with pytest.raises(ValueError):
        PhotonDistribution([])
    with pytest.raises(ValueError):
        PhotonDistribution([[1.0]])


@pytest.mark.parametrize("eps,kappa,delta,mean_n", [
    (0.1, 0.1, 0.0, 1.0),
    (0.1, 0.1, 0.3, 0.1),
])
def test_linear_limit(eps, kappa, delta, mean_n):
    obs = linear_limit(ModelParams(delta=delta, alpha=1.0, epsilon=eps, kappa=kappa))
    assert obs.mean_n == pytest.approx(mean_n, rel=1e-14)
    assert obs.g2_unnorm == pytest.approx(mean_n**2, rel=1e-14)
    assert obs.g2 == 1.0


def test_linear_limit_zero_drive():
    obs = linear_limit(ModelParams(delta=0.2, alpha=1.0, epsilon=0.0, kappa=0.1))
    assert obs.mean_n == 0.0
    assert obs.g2 is None


def test_closed_form_converges_to_master_equation_as_one_over_two_s():
    # holding epsilon and kappa fixed, the closed form approaches the exact
    # steady state with an error that halves each time 2s doubles
    p = fig1a(-1.94)
    exact = lindblad.observables_full(lindblad.steady_state(p, FockConfig(dim=20)))[2].probs
    errs = [np.max(np.abs(photon_distribution(scale(p, ts)).probs[:20] - exact))
            for ts in (50, 100, 200, 400)]
    ratios = np.array(errs[:-1]) / np.array(errs[1:])
    np.testing.assert_allclose(ratios, 2.0, rtol=0.02)
