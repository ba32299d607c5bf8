import cmath
import math

import pytest

import sblab


@pytest.fixture(scope="module")
def params():
    return sblab.ModelParams.reference(0.1)


def test_dispersion_and_form_factor(params):
    assert sblab.omega(0.0, params) == pytest.approx(1.0)
    r_star = math.sqrt(params.e1**2 - params.m**2)
    assert sblab.omega(r_star, params) == pytest.approx(params.e1)
    assert sblab.form_factor(0.0, params) == pytest.approx(1.0)
    assert sblab.xi(1.0, params) == pytest.approx(1.0 / math.sqrt(2.0))
    assert params.delta_gap() == pytest.approx(0.5)


def test_invalid_params_raise():
    with pytest.raises(sblab.SblabError):
        sblab.ModelParams(e1=3.0, m=1.0, lambda_uv=2.0, g=0.1)


def test_level_shift_structure(params):
    ls = sblab.level_shift(params)
    assert ls.theta0 == pytest.approx(2.0857704038887094, rel=1e-12)
    assert ls.gamma_minus0.imag == pytest.approx(math.pi * ls.theta0, rel=1e-12)
    assert ls.gamma_plus0 == ls.gamma_minus0.conjugate()
    assert ls.gamma0_gs > 0.0


def test_resonance_and_survival(params):
    res = sblab.resonance(params)
    assert res.lambda1_tilde.imag < 0.0
    assert res.decay_rate == pytest.approx(0.13105281955863571, rel=1e-10)
    t = 1.0 / res.decay_rate
    a = sblab.survival_residue(t, params)
    assert abs(a) ** 2 == pytest.approx(math.exp(-1.0), rel=1e-10)
    q = sblab.survival_quadrature(t, params)
    assert abs(q - a) < 1e-7


def test_kernel_peak_near_on_shell_momentum():
    p = sblab.ModelParams.reference(0.05)
    rs = [1.8 + 0.01 * i for i in range(121)]
    ks = sblab.onshell_kernel_profile(rs, p)
    peak = max(range(len(rs)), key=lambda i: abs(ks[i]))
    assert rs[peak] == pytest.approx(2.2913, abs=0.05)


def test_oracle_ground_energy_matches_perturbation_theory():
    p = sblab.ModelParams.reference(0.05)
    lam0 = sblab.oracle_ground_energy(p, modes=40, n_max=2, k_max=6.0)
    predicted = -p.g**2 * sblab.gamma0_groundshift(p)
    assert lam0 == pytest.approx(predicted, abs=5e-5)
    assert lam0 <= 0.0


def test_oracle_survival_decays(params):
    times = [0.0, 5.0, 10.0]
    amps = sblab.oracle_survival(params, times, modes=120, n_max=1, k_max=6.0)
    assert abs(amps[0]) == pytest.approx(1.0, abs=1e-10)
    assert abs(amps[1]) < 1.0
    assert abs(amps[2]) < abs(amps[1])


def test_transition_amplitude_resonant_sign(params):
    t = sblab.transition_lorentzian(2.0, 2.6, params)
    assert t.real > 0.0
