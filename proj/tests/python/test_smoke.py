import math
import pathlib

import pytest

import specagg

DATA = pathlib.Path(__file__).resolve().parents[1] / "data"


def reference_channel(m_bands=13):
    c = specagg.ChannelParams()
    c.p_bar_p = 0.9
    c.snr_s = 1.0
    c.spectral_eff_r = 2.0
    c.tau_b_frac = 0.01
    c.m_bands = m_bands
    c.k_antennas = 8
    return c


def test_channel_values():
    c = reference_channel(1)
    assert specagg.su_effective_rate(c, 1) == pytest.approx(2.0202020202020203, abs=1e-15)
    assert specagg.su_success_prob(c, 1) == pytest.approx(0.04705651763492641, abs=1e-15)
    c.tau_b_frac = 1.0
    assert math.isinf(specagg.su_effective_rate(c, 1))
    assert specagg.su_success_prob(c, 1) == 0.0


def test_reference_analysis_and_optimizer():
    c = reference_channel()
    s = specagg.SensingParams(0.05, 0.05)
    t = specagg.TrafficParams(0.5)
    r = specagg.analyze(c, s, t)
    assert r.mu_p == pytest.approx(0.855, abs=1e-15)
    assert r.mu_s == pytest.approx(0.475888323349973, abs=1e-12)
    assert r.secondary_stable_at(0.4)

    c.m_bands = 30
    opt = specagg.optimize_sensed_bands(c, s, t)
    assert len(opt.profile) == 30
    assert opt.profile[0] == (1, pytest.approx(0.01856118195599875, abs=1e-12))
    assert opt.mu_s_opt == max(mu for _, mu in opt.profile)


def test_oracle_matches_closed_form():
    c = reference_channel(4)
    c.power_mode = specagg.PowerMode.LIMITED
    s = specagg.SensingParams(0.3, 0.05)
    t = specagg.TrafficParams(0.3)
    assert specagg.mu_s_oracle(c, s, t) == pytest.approx(
        specagg.secondary_service_rate(c, s, t), abs=1e-12)


def test_unstable_primary_carries_rates():
    c = reference_channel()
    with pytest.raises(specagg.UnstablePrimary) as info:
        specagg.analyze(c, specagg.SensingParams(0.05, 0.05), specagg.TrafficParams(0.9))
    assert info.value.lambda_p == 0.9
    assert info.value.mu_p == pytest.approx(0.855)


def test_bad_parameters_raise_value_error():
    with pytest.raises(ValueError):
        specagg.SensingParams(1.5, 0.0).validate()
    with pytest.raises(specagg.ConfigError):
        specagg.parse_config('{"m_bands": 2}')


def test_load_config_and_simulate():
    sc = specagg.load_config(DATA / "tiny.json")
    cfg = specagg.SimConfig()
    cfg.scenario = sc
    cfg.slots = 20000
    cfg.seed = 3
    a = specagg.simulate(cfg)
    b = specagg.simulate(cfg)
    assert a.empirical_mu_s == b.empirical_mu_s
    assert a.slots == 20000 and a.warmup == 2000
    mu_s = specagg.secondary_service_rate(sc.channel, sc.sensing, sc.traffic)
    assert abs(a.empirical_mu_s - mu_s) < 5 * a.std_err_mu_s + 1e-3

    sweep = specagg.load_config(DATA / "tiny_sweep.json")
    assert sweep.axis == "lambda_p"
    assert sweep.values == [0.0, 0.3, 0.7]
