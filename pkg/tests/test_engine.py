import math
from dataclasses import replace

import numpy as np
import pytest

from wlancoex.analytic import ber_bpsk_awgn, ber_bpsk_mimo_semianalytic, ber_bpsk_rayleigh
from wlancoex.channel import InterferenceModel, Scenario
from wlancoex.engine import (
    LinkConfig, StopRule, compare_scenarios, default_config, measure_es_eb_offset, run_point, sweep,
)
from wlancoex.profiles import es_eb_offset_db, profile_for

MILLION = StopRule(min_bit_errors=1, max_bits=2_000_000, min_bits=1_000_000)
SMALL = StopRule(min_bit_errors=1, max_bits=50_000, min_bits=50_000)


def binomial_sigma(p, n):
    return math.sqrt(p * (1 - p) / n)


def test_awgn_zero_db_matches_formula():
    rec = run_point(default_config("g", channel_kind="awgn_identity", stop_rule=MILLION), 0.0)
    assert rec.bits_simulated >= 1_000_000
    p = 0.0786496035251426
    assert abs(rec.ber - p) < 3 * binomial_sigma(p, rec.bits_simulated)


@pytest.mark.parametrize("std", ["g", "n"])
@pytest.mark.parametrize("kind", ["awgn_identity", "rayleigh"])
def test_noiseless_link_is_error_free(std, kind):
    rec = run_point(default_config(std, channel_kind=kind, stop_rule=SMALL), math.inf)
    assert rec.bit_errors == 0 and rec.per == 0
    assert rec.throughput_bps == profile_for(std).phy_bit_rate


def test_determinism():
    cfg = default_config("n", stop_rule=SMALL, master_seed=11,
                         interference=InterferenceModel(mode="poisson", mean_interarrival_bits=120.0))
    assert run_point(cfg, 4.0, 3) == run_point(cfg, 4.0, 3)
    assert run_point(cfg, 4.0, 3) != run_point(cfg, 4.0, 4)


def test_single_point_sweep_equals_run_point():
    cfg = default_config("g", stop_rule=SMALL, master_seed=5)
    assert sweep(cfg, [3.0]) == [run_point(cfg, 3.0)]


def test_parallel_equals_serial():
    cfg = default_config("g", stop_rule=SMALL, master_seed=2,
                         interference=InterferenceModel(mode="periodic", period_bits=24))
    assert sweep(cfg, [0, 4, 8], workers=2) == sweep(cfg, [0, 4, 8], workers=1)


def test_rayleigh_siso_sweep_decreasing():
    cfg = default_config("g", channel_kind="rayleigh", stop_rule=MILLION, master_seed=3)
    recs = sweep(cfg, range(0, 11, 2))
    bers = [r.ber for r in recs]
    assert all(a > b for a, b in zip(bers, bers[1:]))
    for r in recs:
        assert r.ber == pytest.approx(ber_bpsk_rayleigh(10 ** (r.eb_n0_db / 10)), rel=0.05)


def test_packet_accounting_and_record_invariants():
    cfg = default_config("n", packet_length_bits=1000, stop_rule=StopRule(50, 300_000, 0), master_seed=1)
    rec = run_point(cfg, 2.0)
    assert rec.packets * 1000 == rec.bits_simulated
    assert rec.ber == rec.bit_errors / rec.bits_simulated
    assert rec.per == rec.packet_errors / rec.packets
    assert rec.throughput_bps == 30e6 * (1 - rec.per)
    assert rec.bit_errors >= 50


def test_stop_rule_cap():
    cfg = default_config("g", packet_length_bits=1024, stop_rule=StopRule(10**9, 100_000, 0))
    rec = run_point(cfg, 0.0)
    assert rec.bits_simulated == (100_000 // 1024) * 1024


def test_stop_rule_min_errors_stops_early():
    cfg = default_config("g", stop_rule=StopRule(100, 10**7, 0))
    rec = run_point(cfg, 0.0)
    assert rec.bit_errors >= 100
    assert rec.bits_simulated < 200_000


def test_odd_packet_length_pads_cleanly():
    cfg = default_config("n", channel_kind="awgn_identity", packet_length_bits=1021,
                         stop_rule=StopRule(1, 400_000, 300_000))
    rec = run_point(cfg, 0.0)
    assert rec.ber == pytest.approx(ber_bpsk_awgn(2.0), rel=0.05)


def test_alamouti_awgn_identity_gain():
    # unit channels, half power per antenna: decision SNR = 2 Eb/N0
    cfg = default_config("n", channel_kind="awgn_identity", stop_rule=MILLION)
    rec = run_point(cfg, 0.0)
    p = ber_bpsk_awgn(2.0)
    assert abs(rec.ber - p) < 3 * binomial_sigma(p, rec.bits_simulated)


def test_semianalytic_agrees_with_simulation_at_5db():
    g = 10 ** 0.5
    cfg = default_config("n", channel_kind="rayleigh", stop_rule=MILLION, master_seed=9)
    sim = run_point(cfg, 5.0).ber
    semi = ber_bpsk_mimo_semianalytic(g, 100_000, np.random.default_rng(0))
    assert sim == pytest.approx(semi, rel=0.10)


def test_always_on_interference_is_sinr_shift():
    model = InterferenceModel(mode="periodic", period_bits=1, interferer_to_noise_db=3.0)
    cfg = default_config("g", channel_kind="awgn_identity", interference=model, stop_rule=MILLION)
    rec = run_point(cfg, 6.0)
    p = ber_bpsk_awgn(10 ** 0.6 / (1 + 10 ** 0.3))
    assert abs(rec.ber - p) < 3 * binomial_sigma(p, rec.bits_simulated)


def test_poisson_interference_degrades():
    base = default_config("g", channel_kind="awgn_identity", stop_rule=SMALL, master_seed=4)
    poisson = replace(base, interference=InterferenceModel(mode="poisson", mean_interarrival_bits=240.0))
    assert run_point(poisson, 6.0).ber > run_point(base, 6.0).ber


def test_compare_scenarios_shapes():
    model = InterferenceModel(mode="off")
    g = default_config("g", stop_rule=SMALL, interference=model)
    n = default_config("n", stop_rule=SMALL, interference=model)
    out = compare_scenarios(g, n, [0.0, 5.0])
    assert set(out) == set(Scenario)
    for scenario, pairs in out.items():
        assert [(a.standard, b.standard) for a, b in pairs] == [("g", "n")] * 2
        assert [a.eb_n0_db for a, _ in pairs] == [0.0, 5.0]
    # with interference off the scenarios only differ in their label
    for (a1, b1), (a2, b2) in zip(out[Scenario.BOTH_INTERFERED], out[Scenario.N_ONLY]):
        assert replace(a1, scenario="x") == replace(a2, scenario="x")
        assert replace(b1, scenario="x") == replace(b2, scenario="x")
    with pytest.raises(ValueError):
        compare_scenarios(g, replace(n, master_seed=1), [0.0])


def test_config_validation():
    with pytest.raises(ValueError):
        LinkConfig(profile_for("g"), stop_rule=StopRule(0, 10_000))
    with pytest.raises(ValueError):
        LinkConfig(profile_for("g"), packet_length_bits=2048, stop_rule=StopRule(1, 1000))
    with pytest.raises(ValueError):
        LinkConfig(profile_for("g"), channel_kind="multipath")


@pytest.mark.parametrize("std", ["g", "n"])
def test_measured_offset(std):
    p = profile_for(std)
    assert measure_es_eb_offset(p, 2.0, 60_000, seed=1) == pytest.approx(es_eb_offset_db(p), abs=0.02)


def test_alamouti_curve_is_steeper():
    stop = StopRule(min_bit_errors=200, max_bits=20_000_000, min_bits=1_000_000)
    slopes = {}
    for std in "gn":
        cfg = default_config(std, channel_kind="rayleigh", stop_rule=stop, master_seed=21)
        lo, hi = sweep(cfg, [6.0, 12.0])
        slopes[std] = (math.log10(hi.ber) - math.log10(lo.ber)) / 0.6
    # diversity orders are roughly 1 (SISO) and 4 (2x2)
    assert slopes["n"] < slopes["g"] - 1.0
    assert slopes["g"] == pytest.approx(-1.0, abs=0.2)
