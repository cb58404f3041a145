import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from wlancoex.analytic import (
    ErrorRates, ber_bpsk_awgn, ber_bpsk_mimo_semianalytic, ber_bpsk_rayleigh, per_from_ber, ser_bpsk_awgn,
    sinr_db, throughput_bps,
)
from scipy.special import erfc

from wlancoex.channel import NoiseBudget, sample_fading
from wlancoex.profiles import es_eb_offset_db, profile_for

mp.mp.dps = 50


def test_ber_awgn_examples():
    assert ber_bpsk_awgn(0.0) == 0.5
    assert ber_bpsk_awgn(1.0) == pytest.approx(0.0786496035251426, abs=1e-12)
    assert ber_bpsk_awgn(9.12) == pytest.approx(9.73728419938228e-6, rel=1e-9)


@given(st.floats(0, 60))
def test_ber_awgn_against_mpmath(x):
    oracle = float(mp.erfc(mp.sqrt(mp.mpf(x))) / 2)
    assert ber_bpsk_awgn(x) == pytest.approx(oracle, rel=1e-12, abs=1e-300)


def test_ber_awgn_monotone():
    x = np.linspace(0, 40, 2001)
    assert np.all(np.diff(ber_bpsk_awgn(x)) < 0)


def test_ser():
    assert ser_bpsk_awgn(0.0) == 0.5
    assert ser_bpsk_awgn(2.5) == ber_bpsk_awgn(2.5)
    es_db = 5.0 + es_eb_offset_db(profile_for("g"))
    assert es_db == pytest.approx(3.12913356642856, abs=1e-12)
    assert ser_bpsk_awgn(10 ** (es_db / 10)) == pytest.approx(0.0213030736030115, rel=1e-10)


def test_negative_snr_rejected():
    with pytest.raises(ValueError):
        ber_bpsk_awgn(-1.0)


def test_semianalytic_limits(rng):
    assert ber_bpsk_mimo_semianalytic(math.inf, 10, rng) == 0.0
    eb = 1.7
    assert ber_bpsk_mimo_semianalytic(eb, 5, rng, channel="identity") == pytest.approx(ber_bpsk_awgn(2 * eb))
    with pytest.raises(ValueError):
        ber_bpsk_mimo_semianalytic(1.0, 0, rng)


def _alamouti_closed_form(g):
    # MRC over 4 branches with per-branch mean SNR g/2 (power split)
    gb = g / 2
    mu = math.sqrt(gb / (1 + gb))
    return ((1 - mu) / 2) ** 4 * sum(math.comb(3 + k, k) * ((1 + mu) / 2) ** k for k in range(4))


@pytest.mark.parametrize("db", [0, 5, 10, 15, 20])
def test_semianalytic_below_siso_rayleigh(db):
    g = 10 ** (db / 10)
    n = 100_000
    h = ber_bpsk_mimo_semianalytic(g, n, np.random.default_rng(db))
    # per-draw terms rebuilt from the same stream give the standard error
    coeffs = sample_fading(np.random.default_rng(db), 2, 2, "rayleigh", size=n).coeffs
    terms = 0.5 * erfc(np.sqrt(np.sum(np.abs(coeffs) ** 2, axis=(1, 2)) * g / 2))
    assert np.mean(terms) == pytest.approx(h, rel=1e-12)
    stderr = terms.std(ddof=1) / math.sqrt(n)
    assert h + 3 * stderr < ber_bpsk_rayleigh(g)
    assert abs(h - _alamouti_closed_form(g)) < 4 * stderr


def test_rayleigh_closed_form_against_quadrature():
    for db in (0, 10, 20):
        g = 10 ** (db / 10)
        q = mp.quad(lambda x: mp.erfc(mp.sqrt(g * x)) / 2 * mp.e ** (-x), [0, mp.inf])
        assert ber_bpsk_rayleigh(g) == pytest.approx(float(q), rel=1e-10)


def test_sinr():
    assert sinr_db(NoiseBudget(10, 1, 0)) == pytest.approx(10.0)
    assert sinr_db(NoiseBudget(1, 0.5, 0.5)) == pytest.approx(0.0)
    assert sinr_db(NoiseBudget(100, 1, 9)) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        sinr_db(NoiseBudget(1, 0, 0))


@given(st.floats(1e-6, 1e6), st.floats(1e-6, 1e3), st.floats(1e-9, 1e3))
def test_sinr_decreases_with_interference(pc, pn, pi):
    assert sinr_db(NoiseBudget(pc, pn, pi)) < sinr_db(NoiseBudget(pc, pn, 0))


def test_per_examples():
    assert per_from_ber(0.0, 1024) == 0.0
    assert per_from_ber(0.037, 1) == pytest.approx(0.037)
    assert per_from_ber(1e-3, 1024) == pytest.approx(0.64102852181029, rel=1e-12)
    assert per_from_ber(1.0, 8) == 1.0


@given(st.floats(0, 1), st.integers(1, 5000), st.integers(1, 5000))
def test_per_composition(b, l1, l2):
    p1, p2 = per_from_ber(b, l1), per_from_ber(b, l2)
    assert per_from_ber(b, l1 + l2) == pytest.approx(1 - (1 - p1) * (1 - p2), abs=1e-12)
    assert per_from_ber(b, l1 + l2) >= max(p1, p2) - 1e-15


def test_error_rates_invariant():
    r = ErrorRates.from_ber(0.01, 100)
    assert 0 <= r.ber <= r.per <= 1


def test_throughput():
    assert throughput_bps(6e6, 0.0) == 6e6
    assert throughput_bps(30e6, 1.0) == 0.0
    assert throughput_bps(30e6, 0.25) == 22.5e6
    with pytest.raises(ValueError):
        throughput_bps(6e6, 1.2)
