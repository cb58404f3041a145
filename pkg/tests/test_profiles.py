import math
from types import SimpleNamespace

import pytest

from wlancoex.profiles import (
    EnergyBudget, OfdmProfile, Standard, bits_per_ofdm_symbol, db_to_linear, es_eb_offset_db, profile_for,
)

# 50-digit mpmath evaluation of 10log10(nDSC/nFFT) + 10log10(3.2/4.0)
OFFSET_G = -1.87086643357144
OFFSET_N = -1.47215131319452


def test_profile_g():
    p = profile_for("g")
    assert p.n_fft == 64
    assert p.data_subcarrier_indices == tuple(range(-26, 0)) + tuple(range(1, 27))
    assert p.sample_rate == 20e6
    assert p.cp_duration == pytest.approx(0.8e-6)
    assert p.n_spatial_streams == 1
    assert p.phy_bit_rate == 6e6
    assert p.n_cp == 16


def test_profile_n():
    p = profile_for(Standard.N)
    assert p.n_fft == 128
    assert p.data_subcarrier_indices == tuple(range(-57, 0)) + tuple(range(1, 58))
    assert p.sample_rate == 40e6
    assert p.n_spatial_streams == 2
    assert p.phy_bit_rate == 30e6
    assert p.n_cp == 32


@pytest.mark.parametrize("std", ["g", "n"])
def test_index_invariants(std):
    p = profile_for(std)
    assert 0 not in p.data_subcarrier_indices
    assert all(abs(k) < p.n_fft / 2 for k in p.data_subcarrier_indices)
    assert p.n_data == {"g": 52, "n": 114}[std]
    assert p.data_symbol_duration == pytest.approx(3.2e-6, rel=1e-12)


def test_invalid_profile_rejected():
    with pytest.raises(ValueError):
        OfdmProfile(Standard.G, 64, (0, 1), 20e6, 0.8e-6, 1, 6e6)
    with pytest.raises(ValueError):
        OfdmProfile(Standard.G, 64, (1, 32), 20e6, 0.8e-6, 1, 6e6)
    with pytest.raises(ValueError):
        profile_for("ac")


def test_offsets():
    assert es_eb_offset_db(profile_for("g")) == pytest.approx(OFFSET_G, abs=1e-12)
    assert es_eb_offset_db(profile_for("n")) == pytest.approx(OFFSET_N, abs=1e-12)
    assert es_eb_offset_db(profile_for("g")) < es_eb_offset_db(profile_for("n")) < 0


def test_offset_zero_without_dilution():
    fake = SimpleNamespace(n_data=64, n_fft=64, data_symbol_duration=3.2e-6, cp_duration=0.0)
    assert es_eb_offset_db(fake) == 0.0


def test_bits_per_symbol():
    assert bits_per_ofdm_symbol(profile_for("g")) == 52
    assert bits_per_ofdm_symbol(profile_for("n")) == 228
    assert bits_per_ofdm_symbol(SimpleNamespace(n_data=0, n_spatial_streams=1)) == 0


@pytest.mark.parametrize("eb", [-10.0, 0.0, 3.3, 25.0])
def test_budget_round_trip(eb):
    for std in "gn":
        p = profile_for(std)
        b = EnergyBudget.from_eb_n0(eb, p)
        assert b.es_n0_db <= b.eb_n0_db
        back = db_to_linear(b.es_n0_db) / db_to_linear(es_eb_offset_db(p))
        assert math.isclose(back, db_to_linear(eb), rel_tol=1e-12)
