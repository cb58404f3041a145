"""Closed-form error rates, SINR and the PER / throughput mappings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import erfc

from wlancoex.channel import NoiseBudget, sample_fading
from wlancoex.stbc import POWER_SPLIT, channel_gain


@dataclass(frozen=True)
class ErrorRates:
    ber: float
    per: float
    packet_length_bits: int

    @classmethod
    def from_ber(cls, ber: float, packet_length_bits: int) -> "ErrorRates":
        return cls(ber, per_from_ber(ber, packet_length_bits), packet_length_bits)


def _nonneg(x, name):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0) or np.any(np.isnan(x)):
        raise ValueError(f"{name} must be nonnegative")
    return x


def _out(x):
    return float(x) if np.ndim(x) == 0 else x


def ber_bpsk_awgn(eb_n0_linear):
    """BPSK bit error probability ``0.5 erfc(sqrt(Eb/N0))``."""
    return _out(0.5 * erfc(np.sqrt(_nonneg(eb_n0_linear, "eb_n0_linear"))))


def ser_bpsk_awgn(es_n0_linear):
    """BPSK symbol error probability; same form as the bit error rate."""
    return _out(0.5 * erfc(np.sqrt(_nonneg(es_n0_linear, "es_n0_linear"))))


def ber_bpsk_rayleigh(eb_n0_linear):
    """SISO BPSK over flat Rayleigh fading: ``0.5 (1 - sqrt(g / (1 + g)))``."""
    g = _nonneg(eb_n0_linear, "eb_n0_linear")
    return _out(0.5 * (1.0 - np.sqrt(g / (1.0 + g))))


def ber_bpsk_mimo_semianalytic(eb_n0_linear: float, n_draws: int, rng: np.random.Generator,
                               channel: str = "rayleigh") -> float:
    """Alamouti 2x2 BER averaged over ``n_draws`` channel realizations.

    Each draw contributes ``0.5 erfc(sqrt(gain * Eb/N0 / 2))``: the combined
    gain ``sum |h|^2`` times Eb/N0, halved by the equal power split between
    the two transmit antennas.
    """
    if n_draws < 1:
        raise ValueError("n_draws must be >= 1")
    if not eb_n0_linear > 0:
        raise ValueError("eb_n0_linear must be positive")
    if math.isinf(eb_n0_linear):
        return 0.0
    h = sample_fading(rng, 2, 2, channel, size=n_draws).coeffs
    snr = channel_gain(h) * POWER_SPLIT**2 * eb_n0_linear
    return float(np.mean(0.5 * erfc(np.sqrt(snr))))


def sinr_db(budget: NoiseBudget) -> float:
    denom = budget.p_noise + budget.p_interferer
    if denom <= 0:
        raise ValueError("noise plus interference power must be positive")
    return 10.0 * math.log10(budget.p_signal / denom)


def per_from_ber(ber, packet_length_bits: int):
    """Packet error rate assuming independent bit errors: ``1 - (1 - ber)^L``."""
    ber = np.asarray(ber, dtype=float)
    if np.any((ber < 0) | (ber > 1)):
        raise ValueError("ber must lie in [0, 1]")
    if packet_length_bits < 1:
        raise ValueError("packet_length_bits must be >= 1")
    # expm1/log1p keeps small-ber results accurate
    with np.errstate(divide="ignore"):
        return _out(-np.expm1(packet_length_bits * np.log1p(-ber)))


def throughput_bps(phy_rate: float, per):
    per = np.asarray(per, dtype=float)
    if np.any((per < 0) | (per > 1)):
        raise ValueError("per must lie in [0, 1]")
    return _out(phy_rate * (1.0 - per))
