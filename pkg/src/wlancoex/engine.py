"""Monte Carlo link simulation: bits -> OFDM (+STBC) -> channel -> receiver.

Every random draw comes from a generator keyed by
``(master_seed, point_index, chunk_index, stream)``. Chunk sizes depend
only on the configuration, so a point's result never depends on how or
where other points were evaluated.
"""

from __future__ import annotations

import enum
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np
from scipy.special import erfcinv

from wlancoex import analytic
from wlancoex.channel import (
    InterferenceModel,
    InterferenceSchedule,
    Scenario,
    apply_channel,
    apply_noise_and_interference,
    noise_variance_for,
    sample_fading,
)
from wlancoex.ofdm import bpsk_demap, bpsk_map, ofdm_demodulate, ofdm_modulate, subcarrier_extract, subcarrier_map
from wlancoex.profiles import OfdmProfile, Standard, bits_per_ofdm_symbol, profile_for
from wlancoex.stbc import POWER_SPLIT, stbc_combine, stbc_encode

log = logging.getLogger(__name__)

_TARGET_CHUNK_BITS = 1 << 16
_MAX_ALIGNED_CHUNK_BITS = 1 << 20

# stream tags
_BITS, _FADING, _NOISE, _JAMMER, _SCHEDULE = range(5)


class ChannelKind(str, enum.Enum):
    AWGN_IDENTITY = "awgn_identity"
    RAYLEIGH = "rayleigh"

    @property
    def fading_model(self) -> str:
        return "identity" if self is ChannelKind.AWGN_IDENTITY else "rayleigh"


@dataclass(frozen=True)
class StopRule:
    """Stop once ``min_bit_errors`` and ``min_bits`` are both reached, or at
    ``max_bits`` (rounded down to whole packets) regardless."""

    min_bit_errors: int = 100
    max_bits: int = 10_000_000
    min_bits: int = 0


@dataclass(frozen=True)
class LinkConfig:
    profile: OfdmProfile
    channel_kind: ChannelKind = ChannelKind.RAYLEIGH
    interference: InterferenceModel = field(default_factory=InterferenceModel)
    packet_length_bits: int = 1024
    stop_rule: StopRule = field(default_factory=StopRule)
    master_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "channel_kind", ChannelKind(self.channel_kind))
        if self.packet_length_bits < 1:
            raise ValueError("packet_length_bits must be >= 1")
        if self.stop_rule.min_bit_errors < 1:
            raise ValueError("min_bit_errors must be >= 1")
        if self.stop_rule.max_bits < self.packet_length_bits:
            raise ValueError("max_bits must be at least one packet")
        if self.master_seed < 0:
            raise ValueError("master_seed must be nonnegative")

    @property
    def standard(self) -> Standard:
        return self.profile.standard_name


@dataclass(frozen=True)
class MetricRecord:
    standard: str
    scenario: str
    eb_n0_db: float
    bits_simulated: int
    bit_errors: int
    packets: int
    packet_errors: int
    ber: float
    per: float
    throughput_bps: float
    seed: int
    per_analytic: float = field(default=math.nan, compare=False)


def _rng(cfg: LinkConfig, point_index: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([cfg.master_seed, point_index, *key]))


def _chunk_packets(packet_length: int, bits_per_symbol: int) -> int:
    unit = math.lcm(packet_length, bits_per_symbol) // packet_length
    if unit * packet_length <= _MAX_ALIGNED_CHUNK_BITS:
        return unit * max(1, round(_TARGET_CHUNK_BITS / (unit * packet_length)))
    return max(1, _TARGET_CHUNK_BITS // packet_length)


def _siso_chunk(profile, kind, bits, n0, interference, schedule, base, n_payload, rngs):
    """Transmit ``bits`` (a whole number of OFDM symbols) over a SISO link;
    return the detected bits."""
    n_data = profile.n_data
    n_sym = bits.size // n_data
    frames = subcarrier_map(bpsk_map(bits).reshape(n_sym, n_data), profile)
    tx = ofdm_modulate(frames, profile)[:, None, :]
    h = sample_fading(rngs[_FADING], 1, 1, kind.fading_model, size=n_sym).coeffs
    rx = apply_channel(tx, h)
    starts = base + np.arange(n_sym) * n_data
    stops = base + np.minimum((np.arange(n_sym) + 1) * n_data, n_payload)
    hits = schedule.hits(starts, stops)
    rx = apply_noise_and_interference(rx, n0, interference, hits, rngs[_NOISE], standard=profile.standard_name,
                                      interference_rng=rngs[_JAMMER])
    y = subcarrier_extract(ofdm_demodulate(rx, profile), profile)[:, 0, :]
    # matched filter; sign decision is what matters for BPSK
    z = np.conj(h[:, 0, 0])[:, None] * y
    return bpsk_demap(z).ravel()


def _alamouti_chunk(profile, kind, bits, n0, interference, schedule, base, n_payload, rngs):
    """2x2 Alamouti over two consecutive OFDM periods per block.

    Bits ``[0, n_data)`` of a block ride as s0 on every subcarrier and
    ``[n_data, 2 n_data)`` as s1; for the interference schedule they count
    as OFDM periods 0 and 1 respectively.
    """
    n_data = profile.n_data
    n_blk = bits.size // (2 * n_data)
    s = bpsk_map(bits).reshape(n_blk, 2, n_data)
    cw = stbc_encode(s[:, 0], s[:, 1])                      # (blk, k, time, ant)
    frames = subcarrier_map(np.moveaxis(cw, 1, -1), profile) * POWER_SPLIT
    tx = ofdm_modulate(frames, profile)                     # (blk, time, ant, samples)
    h = sample_fading(rngs[_FADING], 2, 2, kind.fading_model, size=n_blk).coeffs
    rx = apply_channel(tx, h[:, None])                      # (blk, time, rx, samples)
    period = np.arange(2 * n_blk).reshape(n_blk, 2)
    starts = base + period * n_data
    stops = base + np.minimum((period + 1) * n_data, n_payload)
    hits = schedule.hits(starts, stops)
    rx = apply_noise_and_interference(rx, n0, interference, hits, rngs[_NOISE], standard=profile.standard_name,
                                      interference_rng=rngs[_JAMMER])
    y = subcarrier_extract(ofdm_demodulate(rx, profile), profile)   # (blk, time, rx, k)
    est, _ = stbc_combine(np.moveaxis(y, -1, 1), h[:, None])        # (blk, k, 2)
    return bpsk_demap(np.moveaxis(est, -1, 1)).ravel()


def run_point(cfg: LinkConfig, eb_n0_db: float, point_index: int = 0) -> MetricRecord:
    """Simulate one Eb/N0 point until the stop rule is met."""
    profile = cfg.profile
    L = cfg.packet_length_bits
    bps = bits_per_ofdm_symbol(profile)
    chunk = _chunk_packets(L, bps)
    max_packets = cfg.stop_rule.max_bits // L
    n0 = noise_variance_for(eb_n0_db, profile)
    schedule = InterferenceSchedule(cfg.interference, _rng(cfg, point_index, _SCHEDULE))
    transmit = _alamouti_chunk if profile.n_spatial_streams == 2 else _siso_chunk

    packets = bit_errors = packet_errors = 0
    chunk_index = 0
    while packets < max_packets:
        n_pk = min(chunk, max_packets - packets)
        n_payload = n_pk * L
        n_bits = -(-n_payload // bps) * bps
        rngs = [_rng(cfg, point_index, chunk_index, tag) for tag in (_BITS, _FADING, _NOISE, _JAMMER)]
        bits = rngs[_BITS].integers(0, 2, size=n_bits, dtype=np.int8)
        detected = transmit(profile, cfg.channel_kind, bits, n0, cfg.interference, schedule,
                            packets * L, n_payload, rngs)
        errs = (detected[:n_payload] != bits[:n_payload]).reshape(n_pk, L).sum(axis=1)
        bit_errors += int(errs.sum())
        packet_errors += int(np.count_nonzero(errs))
        packets += n_pk
        chunk_index += 1
        stop = cfg.stop_rule
        if bit_errors >= stop.min_bit_errors and packets * L >= stop.min_bits:
            break

    bits_simulated = packets * L
    ber = bit_errors / bits_simulated
    per = packet_errors / packets
    record = MetricRecord(
        standard=profile.standard_name.value,
        scenario=cfg.interference.scenario.value,
        eb_n0_db=float(eb_n0_db),
        bits_simulated=bits_simulated,
        bit_errors=bit_errors,
        packets=packets,
        packet_errors=packet_errors,
        ber=ber,
        per=per,
        throughput_bps=analytic.throughput_bps(profile.phy_bit_rate, per),
        seed=cfg.master_seed,
        per_analytic=analytic.per_from_ber(ber, L),
    )
    log.debug("point %d: %s", point_index, record)
    return record


def _run_indexed(args):
    cfg, eb_n0_db, index = args
    return run_point(cfg, eb_n0_db, index)


def sweep(cfg: LinkConfig, eb_n0_points: Sequence[float], workers: int = 1) -> list[MetricRecord]:
    """Run every point; record ``i`` uses stream id ``(master_seed, i)``.

    With ``workers > 1`` points run in separate processes; output order and
    content are identical to the serial run.
    """
    points = list(eb_n0_points)
    if not points:
        raise ValueError("need at least one Eb/N0 point")
    jobs = [(cfg, float(eb), i) for i, eb in enumerate(points)]
    if workers <= 1 or len(jobs) == 1:
        return [_run_indexed(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_indexed, jobs))


def compare_scenarios(cfg_g: LinkConfig, cfg_n: LinkConfig, points: Sequence[float],
                      workers: int = 1) -> dict[Scenario, list[tuple[MetricRecord, MetricRecord]]]:
    """Aligned G/N records for both interference scenarios."""
    if cfg_g.standard is not Standard.G or cfg_n.standard is not Standard.N:
        raise ValueError("expected a G config and an N config")
    if cfg_g.master_seed != cfg_n.master_seed or cfg_g.stop_rule != cfg_n.stop_rule:
        raise ValueError("G and N configs must share the seed and stop rule")
    if cfg_g.interference.scenario is not cfg_n.interference.scenario:
        raise ValueError("G and N configs must share the interference scenario")
    out = {}
    for scenario in Scenario:
        g = replace(cfg_g, interference=replace(cfg_g.interference, scenario=scenario))
        n = replace(cfg_n, interference=replace(cfg_n.interference, scenario=scenario))
        out[scenario] = list(zip(sweep(g, points, workers), sweep(n, points, workers)))
    return out


def default_config(standard, **kw) -> LinkConfig:
    return LinkConfig(profile=profile_for(standard), **kw)


def measure_es_eb_offset(profile: OfdmProfile, es_n0_db: float, n_symbols: int, seed: int = 0) -> float:
    """Empirical Es/N0 - Eb/N0 in dB for a SISO OFDM link with ``profile``.

    Noise is set per time sample from Es/N0 using the useful per-sample power
    measured on the transmitted frames. The effective Eb/N0 is recovered by
    inverting the BPSK error formula on the measured BER.
    """
    rng = np.random.default_rng(seed)
    bits = rng.integers(0, 2, size=(n_symbols, profile.n_data), dtype=np.int8)
    tx = ofdm_modulate(subcarrier_map(bpsk_map(bits), profile), profile)
    useful = np.sum(np.abs(tx[:, profile.n_cp:]) ** 2) / tx.size
    n0 = useful / 10 ** (es_n0_db / 10)
    noise = rng.standard_normal(tx.shape + (2,)).view(np.complex128)[..., 0] * math.sqrt(n0 / 2)
    y = subcarrier_extract(ofdm_demodulate(tx + noise, profile), profile)
    ber = np.mean(bpsk_demap(y) != bits)
    eb_n0 = erfcinv(2 * ber) ** 2
    return es_n0_db - 10 * math.log10(eb_n0)
