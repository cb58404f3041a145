"""Flat fading, AWGN and the 802.15.4 burst-interference process."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from wlancoex.profiles import OfdmProfile, Standard, db_to_linear, es_eb_offset_db


class FadingModel(str, enum.Enum):
    IDENTITY = "identity"
    RAYLEIGH = "rayleigh"


class InterferenceMode(str, enum.Enum):
    OFF = "off"
    PERIODIC = "periodic"
    POISSON = "poisson"


class Scenario(str, enum.Enum):
    BOTH_INTERFERED = "both_interfered"
    N_ONLY = "n_only"


@dataclass(frozen=True)
class FadingRealization:
    """Channel coefficients ``coeffs[..., tx, rx]`` for one fading block
    (or a batch of blocks along the leading axes)."""

    coeffs: np.ndarray
    block_index: int = 0

    @property
    def n_tx(self) -> int:
        return self.coeffs.shape[-2]

    @property
    def n_rx(self) -> int:
        return self.coeffs.shape[-1]


@dataclass(frozen=True)
class InterferenceModel:
    mode: InterferenceMode = InterferenceMode.OFF
    period_bits: int = 24
    mean_interarrival_bits: float = 24.0
    burst_length_bits: int = 1
    interferer_to_noise_db: float = 10.0
    overlap_fraction: float = 1.0
    scenario: Scenario = Scenario.BOTH_INTERFERED

    def __post_init__(self):
        object.__setattr__(self, "mode", InterferenceMode(self.mode))
        object.__setattr__(self, "scenario", Scenario(self.scenario))
        if self.period_bits < 1:
            raise ValueError("period_bits must be a positive integer")
        if not self.mean_interarrival_bits > 0:
            raise ValueError("mean_interarrival_bits must be positive")
        if self.burst_length_bits < 1:
            raise ValueError("burst_length_bits must be >= 1")
        if not 0.0 <= self.overlap_fraction <= 1.0:
            raise ValueError("overlap_fraction must lie in [0, 1]")
        if not math.isfinite(self.interferer_to_noise_db):
            raise ValueError("interferer_to_noise_db must be finite")

    def affects(self, standard: Standard) -> bool:
        """Whether this interferer reaches a link of the given standard."""
        if self.mode is InterferenceMode.OFF:
            return False
        return not (self.scenario is Scenario.N_ONLY and Standard.parse(standard) is Standard.G)

    @property
    def power_ratio(self) -> float:
        """Interference variance as a multiple of the noise variance."""
        return db_to_linear(self.interferer_to_noise_db) * self.overlap_fraction


@dataclass(frozen=True)
class NoiseBudget:
    p_signal: float
    p_noise: float
    p_interferer: float = 0.0

    def __post_init__(self):
        if min(self.p_signal, self.p_noise, self.p_interferer) < 0:
            raise ValueError("powers must be nonnegative")


def complex_normal(rng: np.random.Generator, shape, variance: float = 1.0) -> np.ndarray:
    """Circularly-symmetric complex Gaussian samples with the given variance."""
    shape = tuple(np.atleast_1d(shape)) if not isinstance(shape, tuple) else shape
    z = rng.standard_normal(shape + (2,)).view(np.complex128)[..., 0]
    return z * math.sqrt(variance / 2.0)


def sample_fading(rng: np.random.Generator, n_tx: int, n_rx: int, model="rayleigh", size=None,
                  block_index: int = 0) -> FadingRealization:
    """Draw flat-fading coefficients with unit average power per antenna pair.

    ``size`` adds leading batch axes (one realization per fading block).
    """
    if n_tx not in (1, 2) or n_rx not in (1, 2):
        raise ValueError("n_tx and n_rx must be 1 or 2")
    shape = (() if size is None else tuple(np.atleast_1d(size))) + (n_tx, n_rx)
    if FadingModel(model) is FadingModel.IDENTITY:
        coeffs = np.ones(shape, dtype=np.complex128)
    else:
        coeffs = complex_normal(rng, shape)
    return FadingRealization(coeffs, block_index)


def apply_channel(tx, h) -> np.ndarray:
    """Flat MIMO channel: ``rx[..., j, :] = sum_i h[..., i, j] * tx[..., i, :]``.

    ``tx`` has shape (..., n_tx, n_samples); ``h`` is a FadingRealization or
    an array of shape (..., n_tx, n_rx) broadcasting against tx's batch axes.
    """
    coeffs = h.coeffs if isinstance(h, FadingRealization) else np.asarray(h)
    return np.einsum("...il,...ij->...jl", np.asarray(tx, dtype=np.complex128), coeffs)


def useful_sample_power(profile: OfdmProfile) -> float:
    """Useful (post-CP-removal) energy of one OFDM symbol, spread over all of
    its samples including the cyclic prefix."""
    return profile.n_data / profile.symbol_length


def noise_variance_for(eb_n0_db: float, profile: OfdmProfile) -> float:
    """Complex noise variance per time sample for a given Eb/N0.

    Eb/N0 is converted to Es/N0 with the subcarrier and cyclic-prefix
    dilution terms; N0 is then the useful per-sample power over Es/N0. With
    unit-energy data bins and a unitary DFT this leaves every data bin at
    SNR = Eb/N0, which is what the BPSK bit-error formula assumes.
    """
    es_n0 = db_to_linear(eb_n0_db + es_eb_offset_db(profile))
    return useful_sample_power(profile) / es_n0


class InterferenceSchedule:
    """Burst positions along the payload bit stream of one simulated link.

    Periodic bursts start at multiples of ``period_bits``. Poisson burst
    starts are ``floor`` of the partial sums of exponential interarrival
    draws; they are generated sequentially from ``rng`` in fixed blocks, so
    the same seed always yields the same schedule regardless of the query
    order.
    """

    _BLOCK = 4096

    def __init__(self, model: InterferenceModel, rng: np.random.Generator | None = None):
        self.model = model
        if model.mode is InterferenceMode.POISSON:
            if rng is None:
                raise ValueError("poisson interference needs a random stream")
            self._rng = rng
            self._starts = np.empty(0, dtype=np.int64)
            self._clock = 0.0

    def _extend_to(self, bit_index: int) -> None:
        while self._clock <= bit_index:
            gaps = self._rng.exponential(self.model.mean_interarrival_bits, self._BLOCK)
            times = self._clock + np.cumsum(gaps)
            self._clock = float(times[-1])
            self._starts = np.concatenate([self._starts, np.floor(times).astype(np.int64)])

    def hits(self, start, stop) -> np.ndarray:
        """True where the half-open bit range ``[start, stop)`` meets a burst."""
        start = np.asarray(start, dtype=np.int64)
        stop = np.asarray(stop, dtype=np.int64)
        burst = self.model.burst_length_bits
        mode = self.model.mode
        if mode is InterferenceMode.OFF:
            return np.zeros(np.broadcast(start, stop).shape, dtype=bool)
        nonempty = stop > start
        if mode is InterferenceMode.PERIODIC:
            period = self.model.period_bits
            phase = np.mod(start, period)
            next_on = np.where(phase < burst, start, start + (period - phase))
            return nonempty & (next_on < stop)
        if stop.size:
            self._extend_to(int(stop.max()))
        lo = np.searchsorted(self._starts, start - burst, side="right")
        hi = np.searchsorted(self._starts, stop, side="left")
        return nonempty & (hi > lo)

    def active(self, bit_index: int) -> bool:
        return bool(self.hits(bit_index, bit_index + 1))


def burst_active(model: InterferenceModel, bit_index: int, rng=None) -> bool:
    """Whether payload bit ``bit_index`` lies inside an interference burst.

    For Poisson mode ``rng`` is a seed (int or SeedSequence); the schedule
    is rebuilt from it, so equal seeds give equal answers. Use
    :class:`InterferenceSchedule` directly for repeated queries.
    """
    if model.mode is InterferenceMode.POISSON:
        if rng is None:
            raise ValueError("poisson interference needs a seed")
        rng = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
    return InterferenceSchedule(model, rng).active(bit_index)


def apply_noise_and_interference(rx, n0: float, model: InterferenceModel, hits, rng: np.random.Generator,
                                 *, standard="g", interference_rng: np.random.Generator | None = None):
    """Add AWGN and, on hit OFDM symbols, the jammer's extra AWGN.

    Parameters
    ----------
    rx : ndarray, shape (..., n_rx, n_samples)
        Received OFDM symbols, one per leading index.
    n0 : float
        Complex noise variance per sample.
    model : InterferenceModel
    hits : array_like of bool, shape ``rx.shape[:-2]``
        Which OFDM symbols overlap a burst (see ``InterferenceSchedule.hits``).
    rng : Generator
        Stream for the thermal noise.
    standard : Standard or str
        Victim standard; scenario ``n_only`` leaves G links untouched.
    interference_rng : Generator, optional
        Separate stream for the jammer noise. Defaults to ``rng``.
    """
    if n0 < 0:
        raise ValueError("noise variance must be nonnegative")
    rx = np.asarray(rx, dtype=np.complex128)
    out = rx + complex_normal(rng, rx.shape, n0) if n0 > 0 else rx.copy()
    if model.affects(standard) and n0 > 0:
        var_i = n0 * model.power_ratio
        if var_i > 0:
            jam = complex_normal(interference_rng or rng, rx.shape, var_i)
            mask = np.asarray(hits, dtype=bool)[..., None, None]
            out += np.where(mask, jam, 0.0)
    return out
