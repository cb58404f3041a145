"""OFDM parameter sets for the two WLAN standards and the energy-budget
arithmetic relating bit energy to per-sample symbol energy."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Standard(str, enum.Enum):
    G = "g"
    N = "n"

    @classmethod
    def parse(cls, value: "str | Standard") -> "Standard":
        if isinstance(value, Standard):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise ValueError(f"unknown standard {value!r}; expected 'g' or 'n'") from None


@dataclass(frozen=True)
class OfdmProfile:
    """Modulation parameters of one standard.

    ``data_subcarrier_indices`` are signed DFT bin indices in ascending
    order; bin ``k`` lives at array position ``k % n_fft``.
    """

    standard_name: Standard
    n_fft: int
    data_subcarrier_indices: tuple[int, ...]
    sample_rate: float
    cp_duration: float
    n_spatial_streams: int
    phy_bit_rate: float

    def __post_init__(self):
        idx = self.data_subcarrier_indices
        if self.n_fft <= 0:
            raise ValueError("n_fft must be positive")
        if list(idx) != sorted(set(idx)):
            raise ValueError("data_subcarrier_indices must be strictly ascending")
        if any(k == 0 or abs(k) >= self.n_fft / 2 for k in idx):
            raise ValueError("data subcarriers must exclude DC and satisfy |k| < n_fft/2")

    @property
    def n_data(self) -> int:
        return len(self.data_subcarrier_indices)

    @property
    def n_cp(self) -> int:
        return int(round(self.cp_duration * self.sample_rate))

    @property
    def symbol_length(self) -> int:
        return self.n_fft + self.n_cp

    @property
    def data_symbol_duration(self) -> float:
        return self.n_fft / self.sample_rate

    @property
    def bin_positions(self) -> np.ndarray:
        """Array positions of the data bins, in ascending signed-index order."""
        return np.asarray(self.data_subcarrier_indices, dtype=np.intp) % self.n_fft


def _symmetric(n: int) -> tuple[int, ...]:
    return tuple(range(-n, 0)) + tuple(range(1, n + 1))


_PROFILES = {
    Standard.G: OfdmProfile(
        standard_name=Standard.G,
        n_fft=64,
        data_subcarrier_indices=_symmetric(26),
        sample_rate=20e6,
        cp_duration=0.8e-6,
        n_spatial_streams=1,
        phy_bit_rate=6e6,
    ),
    Standard.N: OfdmProfile(
        standard_name=Standard.N,
        n_fft=128,
        data_subcarrier_indices=_symmetric(57),
        sample_rate=40e6,
        cp_duration=0.8e-6,
        n_spatial_streams=2,
        phy_bit_rate=30e6,
    ),
}


def profile_for(standard: "Standard | str") -> OfdmProfile:
    return _PROFILES[Standard.parse(standard)]


def es_eb_offset_db(profile: OfdmProfile) -> float:
    """dB offset with ``es_n0_db = eb_n0_db + offset``.

    Sum of the subcarrier dilution ``10 log10(n_data / n_fft)`` and the
    cyclic-prefix dilution ``10 log10(T_d / (T_d + T_cp))``. Never positive.
    """
    t_d = profile.data_symbol_duration
    return 10.0 * math.log10(profile.n_data / profile.n_fft) + 10.0 * math.log10(
        t_d / (t_d + profile.cp_duration)
    )


def bits_per_ofdm_symbol(profile: OfdmProfile) -> int:
    # For N this is the payload of one 2-period STBC block.
    return profile.n_data * profile.n_spatial_streams


@dataclass(frozen=True)
class EnergyBudget:
    eb_n0_db: float
    es_n0_db: float
    data_symbol_duration: float

    @classmethod
    def from_eb_n0(cls, eb_n0_db: float, profile: OfdmProfile) -> "EnergyBudget":
        return cls(eb_n0_db, eb_n0_db + es_eb_offset_db(profile), profile.data_symbol_duration)


def db_to_linear(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0) if np.ndim(db) else 10.0 ** (float(db) / 10.0)


def linear_to_db(x):
    return 10.0 * np.log10(x)
