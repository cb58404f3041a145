"""BPSK mapping and the OFDM modulate/demodulate chain.

All transforms use unitary scaling (``norm="ortho"``) so frame energy is
preserved between the frequency and time domains. Every function accepts
arrays with arbitrary leading batch dimensions; the last axis is the
symbol / bin / sample axis.
"""

from __future__ import annotations

import numpy as np

from wlancoex.profiles import OfdmProfile


def bpsk_map(bits) -> np.ndarray:
    """Map bit 0 to +1 and bit 1 to -1 (complex, unit energy)."""
    bits = np.asarray(bits, dtype=np.int8)
    return (1.0 - 2.0 * bits).astype(np.complex128)


def bpsk_demap(symbols) -> np.ndarray:
    """Hard decision: bit 1 iff the real part is negative (0 on ties)."""
    return (np.real(np.asarray(symbols)) < 0).astype(np.int8)


def subcarrier_map(symbols, profile: OfdmProfile) -> np.ndarray:
    """Place symbols on the data bins in ascending signed-index order."""
    symbols = np.asarray(symbols, dtype=np.complex128)
    if symbols.shape[-1:] != (profile.n_data,):
        raise ValueError(
            f"expected {profile.n_data} symbols per OFDM symbol for profile "
            f"{profile.standard_name.value}, got {symbols.shape[-1:] or 'a scalar'}"
        )
    frame = np.zeros(symbols.shape[:-1] + (profile.n_fft,), dtype=np.complex128)
    frame[..., profile.bin_positions] = symbols
    return frame


def subcarrier_extract(frame, profile: OfdmProfile) -> np.ndarray:
    frame = np.asarray(frame)
    if frame.shape[-1:] != (profile.n_fft,):
        raise ValueError(f"expected a frame of {profile.n_fft} bins, got {frame.shape[-1:]}")
    return frame[..., profile.bin_positions]


def ofdm_modulate(frame, profile: OfdmProfile) -> np.ndarray:
    """Unitary IDFT followed by cyclic-prefix insertion."""
    frame = np.asarray(frame, dtype=np.complex128)
    if frame.shape[-1:] != (profile.n_fft,):
        raise ValueError(f"expected a frame of {profile.n_fft} bins, got {frame.shape[-1:]}")
    body = np.fft.ifft(frame, axis=-1, norm="ortho")
    n_cp = profile.n_cp
    if n_cp == 0:
        return body
    return np.concatenate([body[..., -n_cp:], body], axis=-1)


def ofdm_demodulate(samples, profile: OfdmProfile) -> np.ndarray:
    """Cyclic-prefix removal followed by a unitary DFT."""
    samples = np.asarray(samples, dtype=np.complex128)
    if samples.shape[-1:] != (profile.symbol_length,):
        raise ValueError(
            f"expected {profile.symbol_length} samples "
            f"(n_fft={profile.n_fft} + n_cp={profile.n_cp}), got {samples.shape[-1:]}"
        )
    return np.fft.fft(samples[..., profile.n_cp:], axis=-1, norm="ortho")
