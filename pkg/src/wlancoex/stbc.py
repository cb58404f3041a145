"""Alamouti 2x2 space-time block code, applied per subcarrier."""

from __future__ import annotations

import numpy as np

#: Per-antenna amplitude scale so the two antennas together radiate the
#: same power as a single SISO antenna.
POWER_SPLIT = 1.0 / np.sqrt(2.0)


def stbc_encode(s0, s1) -> np.ndarray:
    """Return the codeword ``tx[..., time, antenna]``.

    Row 0 carries ``(s0, s1)`` and row 1 carries ``(-conj(s1), conj(s0))``.
    Inputs broadcast; the two trailing output axes are (time, antenna).
    """
    s0 = np.asarray(s0, dtype=np.complex128)
    s1 = np.asarray(s1, dtype=np.complex128)
    s0, s1 = np.broadcast_arrays(s0, s1)
    tx = np.empty(s0.shape + (2, 2), dtype=np.complex128)
    tx[..., 0, 0] = s0
    tx[..., 0, 1] = s1
    tx[..., 1, 0] = -np.conj(s1)
    tx[..., 1, 1] = np.conj(s0)
    return tx


def channel_gain(h) -> np.ndarray:
    """Sum of squared magnitudes over the (tx, rx) axes (the last two)."""
    h = np.asarray(h)
    return np.sum(np.abs(h) ** 2, axis=(-2, -1))


def stbc_combine(rx, h):
    """Alamouti combiner for 2 transmit and ``n_rx`` receive antennas.

    Parameters
    ----------
    rx : array_like, shape (..., 2, n_rx)
        Received samples indexed ``[time, rx antenna]``.
    h : array_like, shape (..., 2, n_rx)
        Channel coefficients indexed ``[tx antenna, rx antenna]``. Any
        additional axes in ``rx`` between the batch and the trailing two
        (for example a subcarrier axis) must be expressed by broadcasting.

    Returns
    -------
    estimates : ndarray, shape (..., 2)
        Combiner outputs for ``(s0, s1)``; noiseless they equal
        ``gain * (s0, s1)``.
    gain : ndarray
        ``sum |h|^2``. Zero gain yields zero estimates, which the BPSK
        demapper resolves to bit 0.
    """
    rx = np.asarray(rx, dtype=np.complex128)
    h = np.asarray(h, dtype=np.complex128)
    r0, r1 = rx[..., 0, :], rx[..., 1, :]
    h0, h1 = h[..., 0, :], h[..., 1, :]
    est0 = np.sum(np.conj(h0) * r0 + h1 * np.conj(r1), axis=-1)
    est1 = np.sum(np.conj(h1) * r0 - h0 * np.conj(r1), axis=-1)
    return np.stack([est0, est1], axis=-1), channel_gain(h)


def normalized_estimates(estimates, gain):
    """Divide the combiner output by the channel gain.

    Raises ``ZeroDivisionError`` if any gain is exactly zero.
    """
    gain = np.asarray(gain, dtype=float)
    if np.any(gain == 0):
        raise ZeroDivisionError("degenerate channel: all coefficients are zero")
    return np.asarray(estimates) / gain[..., None]


def post_combining_ebn0(h, eb_n0_linear):
    """Effective Eb/N0 after combining: ``sum |h|^2 * eb_n0``.

    This is the un-split figure; the simulated link radiates half power per
    antenna, so its decision SNR is half of this value.
    """
    if np.any(np.asarray(eb_n0_linear) <= 0):
        raise ValueError("eb_n0_linear must be positive")
    return channel_gain(h) * eb_n0_linear
