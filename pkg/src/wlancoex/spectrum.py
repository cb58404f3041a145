"""2.4 GHz channel maps for 802.11 and 802.15.4 and overlap planning."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

ISM_LOW_MHZ = 2400.0
ISM_HIGH_MHZ = 2483.5

WLAN_OCCUPIED_MHZ = 22.0
WLAN_WIDE_MHZ = 40.0
ZIGBEE_WIDTH_MHZ = 3.0
ZIGBEE_CHANNELS = tuple(range(11, 27))


@dataclass(frozen=True)
class Band:
    center: float
    width: float

    def __post_init__(self):
        if not self.width > 0:
            raise ValueError("band width must be positive")

    @property
    def low(self) -> float:
        return self.center - self.width / 2

    @property
    def high(self) -> float:
        return self.center + self.width / 2


@dataclass(frozen=True)
class WlanDeployment:
    """An 802.11 network on ``channel_number``.

    ``width`` is 20 (22 MHz occupied) or 40; 40 MHz deployments need
    ``extension`` set to ``"above"`` or ``"below"`` the primary channel.
    """

    channel_number: int
    width: int = 20
    extension: str | None = None

    def __post_init__(self):
        if not 1 <= self.channel_number <= 14:
            raise ValueError(f"WLAN channel must be in 1..14, got {self.channel_number}")
        if self.width not in (20, 40):
            raise ValueError(f"WLAN width must be 20 or 40 MHz, got {self.width}")
        if self.width == 40 and self.extension not in ("above", "below"):
            raise ValueError("40 MHz deployments need extension 'above' or 'below'")
        if self.width == 20 and self.extension is not None:
            raise ValueError("extension only applies to 40 MHz deployments")


@dataclass(frozen=True)
class ZigbeeChannel:
    channel_number: int

    def __post_init__(self):
        if self.channel_number not in ZIGBEE_CHANNELS:
            raise ValueError(f"802.15.4 channel must be in 11..26, got {self.channel_number}")

    @property
    def center(self) -> float:
        return 2405.0 + 5.0 * (self.channel_number - 11)

    @property
    def width(self) -> float:
        return ZIGBEE_WIDTH_MHZ

    @property
    def band(self) -> Band:
        return Band(self.center, self.width)


def wlan_center(channel_number: int) -> float:
    if channel_number == 14:
        return 2484.0
    return 2407.0 + 5.0 * channel_number


def wlan_band(d: WlanDeployment) -> Band:
    primary = wlan_center(d.channel_number)
    if d.width == 20:
        return Band(primary, WLAN_OCCUPIED_MHZ)
    center = primary + (10.0 if d.extension == "above" else -10.0)
    band = Band(center, WLAN_WIDE_MHZ)
    if band.low < ISM_LOW_MHZ or band.high > ISM_HIGH_MHZ:
        raise ValueError(
            f"40 MHz channel {d.channel_number} ({d.extension}) spans "
            f"[{band.low:g}, {band.high:g}] MHz, outside {ISM_LOW_MHZ:g}-{ISM_HIGH_MHZ:g} MHz"
        )
    return band


def intersection_width(a: Band, b: Band) -> float:
    return max(0.0, min(a.high, b.high) - max(a.low, b.low))


def overlaps(a: Band, b: Band) -> bool:
    """Open-interval intersection; touching edges do not count."""
    return max(a.low, b.low) < min(a.high, b.high)


def overlap_fraction(zigbee: ZigbeeChannel, wlan: Band | WlanDeployment) -> float:
    """Share of the 802.15.4 channel's bandwidth that falls inside ``wlan``."""
    if isinstance(wlan, WlanDeployment):
        wlan = wlan_band(wlan)
    return intersection_width(zigbee.band, wlan) / zigbee.width


def free_zigbee_channels(deployments: Iterable[WlanDeployment]) -> set[int]:
    bands = [wlan_band(d) for d in deployments]
    return {
        ch for ch in ZIGBEE_CHANNELS
        if not any(overlaps(ZigbeeChannel(ch).band, b) for b in bands)
    }
