"""CSV output for sweeps and analytic curves, and the spectrum report."""

from __future__ import annotations

import csv
import io
import os
from typing import Iterable, Sequence, TextIO

from wlancoex.engine import MetricRecord
from wlancoex.spectrum import (
    ZIGBEE_CHANNELS,
    WlanDeployment,
    ZigbeeChannel,
    free_zigbee_channels,
    overlap_fraction,
    overlaps,
    wlan_band,
)

CSV_HEADER = ("standard", "scenario", "ebno_db", "bits", "bit_errors", "packets", "packet_errors",
              "ber", "per", "throughput_bps", "seed")

# Count of interference-free 802.15.4 channels usually quoted for WLANs on 1/6/11.
QUOTED_FREE_COUNT = 3


def fmt(x: float) -> str:
    """Shortest text that parses back to the same float; integral values
    print without a decimal point."""
    x = float(x)
    if x.is_integer() and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def _row(r: MetricRecord) -> list[str]:
    return [r.standard, r.scenario, fmt(r.eb_n0_db), str(r.bits_simulated), str(r.bit_errors), str(r.packets),
            str(r.packet_errors), fmt(r.ber), fmt(r.per), fmt(r.throughput_bps), str(r.seed)]


def write_rows(path, header: Sequence[str], rows: Iterable[Sequence[str]], force: bool = False) -> None:
    """Write a CSV to ``path`` (or a text stream). Refuses to overwrite an
    existing file unless ``force``; the error names the path."""
    if hasattr(path, "write"):
        _write(path, header, rows)
        return
    mode = "w" if force else "x"
    try:
        with open(path, mode, newline="", encoding="utf-8") as fh:
            _write(fh, header, rows)
    except FileExistsError:
        raise FileExistsError(f"{path}: exists; pass --force to overwrite") from None
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from None


def _write(fh: TextIO, header, rows):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


def emit_csv(records: Sequence[MetricRecord], path, force: bool = False) -> None:
    if not records:
        raise ValueError("no records to write")
    write_rows(path, CSV_HEADER, (_row(r) for r in records), force=force)


def csv_text(records: Sequence[MetricRecord]) -> str:
    buf = io.StringIO()
    emit_csv(records, buf)
    return buf.getvalue()


def read_csv(path_or_text) -> list[dict]:
    """Parse a sweep CSV back into typed dictionaries."""
    if isinstance(path_or_text, (str, os.PathLike)) and os.path.exists(path_or_text):
        with open(path_or_text, newline="", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = str(path_or_text)
    ints = {"bits", "bit_errors", "packets", "packet_errors", "seed"}
    floats = {"ebno_db", "ber", "per", "throughput_bps"}
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        out.append({k: int(v) if k in ints else float(v) if k in floats else v for k, v in row.items()})
    return out


def _label(d: WlanDeployment) -> str:
    if d.width == 20:
        return f"{d.channel_number}@20"
    return f"{d.channel_number}@40{'+' if d.extension == 'above' else '-'}"


SPECTRUM_HEADER = ("zigbee_channel", "center_mhz", "overlapping_wlan", "overlap_fraction", "free")


def spectrum_report(deployments: Sequence[WlanDeployment]) -> tuple[str, list[list[str]]]:
    """Human-readable report plus CSV rows (one per 802.15.4 channel).

    ``overlap_fraction`` is the largest share of the 3 MHz channel covered by
    any single deployment.
    """
    bands = [(d, wlan_band(d)) for d in deployments]
    free = free_zigbee_channels(deployments)
    lines = ["WLAN deployments: " + (", ".join(
        f"{_label(d)} [{b.low:g}-{b.high:g} MHz]" for d, b in bands) or "none")]
    rows = []
    for ch in ZIGBEE_CHANNELS:
        z = ZigbeeChannel(ch)
        hits = [(d, overlap_fraction(z, b)) for d, b in bands if overlaps(z.band, b)]
        worst = max((f for _, f in hits), default=0.0)
        rows.append([str(ch), fmt(z.center), ";".join(_label(d) for d, _ in hits), fmt(worst),
                     "1" if ch in free else "0"])
        detail = ", ".join(f"{_label(d)} ({f:.3f})" for d, f in hits) or "-"
        lines.append(f"  ch{ch:2d} {z.center:g} MHz: {'FREE' if ch in free else 'overlaps ' + detail}")
    lines.append(f"free 802.15.4 channels ({len(free)}): "
                 + (", ".join(str(c) for c in sorted(free)) or "none"))
    classic = sorted((d.channel_number, d.width) for d in deployments) == [(1, 20), (6, 20), (11, 20)]
    if classic and len(free) != QUOTED_FREE_COUNT:
        lines.append(f"note: {QUOTED_FREE_COUNT} interference-free channels are commonly quoted for WLANs on "
                     f"1/6/11, but with 22 MHz WLAN and 3 MHz 802.15.4 widths only {len(free)} are free")
    return "\n".join(lines) + "\n", rows
