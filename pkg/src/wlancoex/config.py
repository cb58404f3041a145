"""INI run configuration and the figure presets.

A document has up to three sections::

    [run]
    preset = fig7            ; optional, fills in everything below
    standards = g,n
    eb_n0_points = 0:2:20    ; start:step:stop (inclusive) or a comma list
    workers = 1

    [link]
    channel = rayleigh       ; awgn_identity | rayleigh
    packet_length_bits = 1024
    min_bit_errors = 100
    max_bits = 10000000
    min_bits = 0
    seed = 0

    [interference]
    mode = periodic          ; off | periodic | poisson
    scenario = both_interfered
    period_bits_g = 24
    period_bits_n = 120
    mean_interarrival_bits_g = 24
    mean_interarrival_bits_n = 120
    burst_length_bits = 1
    interferer_to_noise_db = 10
    overlap_fraction = 1.0

Keys from overrides (``section.key`` -> value) take precedence over the
document, which takes precedence over the preset.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass

import numpy as np

from wlancoex.channel import InterferenceMode, InterferenceModel, Scenario
from wlancoex.engine import ChannelKind, LinkConfig, StopRule
from wlancoex.profiles import Standard, profile_for


class ConfigError(ValueError):
    pass


# 802.15.4 at 250 kb/s against the BPSK PHY rates
PERIOD_BITS = {Standard.G: 24, Standard.N: 120}

_DEFAULT_POINTS = "0:2:20"

PRESETS: dict[str, dict[str, str]] = {
    "fig6": {"interference.mode": "off"},
    "fig7": {"interference.mode": "periodic", "interference.scenario": "both_interfered"},
    "fig8": {"interference.mode": "periodic", "interference.scenario": "n_only"},
    "fig9": {"interference.mode": "periodic", "interference.scenario": "both_interfered", "run.standards": "g"},
    "fig10": {"interference.mode": "periodic", "interference.scenario": "both_interfered", "run.standards": "n"},
}
_PRESET_COMMON = {"link.channel": "rayleigh", "run.eb_n0_points": _DEFAULT_POINTS}

REQUIRED = ("run.eb_n0_points", "link.channel", "interference.mode")

_DEFAULTS = {
    "run.standards": "g,n",
    "run.workers": "1",
    "link.packet_length_bits": "1024",
    "link.min_bit_errors": "100",
    "link.max_bits": "10000000",
    "link.min_bits": "0",
    "link.seed": "0",
    "interference.scenario": "both_interfered",
    "interference.period_bits_g": str(PERIOD_BITS[Standard.G]),
    "interference.period_bits_n": str(PERIOD_BITS[Standard.N]),
    "interference.mean_interarrival_bits_g": str(PERIOD_BITS[Standard.G]),
    "interference.mean_interarrival_bits_n": str(PERIOD_BITS[Standard.N]),
    "interference.burst_length_bits": "1",
    "interference.interferer_to_noise_db": "10",
    "interference.overlap_fraction": "1.0",
}
KNOWN_KEYS = frozenset(_DEFAULTS) | frozenset(REQUIRED) | {"run.preset"}


@dataclass(frozen=True)
class SweepPlan:
    configs: dict[Standard, LinkConfig]
    points: tuple[float, ...]
    workers: int = 1

    @property
    def pair(self) -> tuple[LinkConfig, LinkConfig]:
        return self.configs.get(Standard.G), self.configs.get(Standard.N)


def parse_points(text: str) -> tuple[float, ...]:
    """``"0:2:20"`` -> 0, 2, ..., 20; ``"0,5,7.5"`` -> those values."""
    text = text.strip()
    try:
        if ":" in text:
            parts = [float(p) for p in text.split(":")]
            if len(parts) != 3:
                raise ValueError
            start, step, stop = parts
            if not step > 0 or stop < start:
                raise ConfigError(f"run.eb_n0_points: range {text!r} needs step > 0 and stop >= start")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            points = tuple(float(np.round(start + i * step, 12)) for i in range(n))
        else:
            points = tuple(float(p) for p in text.split(",") if p.strip())
    except ValueError:
        raise ConfigError(f"run.eb_n0_points: cannot parse {text!r}; expected start:step:stop or a comma list") from None
    if not points:
        raise ConfigError("run.eb_n0_points: no points given")
    return points


def _flatten(text: str) -> dict[str, str]:
    parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"), interpolation=None)
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"malformed config: {str(exc).splitlines()[0]}") from None
    flat = {}
    for section in parser.sections():
        for key, value in parser.items(section):
            flat[f"{section}.{key}"] = value
    return flat


def _get(values, key, kind, lo=None, hi=None, accepted=None):
    raw = values[key]
    try:
        value = kind(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: invalid value {raw!r}; accepted: {accepted or kind.__name__}") from None
    if (lo is not None and value < lo) or (hi is not None and value > hi):
        bounds = f"[{lo if lo is not None else '-inf'}, {hi if hi is not None else 'inf'}]"
        raise ConfigError(f"{key}: {raw!r} out of range; accepted: {accepted or bounds}")
    return value


def _choice(values, key, enum_cls):
    names = [m.value for m in enum_cls]
    return _get(values, key, lambda v: enum_cls(v.strip().lower()), accepted="|".join(names))


def parse_config(text: str, overrides: dict[str, str] | None = None) -> SweepPlan:
    """Validate a config document and build the per-standard link configs."""
    doc = _flatten(text)
    overrides = dict(overrides or {})
    for key in list(doc) + list(overrides):
        if key not in KNOWN_KEYS:
            raise ConfigError(f"{key}: unknown key; known keys: {', '.join(sorted(KNOWN_KEYS))}")
    preset_name = overrides.get("run.preset", doc.get("run.preset"))
    values = dict(_DEFAULTS)
    if preset_name is not None:
        preset_name = preset_name.strip().lower()
        if preset_name not in PRESETS:
            raise ConfigError(f"run.preset: unknown preset {preset_name!r}; accepted: {'|'.join(PRESETS)}")
        values.update(_PRESET_COMMON)
        values.update(PRESETS[preset_name])
    values.update(doc)
    values.update(overrides)
    missing = [k for k in REQUIRED if k not in values]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)} (or set run.preset)")

    points = parse_points(values["run.eb_n0_points"])
    try:
        standards = [Standard.parse(s) for s in values["run.standards"].split(",") if s.strip()]
    except ValueError:
        raise ConfigError(f"run.standards: invalid value {values['run.standards']!r}; accepted: g, n, g,n") from None
    if not standards:
        raise ConfigError("run.standards: at least one of g, n required")
    workers = _get(values, "run.workers", int, lo=1)

    stop = StopRule(
        min_bit_errors=_get(values, "link.min_bit_errors", int, lo=1),
        max_bits=_get(values, "link.max_bits", int, lo=1),
        min_bits=_get(values, "link.min_bits", int, lo=0),
    )
    packet_length = _get(values, "link.packet_length_bits", int, lo=1)
    if stop.max_bits < packet_length:
        raise ConfigError(f"link.max_bits: must be >= link.packet_length_bits ({packet_length})")
    channel = _choice(values, "link.channel", ChannelKind)
    seed = _get(values, "link.seed", int, lo=0)
    mode = _choice(values, "interference.mode", InterferenceMode)
    scenario = _choice(values, "interference.scenario", Scenario)

    configs = {}
    for std in dict.fromkeys(standards):
        suffix = std.value
        interference = InterferenceModel(
            mode=mode,
            period_bits=_get(values, f"interference.period_bits_{suffix}", int, lo=1),
            mean_interarrival_bits=_get(values, f"interference.mean_interarrival_bits_{suffix}", float, lo=1e-9),
            burst_length_bits=_get(values, "interference.burst_length_bits", int, lo=1),
            interferer_to_noise_db=_get(values, "interference.interferer_to_noise_db", float, lo=-300, hi=300),
            overlap_fraction=_get(values, "interference.overlap_fraction", float, lo=0.0, hi=1.0),
            scenario=scenario,
        )
        configs[std] = LinkConfig(
            profile=profile_for(std),
            channel_kind=channel,
            interference=interference,
            packet_length_bits=packet_length,
            stop_rule=stop,
            master_seed=seed,
        )
    return SweepPlan(configs=configs, points=points, workers=workers)
