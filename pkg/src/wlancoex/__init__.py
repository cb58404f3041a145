"""Link-level simulator for 802.11g / 802.11n BPSK-OFDM links under
802.15.4 interference, with closed-form error-rate curves and a 2.4 GHz
channel-overlap planner."""

from wlancoex.profiles import OfdmProfile, Standard, profile_for, es_eb_offset_db, bits_per_ofdm_symbol
from wlancoex.channel import FadingRealization, InterferenceModel, NoiseBudget
from wlancoex.engine import LinkConfig, MetricRecord, StopRule, run_point, sweep, compare_scenarios

__all__ = [
    "OfdmProfile", "Standard", "profile_for", "es_eb_offset_db", "bits_per_ofdm_symbol",
    "FadingRealization", "InterferenceModel", "NoiseBudget",
    "LinkConfig", "MetricRecord", "StopRule", "run_point", "sweep", "compare_scenarios",
]
__version__ = "0.1.0"
