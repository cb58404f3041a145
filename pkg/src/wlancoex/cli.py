"""Command-line entry point: ``wlancoex sweep | analytic | spectrum``.

Errors print one line ``error[<kind>]: <message>`` to stderr and exit 2
(configuration) or 3 (I/O).
"""

from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from wlancoex import analytic, report
from wlancoex.config import ConfigError, parse_config, parse_points
from wlancoex.engine import sweep
from wlancoex.profiles import Standard, db_to_linear, es_eb_offset_db, profile_for
from wlancoex.spectrum import WlanDeployment

EXIT_CONFIG = 2
EXIT_IO = 3

log = logging.getLogger("wlancoex")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def parse_wlan(spec: str) -> list[WlanDeployment]:
    """``"1:20,6:20,3:40+"`` -> deployments; ``+``/``-`` picks the 40 MHz
    extension above/below the primary channel."""
    out = []
    for item in filter(None, (s.strip() for s in spec.split(","))):
        try:
            ch, _, width = item.partition(":")
            width = width or "20"
            ext = {"+": "above", "-": "below"}.get(width[-1])
            if ext:
                width = width[:-1]
            out.append(WlanDeployment(int(ch), int(width), ext))
        except ValueError as exc:
            raise ConfigError(f"--wlan: bad deployment {item!r} ({exc}); expected ch:20 or ch:40+ / ch:40-") from None
    return out


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise OSError(f"{path}: {exc.strerror or exc}") from None


def cmd_sweep(args) -> None:
    overrides = dict(args.set or [])
    if args.preset:
        overrides["run.preset"] = args.preset
    if args.seed is not None:
        overrides["link.seed"] = str(args.seed)
    if args.workers is not None:
        overrides["run.workers"] = str(args.workers)
    text = _read(args.config) if args.config else ""
    plan = parse_config(text, overrides)
    records = []
    for std, cfg in plan.configs.items():
        log.info("sweeping %s over %d points", std.value, len(plan.points))
        recs = sweep(cfg, plan.points, workers=plan.workers)
        for r in recs:
            log.info("%s %s Eb/N0=%g dB ber=%.4g per=%.4g (iid per %.4g)", r.standard, r.scenario,
                     r.eb_n0_db, r.ber, r.per, r.per_analytic)
        records.extend(recs)
    report.emit_csv(records, args.out or sys.stdout, force=args.force)


def cmd_analytic(args) -> None:
    std = Standard.parse(args.standard)
    profile = profile_for(std)
    points = parse_points(args.ebno)
    rng = np.random.default_rng(args.seed)
    rows = []
    for eb_db in points:
        eb = db_to_linear(eb_db)
        es_db = eb_db + es_eb_offset_db(profile)
        if std is Standard.G:
            fading = analytic.ber_bpsk_rayleigh(eb)
        else:
            fading = analytic.ber_bpsk_mimo_semianalytic(eb, args.draws, rng)
        per = analytic.per_from_ber(fading, args.packet_length)
        rows.append([std.value, report.fmt(eb_db), report.fmt(es_db), report.fmt(analytic.ber_bpsk_awgn(eb)),
                     report.fmt(analytic.ser_bpsk_awgn(db_to_linear(es_db))), report.fmt(fading), report.fmt(per),
                     report.fmt(analytic.throughput_bps(profile.phy_bit_rate, per))])
    header = ("standard", "ebno_db", "esno_db", "ber_awgn", "ser_awgn", "ber_fading", "per_fading", "throughput_bps")
    report.write_rows(args.out or sys.stdout, header, rows, force=args.force)


def cmd_spectrum(args) -> None:
    deployments = parse_wlan(args.wlan or "")
    try:
        text, rows = report.spectrum_report(deployments)
    except ValueError as exc:
        raise ConfigError(f"--wlan: {exc}") from None
    sys.stdout.write(text)
    if args.out:
        report.write_rows(args.out, report.SPECTRUM_HEADER, rows, force=args.force)


def _kv(text: str):
    key, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected section.key=value, got {text!r}")
    return key.strip(), value.strip()


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="log progress (-vv for debug)")
    p = _Parser(prog="wlancoex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", parents=[common], help="Monte Carlo BER/PER/throughput sweep")
    s.add_argument("--config", help="INI config file")
    s.add_argument("--preset", help="fig6 | fig7 | fig8 | fig9 | fig10")
    s.add_argument("--out", help="output CSV (default: stdout)")
    s.add_argument("--seed", type=int)
    s.add_argument("--workers", type=int)
    s.add_argument("--set", type=_kv, action="append", metavar="SECTION.KEY=VALUE",
                   help="override a config key (repeatable)")
    s.add_argument("--force", action="store_true", help="overwrite --out if it exists")
    s.set_defaults(func=cmd_sweep)

    a = sub.add_parser("analytic", parents=[common], help="closed-form and semi-analytic BER curves")
    a.add_argument("--standard", required=True, choices=["g", "n"])
    a.add_argument("--ebno", required=True, help="start:step:stop or comma list, dB")
    a.add_argument("--out")
    a.add_argument("--draws", type=int, default=100_000, help="channel draws for the 2x2 average")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--packet-length", type=int, default=1024)
    a.add_argument("--force", action="store_true")
    a.set_defaults(func=cmd_analytic)

    sp = sub.add_parser("spectrum", parents=[common], help="802.15.4 channels left free by WLAN deployments")
    sp.add_argument("--wlan", default="", help="e.g. 1:20,6:20,11:20 or 3:40+,11:40-")
    sp.add_argument("--out")
    sp.add_argument("--force", action="store_true")
    sp.set_defaults(func=cmd_spectrum)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
        args.func(args)
    except ConfigError as exc:
        print(f"error[config]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error[config]: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return 0


if __name__ == "__main__":
    sys.exit(main())
