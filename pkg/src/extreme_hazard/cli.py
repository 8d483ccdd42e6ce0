"""Command line entry point: ``python -m extreme_hazard <command> ...``.

Exit codes: 0 success, 1 input error, 2 numeric failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import backtest as bt
from .distfit import FAMILIES, compare_fits
from .extremes import EventSeries, mark_extremes, scan_evt_threshold, select_threshold
from .forecast import roc
from .hazard import hazard_curve
from .intervals import describe, extract_intervals
from .reporting import (fit_rows, hazard_rows, roc_rows, scan_rows, stats_row, write_csv,
                        write_reports)
from .synthetic import garch_prices
from .timeseries import PriceDataError, compute_returns, load_prices

log = logging.getLogger("extreme_hazard")

CONFIG_KEYS = {"input", "kind", "threshold", "dt", "theta", "grid", "out", "seed", "period",
               "calibration", "prediction", "tmax"}


class InputError(Exception):
    pass


def read_config(path):
    """``key=value`` lines; ``#`` starts a comment. Keys use flag names."""
    cfg = {}
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in CONFIG_KEYS:
            raise InputError(f"{path}:{lineno}: unknown key {key!r}")
        cfg[key] = value
    return cfg


def _range(text):
    try:
        a, b = text.split(":")
        np.datetime64(a, "D"), np.datetime64(b, "D")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:END dates, got {text!r}") from None
    return a, b


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags given explicitly win")
    common.add_argument("--input", help="two-column date,level CSV")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for a synthetic GARCH series when --input is absent")
    common.add_argument("--kind", choices=["negative", "positive", "absolute", "all"],
                        default="all")
    common.add_argument("--threshold", choices=list(bt.THRESHOLDS) + ["all"], default="all")
    common.add_argument("--dt", type=int, default=1)
    common.add_argument("--theta", type=float, default=0.5)
    common.add_argument("--grid", choices=["fast", "exhaustive"], default="fast")
    common.add_argument("--out", default="out")
    common.add_argument("--period", type=_range, help="START:END subset to analyse")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="extreme-hazard", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("scan", parents=[common], help="Hill/KS threshold scan export")
    sub.add_parser("fit", parents=[common], help="interval statistics and distribution fits")
    hz = sub.add_parser("hazard", parents=[common], help="hazard curves, empirical and fitted")
    hz.add_argument("--tmax", type=int, default=500)
    b = sub.add_parser("backtest", parents=[common], help="one calibration/prediction split")
    b.add_argument("--calibration", type=_range, required=False)
    b.add_argument("--prediction", type=_range, required=False)
    sub.add_parser("suite", parents=[common], help="the six fixed 1885-2015 splits")
    return p


def parse_args(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        try:
            cfg = read_config(args.config)
        except OSError as exc:
            raise InputError(str(exc)) from exc
        explicit = {a.split("=", 1)[0].lstrip("-").replace("-", "_")
                    for a in (argv if argv is not None else sys.argv[1:]) if a.startswith("--")}
        merged = [args.command]
        for k, v in cfg.items():
            if k not in explicit:
                merged += [f"--{k}", v]
        for a in (argv if argv is not None else sys.argv[1:])[1:]:
            merged.append(a)
        args = parser.parse_args(merged)
    return args


def _prices(args):
    if args.input:
        return load_prices(args.input)
    log.info("no --input given; using a synthetic GARCH series (seed=%d)", args.seed)
    return garch_prices(n=34000, seed=args.seed, start="1885-02-16")


def _kinds(args):
    return list(bt.KINDS) if args.kind == "all" else [args.kind]


def _labels(args):
    return list(bt.THRESHOLDS) if args.threshold == "all" else [args.threshold]


def _returns(prices, kind, args):
    r = compute_returns(prices, kind)
    return r.between(*args.period) if args.period else r


def cmd_scan(args, prices, out):
    for kind in _kinds(args):
        scan = scan_evt_threshold(_returns(prices, kind, args))
        thr = select_threshold(scan)
        path = write_csv(scan_rows(scan), out / f"scan_{kind}.csv")
        print(f"{kind}: x_t={thr.x_t:.6g} k={round(scan.n / thr.tau_q)} tau={thr.tau_q:.3f} -> {path}")


def _cells(args, prices):
    for kind in _kinds(args):
        r = _returns(prices, kind, args)
        for label in _labels(args):
            thr = bt.calibrate_threshold(r, label)
            yield kind, label, thr, extract_intervals(mark_extremes(r, thr))


def cmd_fit(args, prices, out):
    stats, fits = [], []
    period = ":".join(args.period) if args.period else ""
    for kind, label, thr, iv in _cells(args, prices):
        stats.append(stats_row(describe(iv), period, kind, label))
        cmp = compare_fits(iv, thr.tau_q, args.grid)
        fits.extend(fit_rows(cmp, period, kind, label))
        shapes = " ".join(f"{f.value}={cmp[f].shape:.6f}({cmp[f].log_lik:.3f})" for f in FAMILIES)
        print(f"{kind}/{label}: n={iv.n} {shapes} winner={cmp.winner.value}")
    write_csv(stats, out / "interval_stats.csv")
    write_csv(fits, out / "fits.csv")


def cmd_hazard(args, prices, out):
    ts = np.arange(0, args.tmax + 1)
    for kind, label, thr, iv in _cells(args, prices):
        cmp = compare_fits(iv, thr.tau_q, args.grid)
        rows = hazard_curve(iv, cmp.fits, ts, args.dt)
        path = write_csv(hazard_rows(rows, list(cmp.fits)), out / f"hazard_{kind}_{label}.csv")
        print(f"{kind}/{label}: {path}")


def cmd_backtest(args, prices, out):
    if not (args.calibration and args.prediction):
        raise InputError("backtest needs --calibration START:END and --prediction START:END")
    spec = bt.SplitSpec(args.calibration, args.prediction, tuple(_kinds(args)),
                        tuple(_labels(args)), args.dt, args.theta, args.grid, label="split")
    report = bt.run_split(prices, spec)
    write_reports([report], out, vars(args))
    returns = {k: compute_returns(prices, k) for k in spec.kinds}
    for c in report.cells:
        if c.error:
            print(f"{c.kind}/{c.threshold_label}: ERROR {c.error}")
            continue
        r = returns[c.kind].between(*spec.calibration)
        ev = mark_extremes(r, c.threshold)
        first = int(ev.indices[0])
        ev = EventSeries(ev.dates[first:], ev.flags[first:], c.threshold)
        write_csv(roc_rows(roc(c.fits[c.family], ev, spec.dt)),
                  out / f"roc_{c.kind}_{c.threshold_label}.csv")
        mo = c.metrics_out
        tail = "out: undefined" if mo is None else f"out KSS={mo.KSS:.3f} U={mo.U:.3f}"
        print(f"{c.kind}/{c.threshold_label}: w_t={c.w_t:.4f} in KSS={c.metrics_in.KSS:.3f} "
              f"U={c.metrics_in.U:.3f} | {tail}")
    return report


def cmd_suite(args, prices, out):
    reports = bt.run_reference_suite(prices, _kinds(args), _labels(args), args.dt, args.theta,
                                 args.grid)
    write_reports(reports, out, vars(args))
    n = sum(len(r.cells) for r in reports)
    bad = sum(c.error is not None for r in reports for c in r.cells)
    print(f"{n} report rows ({bad} failed) -> {out}")
    return reports


COMMANDS = {"scan": cmd_scan, "fit": cmd_fit, "hazard": cmd_hazard, "backtest": cmd_backtest,
            "suite": cmd_suite}


def main(argv=None):
    try:
        args = parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    out = Path(args.out)
    try:
        prices = _prices(args)
        out.mkdir(parents=True, exist_ok=True)
        COMMANDS[args.command](args, prices, out)
    except (InputError, PriceDataError, bt.CoverageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
