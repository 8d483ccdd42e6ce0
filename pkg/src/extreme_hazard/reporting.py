"""CSV and JSON exports laid out like the usual interval/fit/performance tables."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict
from enum import Enum
from pathlib import Path

import numpy as np

from .distfit import FAMILIES
from .intervals import stars


def write_csv(rows, path, fieldnames=None):
    rows = list(rows)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if fieldnames is None:
        fieldnames = list(rows[0]) if rows else []
    with path.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=fieldnames)
        w.writeheader()
        for r in rows:
            w.writerow({k: _fmt(v) for k, v in r.items()})
    return path


def _fmt(v):
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return v


def scan_rows(scan):
    for x, g, d, k in zip(scan.candidates, scan.gamma_inv, scan.ks_stat, scan.tail_counts):
        yield {"x": float(x), "inv_gamma": float(g), "ks": float(d), "k": int(k)}


def stats_row(stats, period="", kind="", threshold=""):
    r1, s1 = stats.acf.get(1, (math.nan, None))
    r5, s5 = stats.acf.get(5, (math.nan, None))
    q, dof, p = stats.lbq
    return {
        "period": period, "kind": kind, "threshold": threshold, "obsv": stats.n,
        "mean": stats.mean, "median": stats.median, "stdev": stats.stdev, "skew": stats.skew,
        "kurt": stats.kurt, "rho1": r1, "rho1_sig": stars(s1), "rho5": r5, "rho5_sig": stars(s5),
        "lbq": q, "lbq_dof": dof, "lbq_p": p,
    }


def fit_rows(comparison, period="", kind="", threshold=""):
    for fam in FAMILIES:
        f = comparison.fits[fam]
        yield {
            "period": period, "kind": kind, "threshold": threshold, "family": fam.value,
            "shape": f.shape, "log_lik": f.log_lik, "boundary": int(f.boundary),
            "winner": int(comparison.winner is fam),
        }


def hazard_rows(curve_rows, families):
    names = [f"W_{_abbrev(f)}" for f in families]
    for row in curve_rows:
        yield dict(zip(["t", "W_emp", *names], row))


def _abbrev(f):
    return {"stretched_exp": "sE", "q_exp": "qE", "weibull": "W"}[getattr(f, "value", f)]


def roc_rows(curve):
    for w, a, d in zip(curve.w, curve.A, curve.D):
        yield {"w": float(w), "A": float(a), "D": float(d)}


def _metric_cols(prefix, m):
    keys = ("A", "D", "U", "KSS")
    if m is None:
        return {f"{prefix}_{k}": math.nan for k in keys}
    return {f"{prefix}_{k}": getattr(m, k) for k in keys}


def report_rows(reports, table):
    """Rows of ``table`` ('stats', 'fits' or 'performance') across reports."""
    for rep in reports:
        period = rep.spec.label
        for c in rep.cells:
            base = {"period": period, "kind": c.kind, "threshold": c.threshold_label}
            if table == "stats":
                if c.stats is not None:
                    yield stats_row(c.stats, period, c.kind, c.threshold_label)
            elif table == "fits":
                if c.fits is not None:
                    yield from fit_rows(c.fits, period, c.kind, c.threshold_label)
            elif table == "performance":
                yield {
                    **base,
                    "x_t": c.threshold.x_t if c.threshold else math.nan,
                    "tau_q": c.threshold.tau_q if c.threshold else math.nan,
                    "family": c.family, "w_t": c.w_t, "useful": int(c.useful),
                    **_metric_cols("in", c.metrics_in), **_metric_cols("out", c.metrics_out),
                    "error": c.error or "",
                }
            else:
                raise ValueError(f"unknown table {table!r}")


def _jsonable(o):
    if isinstance(o, Enum):
        return o.value
    if isinstance(o, dict):
        return {str(getattr(k, "value", k)): _jsonable(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_jsonable(v) for v in o]
    if isinstance(o, np.ndarray):
        return _jsonable(o.tolist())
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (float, np.floating)):
        return None if math.isnan(o) else float(o)
    if hasattr(o, "__dataclass_fields__"):
        return _jsonable(asdict(o))
    return o


def write_bundle(reports, path, config=None):
    """Single JSON file with config and every per-cell artifact."""
    payload = {
        "config": _jsonable(config or {}),
        "splits": [
            {"spec": _jsonable(r.spec), "cells": [_jsonable(c) for c in r.cells]} for r in reports
        ],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=1, sort_keys=True))
    return path


def write_reports(reports, out_dir, config=None):
    out = Path(out_dir)
    write_csv(report_rows(reports, "stats"), out / "interval_stats.csv")
    write_csv(report_rows(reports, "fits"), out / "fits.csv")
    write_csv(report_rows(reports, "performance"), out / "performance.csv")
    write_bundle(reports, out / "bundle.json", config)
    return out
