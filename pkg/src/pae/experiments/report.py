"""JSON summary plus plot-ready per-observable CSVs."""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Sequence

import numpy as np

from pae.observables import ObservableRecord
from pae.theory import TheoryExponents

from .fitting import OBSERVABLES, ExponentFit

SERIES = ("n_vertices", "max_degree", "cherries_simple", "cherries_multi", "triangles",
          "tau", "clique_lb", "clique_exact", "gamma_t_1")


def aggregate(records: Sequence[ObservableRecord], attr: str) -> list[dict]:
    """Rows of (p, t, mean, stderr, n) for one record column, undefined values skipped."""
    groups: dict[tuple[float, int], list[float]] = {}
    for r in records:
        v = getattr(r, attr)
        if v is not None:
            groups.setdefault((r.p, r.t), []).append(float(v))
    rows = []
    for (p, t), vals in sorted(groups.items()):
        a = np.asarray(vals)
        se = float(a.std(ddof=1) / math.sqrt(len(a))) if len(a) > 1 else None
        rows.append({"p": p, "t": t, "mean": float(a.mean()), "stderr": se, "n": len(a)})
    return rows


def _as_dict(obj):
    return obj.as_dict() if hasattr(obj, "as_dict") else obj


def report(records: Sequence[ObservableRecord], fits: Sequence[ExponentFit] = (),
           diagnostics: dict | None = None, out_dir=None) -> dict:
    """Build the summary dict; with ``out_dir`` also write ``summary.json``,
    ``fits.json``, ``diagnostics.json`` and ``series_<column>.csv`` files.

    Fitted and theory exponents share one sign convention: growth is positive,
    so the clustering coefficient carries a negative exponent.
    """
    diagnostics = {k: _as_dict(v) for k, v in (diagnostics or {}).items()}
    p_values = sorted({r.p for r in records} | {f.p for f in fits})
    summary = {
        "n_records": len(records),
        "tau_undefined_cells": sum(1 for r in records if r.tau is None and r.triangles is not None),
        "theory": [TheoryExponents.at(p).as_dict() for p in p_values],
        "fits": [
            {**f.as_dict(), "deviation": f.slope - f.theory_exponent} for f in fits
        ],
        "diagnostics": diagnostics,
        "series": {attr: aggregate(records, attr) for attr in SERIES},
    }
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "summary.json").write_text(json.dumps(summary, indent=2) + "\n")
        (out / "fits.json").write_text(json.dumps(summary["fits"], indent=2) + "\n")
        (out / "diagnostics.json").write_text(json.dumps(diagnostics, indent=2) + "\n")
        for attr, rows in summary["series"].items():
            with open(out / f"series_{attr}.csv", "w", newline="") as fh:
                w = csv.DictWriter(fh, ["p", "t", "mean", "stderr", "n"], lineterminator="\n")
                w.writeheader()
                for row in rows:
                    w.writerow({k: "" if v is None else v for k, v in row.items()})
    return summary
