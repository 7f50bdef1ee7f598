"""Ensemble runner: one independent trajectory per (p, t, replica) cell.

Cell seeds come from :func:`pae.growth.derive_seed` applied to
``(master_seed, p_index, t_index, replica)``. Rows already in the output CSV
(keyed by ``(p, seed, t)``) are not recomputed, so an interrupted sweep can
simply be started again.
"""

from __future__ import annotations

import csv
import logging
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Iterable, Iterator

from pae.growth import ModelParams, derive_seed, generate
from pae.observables import CSV_HEADER, ObservableRecord, measure

from .config import SweepConfig

log = logging.getLogger(__name__)


def read_records(path) -> list[ObservableRecord]:
    path = Path(path)
    if not path.exists():
        return []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_HEADER.split(","):
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        return [ObservableRecord.from_row(row) for row in reader]


def write_records(records: Iterable[ObservableRecord], path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER.split(","))
        for r in records:
            w.writerow(r.to_row())


def _cells(config: SweepConfig):
    for pi, p in enumerate(config.p_values):
        for ti, t in enumerate(config.t_grid):
            for rep in range(config.replicas):
                yield p, t, derive_seed(config.master_seed, pi, ti, rep)


def _cell_times(config: SweepConfig, t: int) -> list[int]:
    return sorted({s for s in config.snapshot_times if s < t}) + [t]


def _run_cell(args) -> list[ObservableRecord]:
    p, t, seed, times, obs, pool = args
    graph, _ = generate(ModelParams(p, t, seed))
    rows = []
    for s in times:
        g = graph if s == t else graph.prefix(s)
        rows.append(measure(
            g, p=p, seed=seed,
            triangles="triangles" in obs or "tau" in obs,
            clique_pool_k=pool if "clique_lb" in obs else None,
            exact_clique="clique_exact" in obs,
        ))
    return rows


def run_ensemble(config: SweepConfig, path=None) -> Iterator[ObservableRecord]:
    """Run every missing cell, append its rows to ``path`` and yield them.

    ``path`` defaults to ``<output_dir>/records.csv``.
    """
    path = Path(path) if path is not None else config.records_path
    path.parent.mkdir(parents=True, exist_ok=True)
    done = {r.key for r in read_records(path)}
    pending = []
    for p, t, seed in _cells(config):
        times = _cell_times(config, t)
        if all((p, seed, s) in done for s in times):
            continue
        pending.append((p, t, seed, times, tuple(config.observables), config.clique_pool_k))
    log.info("%d cells pending, %d rows already present", len(pending), len(done))

    new_file = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        if new_file:
            writer.writerow(CSV_HEADER.split(","))
            fh.flush()
        if config.workers > 1:
            pool = ProcessPoolExecutor(max_workers=config.workers)
            results = pool.map(_run_cell, pending)
        else:
            pool = None
            results = map(_run_cell, pending)
        try:
            for rows in results:
                for row in rows:
                    if row.key in done:
                        continue
                    done.add(row.key)
                    writer.writerow(row.to_row())
                    yield row
                fh.flush()
        finally:
            if pool is not None:
                pool.shutdown(cancel_futures=True)
