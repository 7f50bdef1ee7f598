"""Line-oriented text format for step logs (optionally gzip-compressed).

    # pa-edgestep-log v1
    p=<decimal> seed=<u64> t=<u64>
    V <target>          one line per step s = 2..t
    E <u> <w>
"""

from __future__ import annotations

import gzip
import io
import re
from pathlib import Path

import numpy as np

from pae.growth import ID_DTYPE, GrowthGraph, ModelParams, StepLog, log_from_graph, replay

MAGIC = "# pa-edgestep-log v1"
_HEADER = re.compile(r"^p=(\S+) seed=(\d+) t=(\d+)$")


class SnapshotError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _open(path: Path, mode: str):
    if path.suffix == ".gz":
        return gzip.open(path, mode + "t", encoding="utf-8", newline="\n")
    return open(path, mode, encoding="utf-8", newline="\n")


def format_log(log: StepLog) -> str:
    params = log.params
    out = io.StringIO()
    out.write(f"{MAGIC}\np={params.p!r} seed={params.seed} t={log.t}\n")
    for kind, a, b in zip(log.kinds.tolist(), log.first.tolist(), log.second.tolist()):
        out.write(f"V {a}\n" if kind else f"E {a} {b}\n")
    return out.getvalue()


def write_snapshot(obj: StepLog | GrowthGraph, destination) -> None:
    """Write a StepLog (or the log recovered from a graph) to ``destination``."""
    log = log_from_graph(obj) if isinstance(obj, GrowthGraph) else obj
    with _open(Path(destination), "w") as fh:
        fh.write(format_log(log))


def parse_log(lines) -> StepLog:
    it = iter(lines)
    first_line = next(it, None)
    if first_line is None or first_line.rstrip("\n") != MAGIC:
        raise SnapshotError(1, f"expected {MAGIC!r}")
    header = next(it, None)
    m = _HEADER.match(header.rstrip("\n")) if header is not None else None
    if m is None:
        raise SnapshotError(2, "malformed header, expected 'p=<decimal> seed=<u64> t=<u64>'")
    try:
        params = ModelParams(float(m.group(1)), int(m.group(3)), int(m.group(2)))
    except ValueError as exc:
        raise SnapshotError(2, str(exc)) from None
    n_rec = params.t_max - 1
    kinds = np.zeros(n_rec, dtype=np.uint8)
    first = np.zeros(n_rec, dtype=ID_DTYPE)
    second = np.zeros(n_rec, dtype=ID_DTYPE)
    n = 1
    k = 0
    for lineno, line in enumerate(it, start=3):
        parts = line.split()
        if not parts:
            continue
        if k >= n_rec:
            raise SnapshotError(lineno, f"more records than t={params.t_max} allows")
        tag = parts[0]
        try:
            ids = [int(x) for x in parts[1:]]
        except ValueError:
            raise SnapshotError(lineno, f"non-integer vertex id in {line.strip()!r}") from None
        if tag == "V" and len(ids) == 1:
            if not 1 <= ids[0] <= n:
                raise SnapshotError(lineno, f"vertex {ids[0]} does not exist yet ({n} alive)")
            kinds[k], first[k] = 1, ids[0]
            n += 1
        elif tag == "E" and len(ids) == 2:
            for v in ids:
                if not 1 <= v <= n:
                    raise SnapshotError(lineno, f"vertex {v} does not exist yet ({n} alive)")
            first[k], second[k] = ids
        elif tag in ("V", "E"):
            raise SnapshotError(lineno, f"wrong number of fields for record {tag!r}")
        else:
            raise SnapshotError(lineno, f"unknown record tag {tag!r}")
        k += 1
    if k != n_rec:
        raise SnapshotError(k + 3, f"expected {n_rec} records, found {k}")
    return StepLog(params, kinds, first, second)


def read_snapshot(source) -> tuple[GrowthGraph, StepLog]:
    with _open(Path(source), "r") as fh:
        log = parse_log(fh)
    return replay(log), log
