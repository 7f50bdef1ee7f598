import pytest

from pae.growth import ModelParams, generate, init_graph, log_from_graph
from pae.snapshot import SnapshotError, format_log, parse_log, read_snapshot, write_snapshot


@pytest.mark.parametrize("name", ["log.txt", "log.txt.gz"])
def test_roundtrip_t1000(tmp_path, name):
    g, log = generate(ModelParams(0.45, 1000, 2**63 + 5))
    path = tmp_path / name
    write_snapshot(log, path)
    g2, log2 = read_snapshot(path)
    assert log2 == log
    assert g2 == g


def test_roundtrip_g1(tmp_path):
    g = init_graph(ModelParams(0.5, 1, 3))
    write_snapshot(g, tmp_path / "g1.txt")
    g2, log2 = read_snapshot(tmp_path / "g1.txt")
    assert g2 == g and log2 == log_from_graph(g)


def test_format_layout():
    _, log = generate(ModelParams(1.0, 3, 0))
    assert format_log(log).splitlines() == [
        "# pa-edgestep-log v1", "p=1.0 seed=0 t=3", "V 1", f"V {log.first[1]}",
    ]


def _lines(*records, header="p=0.5 seed=1 t={t}"):
    return ["# pa-edgestep-log v1", header.format(t=len(records) + 1), *records]


def test_unborn_vertex_names_line():
    with pytest.raises(SnapshotError) as exc:
        parse_log(_lines("V 1", "E 5 2"))
    assert exc.value.line == 4
    assert "line 4" in str(exc.value)


@pytest.mark.parametrize("header", ["p=1.5 seed=1 t={t}", "p=-0.1 seed=1 t={t}",
                                    "p=0.5 t={t}", "p=0.5 seed=-3 t={t}",
                                    "p=0.5 seed=1 t=0"])
def test_bad_header_rejected(header):
    with pytest.raises(SnapshotError) as exc:
        parse_log(_lines("V 1", header=header))
    assert exc.value.line == 2


def test_bad_magic():
    with pytest.raises(SnapshotError) as exc:
        parse_log(["# something else", "p=0.5 seed=1 t=1"])
    assert exc.value.line == 1


def test_unknown_tag():
    with pytest.raises(SnapshotError, match="unknown record tag") as exc:
        parse_log(_lines("V 1", "X 1 1"))
    assert exc.value.line == 4


def test_record_count_must_match_t():
    with pytest.raises(SnapshotError):
        parse_log(["# pa-edgestep-log v1", "p=0.5 seed=1 t=4", "V 1"])
    with pytest.raises(SnapshotError):
        parse_log(["# pa-edgestep-log v1", "p=0.5 seed=1 t=2", "V 1", "V 1"])
