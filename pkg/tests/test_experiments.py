import csv
import itertools
import json
import math

import numpy as np
import pytest

from pae.experiments import (
    FitError, SweepConfig, degree_tail_diagnostic, fit_exponent, martingale_diagnostic,
    read_records, report, run_ensemble, theory_exponent,
)
from pae.experiments.config import parse_config
from pae.observables import ObservableRecord


def _record(p, t, seed, **values):
    base = dict(p=p, seed=seed, t=t, n_vertices=1, n_edges=t, max_degree=2,
                cherries_simple=1, cherries_multi=1, triangles=0, tau=None, clique_lb=1,
                clique_exact=None, gamma_t_1=0, wall_millis=0.0)
    base.update(values)
    return ObservableRecord(**base)


def _rows_without_timing(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return [r[:-1] for r in rows]


# -- config ---------------------------------------------------------------------

def test_parse_config():
    cfg = parse_config("p_values = 0.2, 0.5\nt_grid = 100 200 400\nreplicas = 3\n"
                       "master_seed = 9\nobservables = triangles, tau\nsnapshot_times = 50\n"
                       "output_dir = out\n")
    assert cfg.p_values == [0.2, 0.5] and cfg.t_grid == [100, 200, 400]
    assert cfg.observables == ["triangles", "tau"] and cfg.snapshot_times == [50]


@pytest.mark.parametrize("text", [
    "p_values = 0.5\nt_grid = 10 20\ncolour = red\n",
    "p_values = 0.5\nt_grid = 20 10\n",
    "p_values = 1.5\nt_grid = 10 20\n",
    "p_values = 0.5\nt_grid = 10 20\nreplicas = 0\n",
    "p_values = 0.5\nt_grid = 10 20\nobservables = diameter\n",
    "t_grid = 10 20\n",
])
def test_bad_config_rejected(text):
    with pytest.raises(ValueError):
        parse_config(text)


# -- ensemble -------------------------------------------------------------------

def test_ensemble_cardinality_and_idempotence(tmp_path):
    cfg = SweepConfig([0.5], [64, 128, 256], replicas=2, master_seed=3,
                      snapshot_times=[32], output_dir=str(tmp_path))
    rows = list(run_ensemble(cfg))
    main = [r for r in rows if r.t in cfg.t_grid]
    assert len(main) == 6 and len(rows) == 12
    assert list(run_ensemble(cfg)) == []
    keys = [r.key for r in read_records(cfg.records_path)]
    assert len(keys) == len(set(keys)) == 12
    for r in rows:
        assert 3 * r.triangles <= r.cherries_simple
        assert r.tau is None or 0 <= r.tau <= 1


def test_ensemble_trees(tmp_path):
    cfg = SweepConfig([1.0], [50, 100, 200], replicas=3, output_dir=str(tmp_path))
    assert all(r.triangles == 0 for r in run_ensemble(cfg))


def test_interrupted_sweep_resumes_to_same_csv(tmp_path):
    kwargs = dict(p_values=[0.3, 0.6], t_grid=[100, 300], replicas=3, master_seed=1,
                  snapshot_times=[60])
    full = SweepConfig(output_dir=str(tmp_path / "full"), **kwargs)
    list(run_ensemble(full))
    part = SweepConfig(output_dir=str(tmp_path / "part"), **kwargs)
    gen = run_ensemble(part)
    list(itertools.islice(gen, 7))
    gen.close()
    assert len(read_records(part.records_path)) == 7
    list(run_ensemble(part))
    assert _rows_without_timing(part.records_path) == _rows_without_timing(full.records_path)


def test_worker_pool_matches_serial(tmp_path):
    kwargs = dict(p_values=[0.5], t_grid=[100, 200, 400], replicas=2, master_seed=8)
    serial = SweepConfig(output_dir=str(tmp_path / "a"), **kwargs)
    pooled = SweepConfig(output_dir=str(tmp_path / "b"), workers=2, **kwargs)
    list(run_ensemble(serial))
    list(run_ensemble(pooled))
    assert _rows_without_timing(serial.records_path) == _rows_without_timing(pooled.records_path)


# -- fitting --------------------------------------------------------------------

def test_fit_exact_power_law():
    recs = [_record(0.5, t, s, cherries_simple=t**2) for t in (2**k for k in range(6, 12))
            for s in range(3)]
    fit = fit_exponent(recs, "cherries", 0.5)
    assert abs(fit.slope - 2.0) <= 1e-9
    assert fit.stderr <= 1e-9 and fit.stderr_bootstrap <= 1e-9
    assert fit.theory_exponent == 1.5
    assert fit.n_points == 6 and fit.n_replicas == 3


def test_fit_log_corrected_curve_bias():
    ts = [2**k for k in range(12, 19)]
    values = [t**1.5 * math.log(t) ** 2 for t in ts]
    recs = [_record(0.5, t, 0, cherries_simple=round(v)) for t, v in zip(ts, values)]
    fit = fit_exponent(recs, "cherries", 0.5)
    oracle_slope = np.polyfit(np.log(ts), np.log(values), 1)[0]
    assert 1.5 < fit.slope < 1.75
    assert fit.slope == pytest.approx(oracle_slope, abs=1e-6)


def test_fit_drops_nonpositive_and_refuses_short_grids():
    recs = [_record(0.5, t, 0, triangles=(0 if t < 400 else t)) for t in (100, 200, 400, 800, 1600)]
    fit = fit_exponent(recs, "triangles", 0.5)
    assert fit.dropped_t == [100, 200] and fit.n_points == 3
    with pytest.raises(FitError, match="need at least 3"):
        fit_exponent(recs[:4], "triangles", 0.5)
    with pytest.raises(FitError):
        fit_exponent(recs, "diameter", 0.5)


def test_fit_tau_skips_undefined():
    recs = [_record(0.5, t, s, tau=(None if s == 0 else 1.0 / t)) for t in (10, 20, 40, 80)
            for s in range(3)]
    fit = fit_exponent(recs, "tau", 0.5)
    assert fit.n_undefined == 4
    assert fit.slope == pytest.approx(-1.0)
    assert fit.theory_exponent == pytest.approx(-0.5)


def test_theory_exponent_signs():
    assert theory_exponent("tau", 0.5) < 0
    assert theory_exponent("clique", 0.5) == pytest.approx(1 / 3)


# -- diagnostics ----------------------------------------------------------------

def test_martingale_p0_degenerate():
    rep = martingale_diagnostic(0.0, 5, 50, replicas=20)
    assert rep.passed
    assert all(v.mean_diff == pytest.approx(0, abs=1e-12) and v.stderr == pytest.approx(0, abs=1e-12)
               for v in rep.vertices)


def test_martingale_from_t0_one_centred_at_two():
    rep = martingale_diagnostic(0.5, 1, 9, replicas=20000, master_seed=4)
    v = rep.vertices[0]
    assert v.vertex == 1 and v.x_t0 == 2.0
    assert rep.passed


def test_martingale_straw_man_has_power():
    ok = martingale_diagnostic(0.5, 1, 16, replicas=10000, master_seed=2)
    bad = martingale_diagnostic(0.5, 1, 16, replicas=10000, master_seed=2, normalizer="power")
    assert ok.passed and not bad.passed


def test_martingale_tracks_youngest_vertex():
    rep = martingale_diagnostic(0.5, 200, 400, replicas=500, master_seed=1)
    assert len(rep.vertices) == 2
    assert rep.vertices[1].birth_step <= 200


def test_martingale_rejects_bad_window():
    with pytest.raises(ValueError):
        martingale_diagnostic(0.5, 10, 10, replicas=10)


def test_degree_tail_shape():
    rep = degree_tail_diagnostic(0.5, 1, 2000, [0.5, 2.5, 3, 3.5, 4], replicas=2000)
    assert rep.frequencies[0] == 1.0
    assert rep.monotone
    assert all(a >= b for a, b in zip(rep.frequencies, rep.frequencies[1:]))
    assert rep.decay_rate is None or rep.decay_rate > 0


def test_degree_tail_unborn_vertex():
    rep = degree_tail_diagnostic(0.1, 30, 50, [1, 2], replicas=50)
    assert rep.n_unborn > 0


# -- report ---------------------------------------------------------------------

def test_report_empty(tmp_path):
    summary = report([], [], {}, tmp_path)
    loaded = json.loads((tmp_path / "summary.json").read_text())
    assert loaded["fits"] == [] and loaded["n_records"] == 0
    assert json.loads((tmp_path / "fits.json").read_text()) == []
    assert summary["series"]["triangles"] == []


def test_report_contents(tmp_path):
    cfg = SweepConfig([0.5], [256, 512, 1024, 2048], replicas=3, output_dir=str(tmp_path))
    list(run_ensemble(cfg))
    recs = read_records(cfg.records_path)
    fits = [fit_exponent(recs, "tau", 0.5), fit_exponent(recs, "cherries", 0.5)]
    diag = {"martingale": martingale_diagnostic(0.5, 1, 50, replicas=100)}
    summary = report(recs, fits, diag, tmp_path)
    tau = next(f for f in summary["fits"] if f["observable"] == "tau")
    assert tau["theory_exponent"] < 0 and tau["slope"] < 0
    assert "deviation" in tau
    assert json.loads((tmp_path / "diagnostics.json").read_text())["martingale"]["passed"] in (True, False)
    with open(tmp_path / "series_cherries_simple.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert [int(r["t"]) for r in rows] == [256, 512, 1024, 2048]
