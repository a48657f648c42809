import csv
import io
import json

import numpy as np
import pytest

from psad.bench import (environment, load_records, quartiles, render,
                        run_bench, run_case, summarize, summarize_all)
from psad.bench.plots import write_plots


@pytest.fixture(scope="module")
def small_records():
    records, failures = run_bench(["diag", "arrowhead", "quartic-chain"], [30, 60],
                                  trials=3, seed=1)
    assert failures == []
    return records


def test_quartiles_reference_values():
    s = quartiles([1.3, 2.8, 4.5, 5.3, 7.8])
    assert s.as_tuple() == (1.3, 2.8, 4.5, 5.3, 7.8)


def test_quartiles_inclusive_interpolation():
    assert quartiles([1, 2, 3, 4]).q2 == 2.5
    assert quartiles([4, 1, 3, 2]).as_tuple() == (1.0, 1.75, 2.5, 3.25, 4.0)
    assert quartiles([0.7]).as_tuple() == (0.7,) * 5


def test_summarize_empty_and_unknown():
    with pytest.raises(ValueError):
        summarize([], "kappa1")
    with pytest.raises(ValueError):
        quartiles([])
    with pytest.raises(ValueError):
        summarize([], "kappa9")


def test_records_are_timed_and_finite(small_records):
    assert len(small_records) == 6
    for r in small_records:
        for name in ("t_f", "t_grad", "t_hess_dir", "t_hess_sub", "t_f_max"):
            assert getattr(r, name) > 0
        for name in ("kappa1", "kappa2_dir", "kappa2_sub", "ops_kappa1"):
            assert np.isfinite(getattr(r, name))
        assert r.t_f_max >= r.t_f


def test_summaries_are_ordered(small_records):
    for s in summarize_all(small_records).values():
        assert s.min <= s.q1 <= s.q2 <= s.q3 <= s.max


def test_diag_opcount_kappa1():
    r = run_case("diag", 1000, ops_only=True)
    assert (r.p_jac, r.rho_max) == (1, 1)
    assert r.ops_kappa1 <= 10
    assert r.t_f is None and r.kappa1 is None


def test_single_method_leaves_other_empty():
    r = run_case("arrowhead", 20, method="direct", ops_only=True)
    assert r.ops_hess_dir is not None and r.ops_hess_sub is None


def test_trials_precondition():
    with pytest.raises(ValueError):
        run_bench(["diag"], [10], trials=2)
    with pytest.raises(KeyError):
        run_bench(["nope"], [10])


def test_determinism_apart_from_time():
    a, _ = run_bench(["cavity-flow-like", "swirling-flow-like"], [60], ops_only=True, seed=5)
    b, _ = run_bench(["cavity-flow-like", "swirling-flow-like"], [60], ops_only=True, seed=5)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]


def test_parallel_matches_serial():
    kw = dict(sizes=[40], ops_only=True, seed=2)
    serial, _ = run_bench(["diag", "arrowhead"], serial=True, **kw)
    pooled, _ = run_bench(["diag", "arrowhead"], serial=False, workers=2, **kw)
    assert [r.to_dict() for r in serial] == [r.to_dict() for r in pooled]


def test_table_layout(small_records):
    text = render(small_records, summarize_all(small_records), "table")
    lines = text.splitlines()
    header = next(l for l in lines if l.split() == ["min", "q1", "q2", "q3", "max"])
    row = lines[lines.index(header) + 1].split()
    assert row[0] == "kappa1" and len(row) == 6
    [float(v) for v in row[1:]]


def test_csv_rows_and_columns(small_records):
    text = render(small_records, {}, "csv")
    rows = list(csv.reader(io.StringIO(text)))
    assert len(rows) == len(small_records) + 1
    assert rows[0][:17] == ("problem,n,rho_max,p_jac,p_hess_dir,p_hess_sub,t_f,t_grad,"
                            "t_hess_dir,t_hess_sub,ops_f,ops_grad,ops_hess_dir,ops_hess_sub,"
                            "kappa1,kappa2_dir,kappa2_sub").split(",")


def test_json_round_trip(small_records):
    text = render(small_records, summarize_all(small_records), "json", environment())
    doc = json.loads(text)
    assert set(doc) == {"records", "summaries", "environment"}
    assert load_records(text) == small_records
    assert doc["environment"]["cpu_count"] >= 1


def test_unknown_format(small_records):
    with pytest.raises(ValueError):
        render(small_records, {}, "xml")


def test_plots_written(small_records, tmp_path):
    paths = write_plots(small_records, tmp_path / "report.json")
    for p in paths:
        assert p.exists() and p.stat().st_size > 1000
        assert p.read_bytes()[:4] == b"\x89PNG"
