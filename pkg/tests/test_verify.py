import csv
import io
import json
import math

import pytest

from extreme_zeros import verify as vf
from extreme_zeros.errors import ParameterDomainError


def small_config(**kw):
    base = dict(families=("laguerre",), ks=(1, 2), alphas=(0.0,))
    base.update(kw)
    return vf.SweepConfig(**base)


def test_laguerre_two_records_pass():
    recs = vf.run_sweep(small_config())
    assert [r.k for r in recs] == [1, 2]
    assert all(r.passed for r in recs)
    assert recs[0].xmin_true == pytest.approx(1.0) and recs[0].lb_closed == pytest.approx(0.6914435792)


def test_swapped_jacobi_record():
    (rec,) = vf.run_sweep(vf.SweepConfig(families=("jacobi",), ks=(5,), jacobi_pairs=((0.0, 0.5),)))
    assert "hypothesis_swapped" in rec.flags and rec.passed


def test_empty_grid():
    assert vf.run_sweep(small_config(ks=())) == []


def test_gen_hermite_degree_one_is_vacuous():
    (rec,) = vf.run_sweep(vf.SweepConfig(families=("hermite",), ks=(1,), mus=(0.5,)))
    assert rec.passed and rec.xmin_true is None and rec.margin_lb is None


def test_oracle_failure_marks_record(monkeypatch):
    from extreme_zeros.errors import OracleFailure

    def boom(spec, k):
        raise OracleFailure("forced")

    monkeypatch.setattr(vf, "zeros", boom)
    (rec,) = vf.run_sweep(small_config(ks=(3,)))
    assert not rec.passed and rec.error == "forced"


def test_unwritable_path_fails_before_computation(monkeypatch, tmp_path):
    calls = []
    monkeypatch.setattr(vf, "sweep_point", lambda *a: calls.append(a))
    with pytest.raises(OSError):
        vf.run_sweep(small_config(out=str(tmp_path / "missing" / "r.csv")))
    with pytest.raises(OSError):
        vf.run_sweep(small_config(out=str(tmp_path)))
    assert calls == []


def test_records_sorted_regardless_of_grid_order():
    a = vf.run_sweep(small_config(ks=(3, 1, 2), alphas=(1.0, 0.0)))
    b = vf.run_sweep(small_config(ks=(1, 2, 3), alphas=(0.0, 1.0)))
    assert a == b
    assert [r.sort_key() for r in a] == sorted(r.sort_key() for r in a)


def test_csv_schema_and_determinism(tmp_path):
    cfg = small_config(alphas=(0.0, 1.0), out=str(tmp_path / "a.csv"))
    vf.run_sweep(cfg)
    vf.run_sweep(vf.replace(cfg, out=str(tmp_path / "b.csv")))
    text = (tmp_path / "a.csv").read_text()
    assert text == (tmp_path / "b.csv").read_text()
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == vf.CSV_COLUMNS
    assert len(rows) == 5
    row = dict(zip(rows[0], rows[1]))
    assert row["ub_reference"] == "" and row["param2"] == ""
    assert row["pass"] == "true"
    assert float(row["ub_closed"]) == vf.run_sweep(small_config(ks=(1,)))[0].ub_closed


def test_csv_uses_17_significant_digits():
    rec = vf.run_sweep(small_config(ks=(1,)))[0]
    line = vf.format_report([rec], "csv").splitlines()[1]
    assert format(rec.ub_closed, ".17g") in line.split(",")


def test_reference_present_when_applicable():
    (rec,) = vf.run_sweep(small_config(ks=(10,), alphas=(1.0,)))
    assert rec.ub_reference is not None and rec.ub_reference > rec.xmax_true


def test_json_round_trip_bit_exact(tmp_path):
    recs = vf.run_sweep(vf.SweepConfig(families=("hermite", "jacobi"), ks=(1, 4), mus=(0.0, -0.25),
                                       jacobi_pairs=((0.0, 0.5),)))
    path = tmp_path / "r.json"
    vf.write_report(recs, "json", str(path))
    back = vf.records_from_json(path.read_text())
    assert back == recs
    assert all(a.ub_closed == b.ub_closed for a, b in zip(recs, back))
    assert all(row["ub_reference"] is None or isinstance(row["ub_reference"], float) for row in json.loads(path.read_text()))


def test_config_validation():
    with pytest.raises(ParameterDomainError):
        vf.SweepConfig(families=("chebyshev",))
    with pytest.raises(ParameterDomainError):
        vf.SweepConfig(ks=(0,))
    with pytest.raises(ParameterDomainError):
        vf.SweepConfig(mus=(-0.5,))
    with pytest.raises(ParameterDomainError):
        vf.SweepConfig(fmt="xml")


def test_default_grid_shape():
    cfg = vf.SweepConfig()
    assert len(cfg.jacobi_pairs) == 28 and all(a >= b for a, b in cfg.jacobi_pairs)
    assert cfg.ks[-4:] == (200, 500, 1000, 2000) and cfg.ks[:100] == tuple(range(1, 101))
    assert cfg.limited(50).ks == tuple(range(1, 51))


def test_quick_suite_passes_where_hypotheses_hold():
    cfg = vf.replace(vf.QUICK_CONFIG, mus=(0.0, 0.5, 5.0))
    assert all(r.passed for r in vf.run_sweep(cfg))


def test_membership_point():
    rec = vf.membership_point(vf.Jacobi(-0.99, -0.99), 40)
    assert rec.passed and rec.n_checked == 40


def test_hermite_sharpness():
    s = vf.sharpness_constants("hermite", "fixed", [10, 100, 1000])
    assert all(c == pytest.approx(1.5, abs=1e-12) for c in s.closed)
    assert all(1.85575 < c < 1.95 for c in s.oracle)
    assert s.oracle[0] > s.oracle[1] > s.oracle[2]
    assert s.resultant is not None and s.reference_constants["airy"] == 1.85575


def test_sharpness_beyond_oracle_is_flagged():
    s = vf.sharpness_constants("hermite", "fixed", [10, 10**6])
    assert s.oracle[1] is None and "k_beyond_oracle" in s.flags
    assert s.resultant[1] == pytest.approx(3 * 2 ** (-11 / 6), abs=0.02)


def test_sharpness_proportional_regime():
    s = vf.sharpness_constants("laguerre", "proportional", [10, 20, 40], delta=0.5)
    assert s.params == {"delta": 0.5}
    assert all(c is not None and c > 0 for c in s.oracle)
    assert all(0 < r for r in s.ratio)


def test_sharpness_input_validation():
    with pytest.raises(ParameterDomainError):
        vf.sharpness_constants("hermite", "fixed", [100, 10])
    with pytest.raises(ParameterDomainError):
        vf.sharpness_constants("hermite", "proportional", [10])


LIMIT_RATIO = math.sqrt((math.pi**2 - 1) / 2)


@pytest.mark.parametrize("k", [5, 10, 50, 400])
def test_chebyshev_gap_ratio_below_edge_limit(k):
    rep = vf.chebyshev_gap_check(k)
    assert rep.oracle_discrepancy < 1e-13
    assert 1 < rep.ratio <= rep.max_ratio <= LIMIT_RATIO


def test_chebyshev_gap_ratio_increases_to_limit():
    ratios = [vf.chebyshev_gap_check(k).ratio for k in (5, 10, 50, 400)]
    assert all(a < b for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] == pytest.approx(LIMIT_RATIO, abs=1e-4)
    assert ratios[0] <= 2.1 and ratios[1] <= 2.1


def test_chebyshev_edge():
    rep = vf.chebyshev_gap_check(100)
    assert rep.edge_scaled == pytest.approx(0.72, abs=0.05)
    assert rep.true_edge_scaled == pytest.approx(math.pi**2 / 8, abs=1e-3)
    with pytest.raises(ParameterDomainError):
        vf.chebyshev_gap_check(1)
