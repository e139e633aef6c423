"""Sweep driver, CSV serialisation, slope fits, and the property scans."""

import json
import math

import pytest

from endpoint_uniform import (
    CSV_HEADER,
    SUITES,
    ComparisonRow,
    DegenerateData,
    SweepConfig,
    fit_error_slope,
    property_scan,
    report_to_json,
    rows_to_csv,
    run_all_scans,
    run_sweep,
    sweep_config_from_dict,
    write_csv,
)


def small_cfg(**kw):
    base = dict(t_grid=[1e4, 1e5], methods=["leading"], tol=1e-9)
    base.update(kw)
    return SweepConfig(**base)


class TestCsv:
    def test_header_exact(self):
        assert CSV_HEADER == (
            "t,delta,sigma,lambda,Lambda,omega,method,m,a,approx_re,approx_im,"
            "oracle_re,oracle_im,abs_err,rel_err,budget,runtime_ms,error"
        )

    def test_first_line_is_header(self):
        rows = run_sweep(small_cfg(t_grid=[1e4]))
        text = rows_to_csv(rows)
        assert text.splitlines()[0] == CSV_HEADER

    def test_identical_configs_identical_bytes(self):
        a = rows_to_csv(run_sweep(small_cfg()))
        b = rows_to_csv(run_sweep(small_cfg()))
        assert a == b

    def test_runtime_column_zeroed_by_default(self):
        rows = run_sweep(small_cfg(t_grid=[1e4]))
        for line in rows_to_csv(rows).splitlines()[1:]:
            assert line.split(",")[16] == "0"

    def test_runtime_column_kept_on_request(self):
        rows = run_sweep(small_cfg(t_grid=[1e4]))
        for line in rows_to_csv(rows, deterministic=False).splitlines()[1:]:
            assert float(line.split(",")[16]) >= 0.0

    def test_write_csv_matches_string(self, tmp_path):
        rows = run_sweep(small_cfg(t_grid=[1e4]))
        path = tmp_path / "rows.csv"
        write_csv(rows, path)
        assert path.read_text() == rows_to_csv(rows)


class TestSweep:
    def test_grid_shape_and_order(self):
        cfg = small_cfg(
            t_grid=[1e4, 1e5, 1e6],
            lambda_spec=("omega", [0.3, 0.8]),
            methods=["leading", "corollary"],
        )
        rows = run_sweep(cfg)
        assert len(rows) == 3 * 2 * 2
        # submission order: t outermost, then lambda, then method
        ts = [r.t for r in rows]
        assert ts == sorted(ts)
        assert [r.method for r in rows[:2]] == ["leading", "corollary"]
        assert rows[0].lam != rows[2].lam

    def test_oracle_rows_self_compare(self):
        rows = run_sweep(small_cfg(t_grid=[1e4], methods=["oracle"]))
        (r,) = rows
        assert r.error == ""
        assert r.approx == r.oracle
        assert r.abs_err == 0.0 and r.rel_err == 0.0
        assert r.budget >= 0.0

    def test_leading_rows_have_small_rel_err(self):
        rows = run_sweep(small_cfg())
        for r in rows:
            assert r.error == ""
            assert r.rel_err < 0.05

    def test_failures_land_in_error_column(self):
        # at the critical point omega = 0, so the large-omega form refuses
        rows = run_sweep(small_cfg(t_grid=[1e4], methods=["large-omega"]))
        (r,) = rows
        assert r.error.startswith("RegimeMismatch")
        assert math.isnan(r.approx.real)
        line = rows_to_csv(rows).splitlines()[1]
        assert "nan" in line and "RegimeMismatch" in line

    def test_empty_grid_gives_no_rows(self):
        assert run_sweep(small_cfg(t_grid=[])) == []

    def test_serial_matches_parallel(self, monkeypatch):
        cfg = small_cfg(methods=["leading", "corollary"])
        parallel = rows_to_csv(run_sweep(cfg))
        monkeypatch.setenv("ENDPOINT_UNIFORM_THREADS", "1")
        serial = rows_to_csv(run_sweep(cfg))
        assert serial == parallel


class TestConfig:
    def test_from_dict_full(self):
        cfg = sweep_config_from_dict(
            {
                "t_grid": [1e4, 1e6],
                "delta": 0.4,
                "sigma": 0.5,
                "lambda_spec": {"kind": "omega", "values": [0.5, 2.0]},
                "methods": ["leading", "all-orders"],
                "tol": 1e-8,
                "seed": 7,
                "m_order": 5,
            }
        )
        assert cfg.t_grid == [1e4, 1e6]
        assert cfg.delta == 0.4
        assert cfg.lambda_spec == ("omega", [0.5, 2.0])
        assert cfg.methods == ["leading", "all-orders"]
        assert cfg.tol == 1e-8
        assert cfg.seed == 7
        assert cfg.m_order == 5

    def test_from_dict_defaults(self):
        cfg = sweep_config_from_dict({"t_grid": [100.0]})
        assert cfg.lambda_spec == ("critical", None)
        assert cfg.methods == ["leading"]
        assert cfg.tol == 1e-10
        assert cfg.m_order == 4

    def test_lambda_values_kinds(self):
        cfg = small_cfg(lambda_spec=("lambda", [0.25, 0.5]))
        assert cfg.lambda_values(1e4) == [0.25, 0.5]
        cfg = small_cfg(lambda_spec=("bogus", None))
        with pytest.raises(ValueError):
            cfg.lambda_values(1e4)


class TestSlopeFit:
    @staticmethod
    def synthetic_rows(slope, n=6):
        rows = []
        for i in range(n):
            t = 10.0 ** (4 + i / 2.0)
            rows.append(
                ComparisonRow(
                    t=t, delta=0.5, sigma=0.5, lam=0.1, Lambda=0.5,
                    omega=1.0, method="leading", abs_err=2.0 * t**slope,
                )
            )
        return rows

    def test_recovers_synthetic_slope(self):
        slope, r2 = fit_error_slope(self.synthetic_rows(-0.75))
        assert slope == pytest.approx(-0.75, abs=1e-10)
        assert r2 == pytest.approx(1.0, abs=1e-12)

    def test_too_few_rows(self):
        with pytest.raises(DegenerateData):
            fit_error_slope(self.synthetic_rows(-0.75, n=2))

    def test_error_rows_are_skipped(self):
        rows = self.synthetic_rows(-0.75)
        for r in rows:
            r.error = "NumericalError: synthetic"
        with pytest.raises(DegenerateData):
            fit_error_slope(rows)

    def test_unknown_axis(self):
        with pytest.raises(ValueError):
            fit_error_slope(self.synthetic_rows(-0.75), x="sigma")

    def test_omega_axis(self):
        rows = []
        for w in (2.0, 4.0, 8.0, 16.0):
            rows.append(
                ComparisonRow(
                    t=1e6, delta=0.5, sigma=0.5, lam=0.1, Lambda=0.5,
                    omega=w, method="large-omega", abs_err=0.3 * w**-2.0,
                )
            )
        slope, _ = fit_error_slope(rows, x="omega")
        assert slope == pytest.approx(-2.0, abs=1e-10)


class TestPropertyScans:
    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            property_scan("NoSuchSuite")

    def test_report_schema(self):
        rep = property_scan("FresnelAsym", small_cfg())
        assert set(rep) == {"suite", "grid", "pass", "worst_margin",
                            "worst_point"}
        assert rep["suite"] == "FresnelAsym"
        assert rep["pass"] is True
        assert {"points", "t_grid", "delta", "seed"} <= set(rep["grid"])

    def test_report_json_round_trip(self):
        rep = property_scan("FresnelAsym", small_cfg())
        back = json.loads(report_to_json(rep))
        assert back["suite"] == rep["suite"]
        assert back["pass"] is rep["pass"]

    def test_all_suites_pass_on_small_grid(self):
        cfg = small_cfg()
        out = run_all_scans(cfg)
        assert out["pass"] is True
        assert [r["suite"] for r in out["reports"]] == list(SUITES)
        for rep in out["reports"]:
            assert rep["pass"] is True, rep

    def test_scan_is_seeded(self):
        a = property_scan("ImFNonneg", small_cfg(seed=3))
        b = property_scan("ImFNonneg", small_cfg(seed=3))
        assert a["worst_margin"] == b["worst_margin"]
        assert a["worst_point"] == b["worst_point"]
