import numpy as np
import pytest

from anharmonic.fock import TruncationError
from anharmonic.sweep import (
    CSV_HEADER,
    WITNESS_NAMES,
    SweepSpec,
    SweepSpecError,
    compare_report,
    convergence_check,
    read_csv,
    run_sweep,
    write_csv,
)


def small_spec(**overrides):
    base = dict(
        alpha_mag=(1.0,),
        theta=(0.0, np.pi / 2),
        lam=(1e-3,),
        t_start=0.0,
        t_end=2 * np.pi,
        t_steps=9,
        dim=None,
        mode="closed_form",
        witnesses=WITNESS_NAMES,
        output_path=None,
    )
    base.update(overrides)
    return SweepSpec(**base)


class TestSpecValidation:
    def test_empty_grids_rejected(self):
        with pytest.raises(SweepSpecError, match="alpha_mag"):
            small_spec(alpha_mag=())
        with pytest.raises(SweepSpecError, match="lambda"):
            small_spec(lam=())

    def test_t_steps_minimum(self):
        with pytest.raises(SweepSpecError, match="t_steps"):
            small_spec(t_steps=1)

    def test_unknown_witness_named_in_error(self):
        with pytest.raises(SweepSpecError, match="bogus"):
            small_spec(witnesses=("f", "bogus"))

    def test_unknown_mode(self):
        with pytest.raises(SweepSpecError, match="mode"):
            small_spec(mode="both")

    def test_compare_requires_positive_lambda(self):
        with pytest.raises(SweepSpecError, match="lambda"):
            small_spec(mode="compare", lam=(0.0, 1e-3))

    def test_dim_too_small_reported_before_compute(self):
        with pytest.raises(TruncationError):
            run_sweep(small_spec(alpha_mag=(3.0,), dim=15))


class TestRunSweep:
    def test_row_count_formula(self):
        spec = small_spec(alpha_mag=(0.5, 1.0), lam=(1e-3, 1e-4), witnesses=("f", "d2", "N"))
        result = run_sweep(spec)
        assert len(result.rows) == 2 * 2 * 2 * 9 * 3

    def test_row_order_witness_innermost(self):
        spec = small_spec(witnesses=("f", "d1"))
        rows = run_sweep(spec).rows
        assert [r.witness for r in rows[:4]] == ["f", "d1", "f", "d1"]
        assert rows[0].t == rows[1].t

    def test_closed_form_mode_has_no_exact_columns(self):
        rows = run_sweep(small_spec()).rows
        assert all(r.value_exact is None and r.abs_error is None for r in rows)

    def test_exact_mode_fills_exact_but_not_error(self):
        rows = run_sweep(small_spec(mode="exact", t_steps=3, witnesses=("N", "d1"))).rows
        assert all(r.value_exact is not None for r in rows)
        assert all(r.abs_error is None for r in rows)

    def test_compare_mode_fills_error(self):
        rows = run_sweep(small_spec(mode="compare", t_steps=3, witnesses=("N",))).rows
        assert all(r.abs_error == abs(r.value_cf - r.value_exact) for r in rows)

    def test_free_field_rows_all_boundary(self):
        rows = run_sweep(small_spec(lam=(0.0,), t_steps=5)).rows
        assert all(r.classification == "boundary" for r in rows)
        for r in rows:
            if r.witness == "N":
                assert r.value_cf == r.alpha_mag**2
            else:
                assert abs(r.value_cf) < 1e-10

    def test_always_negative_f_at_half_pi_phase(self):
        spec = small_spec(theta=(np.pi / 2,), lam=(1e-2,), t_steps=64, witnesses=("f",))
        assert all(r.value_cf <= 0.0 for r in run_sweep(spec).rows)

    def test_d2_oscillates_at_half_pi_phase(self):
        spec = small_spec(theta=(np.pi / 2,), lam=(1e-2,), t_steps=200, witnesses=("d2",))
        result = run_sweep(spec)
        values = [r.value_cf for r in result.rows]
        assert min(values) < -1e-4 and max(values) > 1e-4
        assert result.summaries[0].zero_crossings >= 2

    def test_summary_min_max(self):
        spec = small_spec(theta=(0.3,), witnesses=("d1",), t_steps=33)
        result = run_sweep(spec)
        values = [r.value_cf for r in result.rows]
        s = result.summaries[0]
        assert s.vmin == min(values) and s.vmax == max(values)


class TestCsvContract:
    def test_header_and_determinism(self, tmp_path):
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        spec1 = small_spec(mode="compare", t_steps=5, witnesses=("N", "f"),
                           output_path=str(out1))
        spec2 = small_spec(mode="compare", t_steps=5, witnesses=("N", "f"),
                           output_path=str(out2))
        run_sweep(spec1)
        run_sweep(spec2)
        b1, b2 = out1.read_bytes(), out2.read_bytes()
        assert b1 == b2
        assert b1.decode("ascii").splitlines()[0] == CSV_HEADER

    def test_round_trip_exact(self, tmp_path):
        out = tmp_path / "roundtrip.csv"
        spec = small_spec(mode="compare", t_steps=7, witnesses=("N", "d3", "hillery"),
                          output_path=str(out))
        result = run_sweep(spec)
        parsed = read_csv(out)
        assert parsed == result.rows

    def test_absent_fields_emitted_empty(self, tmp_path):
        out = tmp_path / "cf.csv"
        run_sweep(small_spec(t_steps=3, witnesses=("f",), output_path=str(out)))
        line = out.read_text().splitlines()[1]
        cells = line.split(",")
        assert cells[6] == "" and cells[7] == ""

    def test_write_read_helpers(self, tmp_path):
        rows = run_sweep(small_spec(t_steps=3, witnesses=("d1",))).rows
        path = tmp_path / "h.csv"
        write_csv(rows, path)
        assert read_csv(path) == rows


class TestCompareReport:
    def test_first_order_paths_scale_quadratically(self):
        spec = small_spec(
            theta=(0.7,), lam=(1e-3, 1e-4), mode="compare", t_steps=9,
            witnesses=("N", "d1", "quadrature", "hillery"),
        )
        report = compare_report(spec)
        for w in ("N", "d1", "quadrature", "hillery"):
            assert report.status_of(w) == "pass", (w, report.worst_slope(w))
            assert report.worst_slope(w) > 1.8

    def test_compact_forms_fail_scaling_by_design(self):
        # the compact f, d2, d3 carry a first-order gap to the oracle, so the
        # error shrinks only one decade per decade of lambda
        spec = small_spec(theta=(0.7,), lam=(1e-3, 1e-4), mode="compare",
                          t_steps=9, witnesses=("f", "d2", "d3"))
        report = compare_report(spec)
        for w in ("f", "d2", "d3"):
            assert report.status_of(w) == "fail"
            assert 0.8 < report.worst_slope(w) < 1.2

    def test_requires_compare_mode(self):
        with pytest.raises(SweepSpecError, match="mode"):
            compare_report(small_spec(mode="exact", lam=(1e-3, 1e-4)))

    def test_requires_two_lambdas(self):
        with pytest.raises(SweepSpecError, match="lambda"):
            compare_report(small_spec(mode="compare", lam=(1e-3,)))

    def test_vacuum_input_at_tiny_coupling_is_floor_limited(self):
        # at alpha = 0 every closed form is identically zero and the exact
        # deviation is O(lam^2); by lam = 1e-7 it sits below the fit floor
        spec = small_spec(alpha_mag=(0.0,), theta=(0.0,), lam=(1e-6, 1e-7),
                          mode="compare", t_steps=5, witnesses=("d1",))
        report = compare_report(spec)
        assert report.status_of("d1") == "floor-limited"


class TestConvergenceCheck:
    def test_auto_dim_converged(self):
        spec = small_spec(mode="exact", theta=(np.pi / 4,), lam=(1e-2,), t_steps=5)
        report = convergence_check(spec)
        assert report.passed
        assert report.max_drift < 1e-9

    def test_free_vacuum_drift_zero(self):
        spec = small_spec(alpha_mag=(0.0,), theta=(0.0,), lam=(0.0,),
                          mode="exact", t_steps=3)
        report = convergence_check(spec)
        assert report.max_drift == 0.0

    def test_requires_exact_or_compare(self):
        with pytest.raises(SweepSpecError, match="mode"):
            convergence_check(small_spec(mode="closed_form"))
