"""
Test the acceptance suites and their summary table.
"""

import pytest
import os
import numpy as np
import pandas as pd

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.boxcat import INVOLUTIONS
from src.checks import CheckReport
from src.complex import boundary, cube, k_complex, open_box, point
from src.config import reset_config_cache
from src.errors import BudgetExceeded, PreconditionError
from src.main import EXIT_CHECK_FAILED, main
from src.suites import (SUITES, SUMMARY_COLUMNS, SuiteContext, SuiteResult, associativity_check, builtin_complexes,
                        cube_product_check, error_report, generator_pair_check, hom_size_check,
                        involution_product_check, q_horn_report, round_trip_check, run_suites, suite_names,
                        summary_frame, triangulation_mono_check, write_report)


@pytest.fixture(autouse=True)
def fresh_cache():
    reset_config_cache()
    yield
    reset_config_cache()


def exhausted():
    raise BudgetExceeded("maps A -> B", 11, 10)


def passing():
    report = CheckReport("passing")
    report.record(True, "fine")
    return report


class TestSuiteSelection:
    def test_names(self):
        assert suite_names("all") == list(SUITES)
        assert suite_names("q") == ["q"]

    def test_unknown_suite(self):
        with pytest.raises(KeyError):
            suite_names("everything")

    def test_context_from_config(self):
        ctx = SuiteContext.from_config(seed=11, budget=500)
        assert ctx.seed == 11
        assert ctx.budget == 500
        assert ctx.theta_bound == 4
        assert ctx.mono_trials == 100
        assert ctx.rng(1).integers(1000) == SuiteContext.from_config(seed=11).rng(1).integers(1000)


class TestChecks:
    """Individual checks run by the suites."""

    def test_small_identity_checks(self):
        assert generator_pair_check(3).ok
        assert hom_size_check().ok

    def test_cube_products(self):
        assert cube_product_check(3).ok

    @pytest.mark.parametrize("kind", INVOLUTIONS)
    def test_involutions_on_products(self, kind):
        report = involution_product_check([point(), cube(1), cube(2), boundary(2), open_box(2, 1, 0)], kind, 3)
        assert report.ok, report.witnesses
        assert report.name == ("coop_monoidal" if kind == "coop" else f"{kind}_anti_monoidal")
        assert report.checked == 24

    def test_associativity(self):
        report = associativity_check([point(), cube(1), boundary(2)], 3)
        assert report.ok, report.witnesses

    @pytest.mark.slow
    def test_associativity_up_to_four(self):
        report = associativity_check([point(), cube(1), boundary(2), k_complex()])
        assert report.parameters["max_total"] == 4
        assert report.ok, report.witnesses

    def test_q_horns_skip_index_zero(self):
        report = q_horn_report(2)
        assert report.ok, report.witnesses
        assert report.checked == 3

    def test_triangulation_monos(self):
        report = triangulation_mono_check(5, np.random.default_rng(0))
        assert report.ok, report.witnesses
        assert report.checked == 5

    def test_round_trip_of_the_builtin_shapes(self):
        report = round_trip_check(builtin_complexes())
        assert report.ok, report.witnesses
        assert report.checked == len(builtin_complexes())


class TestErrorsInChecks:
    """A check that raises is reported as failed and the run goes on."""

    def test_attempt_records_the_error(self):
        ctx = SuiteContext.from_config()
        reports = ctx.attempt("exhausted", exhausted)
        assert len(reports) == 1
        assert not reports[0].ok
        assert reports[0].witnesses[0].startswith("BudgetExceeded: maps A -> B")
        assert reports[0].parameters == {"error": "BudgetExceeded"}

    def test_attempt_passes_reports_through(self):
        ctx = SuiteContext.from_config()
        assert [r.name for r in ctx.attempt("passing", passing)] == ["passing"]
        assert [r.name for r in ctx.attempt("pair", lambda: [passing(), passing()])] == ["passing", "passing"]

    def test_error_report(self):
        report = error_report("setup", PreconditionError("no shapes"))
        assert report.failed == 1
        assert report.witnesses == ["PreconditionError: no shapes"]

    def test_run_continues_after_a_failing_check(self, monkeypatch):
        monkeypatch.setitem(SUITES, "mixed",
                            lambda ctx: [*ctx.attempt("exhausted", exhausted), *ctx.attempt("passing", passing)])
        results = run_suites("mixed")
        frame = summary_frame(results)
        assert frame["check"].tolist() == ["exhausted", "passing"]
        assert frame["ok"].tolist() == [False, True]

    def test_setup_errors_become_a_failed_row(self, monkeypatch):
        def broken(ctx):
            raise PreconditionError("no shapes")

        monkeypatch.setitem(SUITES, "broken", broken)
        results = run_suites("broken")
        assert [r.name for r in results[0].reports] == ["broken_setup"]
        assert not results[0].ok

    def test_cli_still_writes_the_table(self, monkeypatch, tmp_path, capsys):
        monkeypatch.setitem(SUITES, "mixed",
                            lambda ctx: [*ctx.attempt("exhausted", exhausted), *ctx.attempt("passing", passing)])
        report = tmp_path / "summary.csv"
        assert main(["suite", "mixed", "--report", str(report)]) == EXIT_CHECK_FAILED
        assert pd.read_csv(report)["check"].tolist() == ["exhausted", "passing"]
        assert "2 checks, 1 failed" in capsys.readouterr().out


class TestSuites:
    """Every suite runs to the end and passes."""

    def test_serialization_suite(self):
        assert all(result.ok for result in run_suites("serialization"))

    @pytest.mark.slow
    @pytest.mark.parametrize("name", ["identities", "product", "cones", "q", "qcat", "theta"])
    def test_suite_passes(self, name):
        results = run_suites(name)
        failed = [(r.name, report.name, report.witnesses[:1]) for r in results for report in r.reports
                  if not report.ok]
        assert not failed
        assert all(result.ok for result in results)


class TestSummary:
    """One row per check."""

    def test_serialization_suite(self):
        results = run_suites("serialization", seed=3)
        frame = summary_frame(results)
        assert list(frame.columns) == SUMMARY_COLUMNS
        assert frame["suite"].tolist() == ["serialization"]
        assert frame["ok"].all()

    def test_failed_checks_keep_their_first_witness(self):
        report = CheckReport("broken")
        report.record(True, "fine")
        report.record(False, "first")
        report.record(False, "second")
        frame = summary_frame([SuiteResult("demo", [report])])
        row = frame.iloc[0]
        assert row["failed"] == 2
        assert not row["ok"]
        assert row["first_witness"] == "first"

    def test_empty_summary(self):
        frame = summary_frame([])
        assert frame.empty
        assert list(frame.columns) == SUMMARY_COLUMNS

    def test_write_report(self, tmp_path):
        report = CheckReport("single")
        report.record(True, "ok")
        path = tmp_path / "summary.csv"
        write_report(summary_frame([SuiteResult("demo", [report])]), str(path))
        frame = pd.read_csv(path)
        assert frame["check"].tolist() == ["single"]
        assert frame["checked"].tolist() == [1]

    def test_results_are_ok_only_if_every_report_is(self):
        good = CheckReport("good")
        good.record(True, "x")
        bad = CheckReport("bad")
        bad.record(False, "y")
        assert SuiteResult("s", [good]).ok
        assert not SuiteResult("s", [good, bad]).ok

    def test_produced_complexes_are_kept(self):
        ctx = SuiteContext.from_config()
        ctx.keep(cube(1), cube(2))
        assert len(ctx.produced) == 2


if __name__ == "__main__":
    pytest.main([__file__])
