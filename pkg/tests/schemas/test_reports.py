import json

from src.schemas.reports import CriterionResult, SurfaceReport, VerifyReport


def test_surface_report_lines_sorted():
    report = SurfaceReport(
        consistent=True, values={"b": 2.0, "a": 0.1}, deviations={"x": 0.0}
    )

    assert report.to_lines() == [
        "consistent=true",
        "a=0.10000000000000001",
        "b=2",
        "deviation_x=0",
    ]


def test_criterion_formats_floats():
    result = CriterionResult(id=3, name="demo", status="pass", measured=0.5, bound=1)

    assert result.measured == "0.5"
    assert result.bound == "1"
    assert result.to_line() == "3\tpass\t0.5\t1\tdemo"


def test_verify_report_overall_status():
    ok = CriterionResult(id=1, name="a", status="pass", measured="x", bound="y")
    bad = CriterionResult(id=2, name="b", status="error", measured="E", bound="-")

    assert VerifyReport(criteria=[ok]).passed
    report = VerifyReport(criteria=[ok, bad])
    assert not report.passed
    assert report.to_text().splitlines()[-1] == "# overall=fail"
    assert json.loads(report.model_dump_json())["criteria"][1]["status"] == "error"
