import yaml

from app.components.report_view import build_status_chart, summarize_by_theorem
from app.suite_discovery import discover_suites, get_suite_by_name, parse_suite_yaml
from validations.base_validation import CheckResult, VerificationReport, reports_to_dataframe


def test_discover_shipped_suites():
    suites = discover_suites()
    names = [s["suite_name"] for s in suites]
    assert "Acceptance" in names and "Quick" in names
    quick = get_suite_by_name("Quick", suites)
    assert quick["suite_key"] == "quick"
    assert quick["seed"] == 7
    assert quick["check_count"] > 0


def test_discovery_skips_files_without_metadata(tmp_path):
    (tmp_path / "a.yaml").write_text(yaml.safe_dump({"metadata": {"suite_name": "My Suite"}, "checks": []}))
    (tmp_path / "b.yaml").write_text(yaml.safe_dump({"checks": []}))
    suites = discover_suites(tmp_path)
    assert [s["suite_key"] for s in suites] == ["my_suite"]
    assert parse_suite_yaml(tmp_path / "b.yaml") is None
    assert discover_suites(tmp_path / "absent") == []
    assert get_suite_by_name("Other", suites) is None


def test_summary_and_chart():
    reports = [
        VerificationReport("cartan", 2, 3, checks=[CheckResult("a", True), CheckResult("b", False)]),
        VerificationReport("gen-div0", 2, 4, checks=[CheckResult("c", True)]),
    ]
    summary = summarize_by_theorem(reports_to_dataframe(reports))
    assert list(summary["Run"]) == ["cartan n=2 D=3", "gen-div0 n=2 D=4"]
    assert list(summary["Pass"]) == [1, 1]
    assert list(summary["Fail"]) == [1, 0]
    fig = build_status_chart(summary)
    assert [trace.name for trace in fig.data] == ["Pass", "Fail"]


def test_summary_of_nothing():
    summary = summarize_by_theorem(reports_to_dataframe([]))
    assert summary.empty
    assert list(summary.columns) == ["Run", "Pass", "Fail"]
