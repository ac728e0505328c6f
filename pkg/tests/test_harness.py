import json
import re

import pytest

from harness.family_search import SearchSpec, parameter_values, search, search_frame
from harness.paper_suite import SuiteCase, expand_entries, load_suite, ring_slug, verify_paper
from harness.run_report import (
    SUMMARY_COLUMNS,
    CaseResult,
    RunReport,
    cached_check,
    emit_report,
    report_json,
    summary_frame,
)
from rings.errors import InvalidParameter
from utils.utils_cache import ResultCache
from utils.utils_config import RunConfig


#####################################
# Suite loading
#####################################


def test_ring_slug():
    assert ring_slug("Tnk(Z(4), 3, 1)") == "Tnk-Z4-3-1"
    assert ring_slug("Triv(Mat(Z(2), 2))") == "Triv-Mat-Z2-2"
    assert ring_slug("Prod(Z(2), Z(3))") == "Prod-Z2-Z3"


def test_for_each_expands_and_substitutes():
    entries = [{
        "id": "demo",
        "kind": "equivalent",
        "for_each": ["Z(2)", "Z(4)"],
        "checks": [{"ring": "$R", "property": "reduced"}],
        "anchor": "demo",
    }]
    cases = expand_entries(entries, [])
    assert [c.id for c in cases] == ["demo-Z2", "demo-Z4"]
    assert cases[1].ring == "Z(4)"
    assert cases[1].params["checks"] == [{"ring": "Z(4)", "property": "reduced"}]


def test_duplicate_ids_are_rejected():
    entry = {"id": "twice", "kind": "audit", "ring": "Z(2)", "anchor": "x"}
    with pytest.raises(InvalidParameter):
        expand_entries([entry, dict(entry)], [])


def test_case_validation():
    with pytest.raises(InvalidParameter):
        SuiteCase("bad-kind", "guess", "anchor")
    with pytest.raises(InvalidParameter):
        SuiteCase("bad-verdict", "property", "anchor", expected="maybe")
    with pytest.raises(InvalidParameter):
        SuiteCase("no-anchor", "property", "")


def test_shipped_suite_loads():
    suite = load_suite()
    assert len(suite.corpus) == 21
    ids = [c.id for c in suite.cases]
    assert len(ids) == len(set(ids))
    assert len([i for i in ids if i.startswith("lemma-2.2-")]) == len(suite.corpus)
    assert all(c.anchor for c in suite.cases)


def test_missing_suite_file(tmp_path):
    with pytest.raises(InvalidParameter):
        load_suite(tmp_path / "absent.json")
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidParameter):
        load_suite(broken)


#####################################
# Running cases
#####################################


def test_trivial_extension_cases_pass():
    report = verify_paper("ex-2.7-*", RunConfig(threads=2))
    assert [c.id for c in report.cases] == ["ex-2.7-cla-Triv-Z4", "ex-2.7-la-Triv-Z4", "ex-2.7-rpp-Triv-Z4"]
    assert report.passed
    la = report.cases[1]
    assert la.witness["notes"]["product"] == [0, 2]
    assert la.details["recheck"] is True


def test_matrix_and_table_cases_pass():
    for pattern in ["ex-2.3-*", "iso-*", "thm-2.11-*", "oracle-d1-Z4", "lemma-2.5-*"]:
        report = verify_paper(pattern, RunConfig(threads=1))
        assert report.cases, pattern
        assert report.passed, [c.to_dict() for c in report.failures()]


def test_failing_expectation_is_reported(tmp_path):
    suite = {
        "corpus": [],
        "cases": [{
            "id": "wrong", "kind": "property", "ring": "Z(4)", "property": "reduced",
            "expected": "holds", "anchor": "Z4 has a square-zero element",
        }, {
            "id": "broken", "kind": "table-match", "left": "Z(2)", "right": "Z(2)", "map": "crt",
            "anchor": "a product is required on the left",
        }],
    }
    path = tmp_path / "suite.json"
    path.write_text(json.dumps(suite), encoding="utf-8")
    report = verify_paper(suite_file=path, config=RunConfig(threads=1))
    assert not report.passed
    broken, wrong = report.cases
    assert broken.observed.startswith("error: InvalidParameter")
    assert wrong.observed == "fails"
    assert report.to_dict()["pass"] is False


def test_empty_filter_passes_vacuously():
    report = verify_paper("no-such-case-*", RunConfig(threads=1))
    assert report.cases == []
    assert report.passed


#####################################
# Reports
#####################################


def _sample_report() -> RunReport:
    case = CaseResult("c1", "Z(2)", "reduced", None, "holds", "holds", "anchor", work=2, ms=0.1234)
    return RunReport(RunConfig(threads=1), [case])


def test_report_layout(tmp_path):
    report = _sample_report()
    data = json.loads(report_json(report))
    assert list(data) == ["version", "generated_at", "config", "cases", "pass"]
    assert list(data["cases"][0]) == ["id", "ring", "property", "degree", "expected", "observed",
                                      "work", "ms", "anchor", "pass"]
    assert data["cases"][0]["ms"] == 0.123
    path = emit_report(report, tmp_path / "reports" / "run.json")
    assert path.read_text(encoding="utf-8").endswith("}\n")
    frame = summary_frame(report)
    assert list(frame.columns) == SUMMARY_COLUMNS
    assert frame.loc[0, "pass"]


def test_unwritable_report_path(tmp_path):
    blocker = tmp_path / "file.txt"
    blocker.write_text("x", encoding="utf-8")
    with pytest.raises(OSError):
        emit_report(_sample_report(), blocker / "run.json")


def test_cached_check_reuses_results(tmp_path, ring):
    path = tmp_path / "cache.jsonl"
    cache = ResultCache(path)
    config = RunConfig(threads=1)
    first = cached_check(ring("Triv(Z(4))"), "linear-armendariz", config, cache)
    second = cached_check(ring("Triv(Z(4))"), "linear-armendariz", config, ResultCache(path))
    assert second.label == first.label == "fails"
    assert second.witness.holds()
    assert len(path.read_text(encoding="utf-8").splitlines()) == 1


def test_budget_exhaustion_is_reported_not_cached(tmp_path, ring):
    path = tmp_path / "cache.jsonl"
    config = RunConfig(threads=1, pair_budget=1)
    report = cached_check(ring("Z(6)"), "armendariz", config, ResultCache(path))
    assert report.label == "budget-exhausted"
    assert report.degree == 2
    assert not path.exists()


#####################################
# Family search
#####################################


def test_parameter_ranges():
    assert parameter_values("3,4", {}) == [3, 4]
    assert parameter_values("2..5", {}) == [2, 3, 4, 5]
    assert parameter_values("1..n-2", {"n": 4}) == [1, 2]
    assert parameter_values("n/2", {"n": 5}) == [2]
    with pytest.raises(InvalidParameter):
        parameter_values("1..m", {"n": 3})
    with pytest.raises(InvalidParameter):
        parameter_values("three", {})


def test_search_instances_are_ordered():
    spec = SearchSpec("tnk", ("Z(4)",), "central-linear-armendariz", {"n": "3,4", "k": "1..n-2"})
    assert list(spec.instances()) == ["Tnk(Z(4), 3, 1)", "Tnk(Z(4), 4, 1)", "Tnk(Z(4), 4, 2)"]
    prod = SearchSpec("prod", ("Z(2)", "Z(3)"), "abelian")
    assert list(prod.instances()) == ["Prod(Z(2), Z(2))", "Prod(Z(2), Z(3))", "Prod(Z(3), Z(3))"]


def test_search_spec_validation():
    with pytest.raises(InvalidParameter):
        SearchSpec("tnk", ("Z(4)",), "central-linear-armendariz", {"n": "3"})
    with pytest.raises(InvalidParameter):
        SearchSpec("lie", ("Z(4)",), "abelian")
    with pytest.raises(InvalidParameter):
        SearchSpec("ut", ("Z(2)",), "abelian", {"n": "2"}, polarity="sometimes")


def test_search_finds_central_linear_armendariz_failures():
    spec = SearchSpec("tnk", ("Z(4)",), "central-linear-armendariz", {"n": "3,4", "k": "1..n-2"},
                      polarity="fails")
    results = list(search(spec, RunConfig(threads=2)))
    assert [r.ring for r in results] == list(spec.instances())
    assert all(r.hit for r in results)
    assert all(r.report.witness.notes["route"] == "square-zero-pair" for r in results)
    frame = search_frame(results)
    assert frame["hit"].all()


def test_search_stops_after_hits():
    spec = SearchSpec("ut", ("Z(2)", "Z(3)"), "abelian", {"n": "2..3"}, polarity="fails", stop_after=1)
    results = list(search(spec, RunConfig(threads=1)))
    assert len(results) == 1
    assert results[0].ring == "UT(Z(2), 2)"


def test_search_skips_rings_over_the_cap():
    spec = SearchSpec("mat", ("Z(2)",), "abelian", {"n": "2,3"})
    results = list(search(spec, RunConfig(threads=1, enumeration_cap=64)))
    assert results[0].report.label == "fails"
    assert results[1].report is None
    assert results[1].note.startswith("skipped")


@pytest.mark.slow
def test_full_suite_passes(tmp_path):
    report = verify_paper(config=RunConfig(threads=2))
    assert report.passed, [c.to_dict() for c in report.failures()]
    path = emit_report(report, tmp_path / "run.json")
    data = json.loads(path.read_text(encoding="utf-8"))
    assert data["pass"] is True
    assert len(data["cases"]) == len(load_suite().cases)


def test_rerun_report_differs_only_in_timestamp_and_timings(tmp_path):
    texts = []
    for name in ("first.json", "second.json"):
        report = verify_paper("ex-2.7-*", RunConfig(threads=1))
        texts.append(emit_report(report, tmp_path / name).read_text(encoding="utf-8"))
    volatile = re.compile(r'"(generated_at|ms)": [^,\n]+')
    first, second = (volatile.sub(r'"\1": _', text) for text in texts)
    assert first == second
    assert first != texts[0]
